#include "qweyl/qmatspace.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "qweyl/elim.hpp"

namespace qweyl::qmat {

std::string QPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ") * " << m.str();
  }
  return os.str();
}

namespace {

struct Letter {
  int row, col;  // 0-based
};

inline bool in_order(const Letter& a, const Letter& b) {
  return a.col < b.col || (a.col == b.col && a.row <= b.row);
}

Monomial word_to_monomial(int k, int n, const std::vector<Letter>& w) {
  Monomial m(k, n);
  for (const auto& l : w) m.at(l.row, l.col) += 1;
  return m;
}

}  // namespace

QPolynomial straighten(const QWord& word, RewriteStrategy strategy) {
  const int k = word.k, n = word.n;
  std::vector<Letter> start;
  for (auto& [r, c] : word.letters) {
    if (r < 1 || r > k || c < 1 || c > n)
      throw StructureError("straighten: letter out of range");
    start.push_back(Letter{r - 1, c - 1});
  }
  QPolynomial result;
  const ExactScalar qminus =
      ExactScalar(LaurentPoly::term(Rat(1), Frac(1)) + LaurentPoly::term(Rat(-1), Frac(-1)));
  std::deque<std::pair<std::vector<Letter>, ExactScalar>> work;
  work.emplace_back(std::move(start), ExactScalar(1));
  while (!work.empty()) {
    auto [w, coef] = std::move(work.front());
    work.pop_front();
    long pos = -1;
    if (strategy == RewriteStrategy::LeftmostFirst) {
      for (long p = 0; p + 1 < static_cast<long>(w.size()); ++p)
        if (!in_order(w[p], w[p + 1])) {
          pos = p;
          break;
        }
    } else {
      for (long p = static_cast<long>(w.size()) - 2; p >= 0; --p)
        if (!in_order(w[p], w[p + 1])) {
          pos = p;
          break;
        }
    }
    if (pos < 0) {
      result.add_term(word_to_monomial(k, n, w), coef);
      continue;
    }
    Letter u = w[pos], v = w[pos + 1];
    std::vector<Letter> swapped = w;
    std::swap(swapped[pos], swapped[pos + 1]);
    if (u.row == v.row || u.col == v.col) {
      // q-commuting pair: X_u X_v = q X_v X_u
      work.emplace_back(std::move(swapped), coef * ExactScalar::q_power(Frac(1)));
    } else if (u.row < v.row) {
      // antidiagonal positions commute
      work.emplace_back(std::move(swapped), coef);
    } else {
      // diagonal pair: X_u X_v = X_v X_u + (q - q^{-1}) X_{(u.row, v.col)} X_{(v.row, u.col)}
      std::vector<Letter> extra = w;
      extra[pos] = Letter{u.row, v.col};
      extra[pos + 1] = Letter{v.row, u.col};
      work.emplace_back(std::move(swapped), coef);
      work.emplace_back(std::move(extra), coef * qminus);
    }
  }
  return result;
}

QPolynomial apply_uq(Side side, Gen g, int idx, const Monomial& m) {
  QPolynomial out;
  const int k = m.k, n = m.n;
  if (side == Side::K) {
    if (g == Gen::D) {
      if (idx < 1 || idx > k) throw StructureError("apply_uq: D index out of range");
      out.add_term(m, ExactScalar(static_cast<long>(m.row_sum(idx - 1))));
      return out;
    }
    if (idx < 1 || idx > k - 1) throw StructureError("apply_uq: index out of range");
    const int i = idx - 1;  // 0-based row
    if (g == Gen::E) {
      for (int j = 0; j < n; ++j) {
        int c = m.at(i + 1, j);
        if (c == 0) continue;
        long e = 0;
        for (int j2 = j + 1; j2 < n; ++j2) e += m.at(i, j2) - m.at(i + 1, j2);
        out.add_term(m.shifted(i, j, +1, i + 1, j, -1),
                     qnumber(c) * ExactScalar::q_power(Frac(e)));
      }
    } else {
      for (int j = 0; j < n; ++j) {
        int c = m.at(i, j);
        if (c == 0) continue;
        long e = 0;
        for (int j2 = 0; j2 < j; ++j2) e += m.at(i, j2) - m.at(i + 1, j2);
        out.add_term(m.shifted(i, j, -1, i + 1, j, +1),
                     qnumber(c) * ExactScalar::q_power(Frac(-e)));
      }
    }
  } else {
    if (g == Gen::D) {
      if (idx < 1 || idx > n) throw StructureError("apply_uq: D index out of range");
      out.add_term(m, ExactScalar(static_cast<long>(m.col_sum(idx - 1))));
      return out;
    }
    if (idx < 1 || idx > n - 1) throw StructureError("apply_uq: index out of range");
    const int j = idx - 1;  // 0-based column
    if (g == Gen::E) {
      for (int i = 0; i < k; ++i) {
        int c = m.at(i, j + 1);
        if (c == 0) continue;
        long e = 0;
        for (int i2 = i + 1; i2 < k; ++i2) e += m.at(i2, j) - m.at(i2, j + 1);
        out.add_term(m.shifted(i, j, +1, i, j + 1, -1),
                     qnumber(c) * ExactScalar::q_power(Frac(e)));
      }
    } else {
      for (int i = 0; i < k; ++i) {
        int c = m.at(i, j);
        if (c == 0) continue;
        long e = 0;
        for (int i2 = 0; i2 < i; ++i2) e += m.at(i2, j) - m.at(i2, j + 1);
        out.add_term(m.shifted(i, j, -1, i, j + 1, +1),
                     qnumber(c) * ExactScalar::q_power(Frac(-e)));
      }
    }
  }
  return out;
}

QPolynomial apply_uq(Side side, Gen g, int idx, const QPolynomial& p) {
  QPolynomial out;
  for (const auto& [m, c] : p.terms()) out += apply_uq(side, g, idx, m).scaled(c);
  return out;
}

SparseOp<ExactScalar> uq_operator(Side side, Gen g, int idx,
                                  const MonomialBasis& basis) {
  SparseOp<ExactScalar> op(basis.size(), basis.size());
  for (long c = 0; c < basis.size(); ++c) {
    QPolynomial image = apply_uq(side, g, idx, basis[c]);
    for (const auto& [m, coef] : image.terms()) op.add(basis.index_checked(m), c, coef);
  }
  return op;
}

namespace {

void record_violation(SerreReport& rep, const std::string& relation, long degree,
                      const MonomialBasis& basis, const SparseOp<ExactScalar>& residual) {
  rep.pass = false;
  residual.for_each([&](long r, long c, const ExactScalar& v) {
    if (rep.violations.size() < 32)
      rep.violations.push_back(SerreViolation{
          relation, degree, basis[r].str() + " <- " + basis[c].str(), v.str()});
  });
}

void check_zero(SerreReport& rep, const std::string& relation, long degree,
                const MonomialBasis& basis, const SparseOp<ExactScalar>& op) {
  ++rep.relations_checked;
  if (!op.is_zero()) record_violation(rep, relation, degree, basis, op);
}

}  // namespace

SerreReport verify_serre(int k, int n, Side side, int degree_bound) {
  SerreReport rep;
  rep.max_degree = degree_bound;
  const int p = side == Side::K ? k : n;
  for (long d = 0; d <= degree_bound; ++d) {
    MonomialBasis basis = MonomialBasis::degree(k, n, d);
    std::vector<SparseOp<ExactScalar>> D, E, F;
    for (int i = 1; i <= p; ++i) D.push_back(uq_operator(side, Gen::D, i, basis));
    for (int i = 1; i <= p - 1; ++i) {
      E.push_back(uq_operator(side, Gen::E, i, basis));
      F.push_back(uq_operator(side, Gen::F, i, basis));
    }
    std::ostringstream tag;
    tag << "(side " << (side == Side::K ? "k" : "n") << ", deg " << d << ") ";
    // [D_i, D_j] = 0
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j)
        check_zero(rep, tag.str() + "[D,D]", d, basis, commutator(D[i], D[j]));
    // [D_i, E_j] = (d_{ij} - d_{i,j+1}) E_j and the mirrored F relation
    for (int i = 1; i <= p; ++i)
      for (int j = 1; j <= p - 1; ++j) {
        long c = (i == j ? 1 : 0) - (i == j + 1 ? 1 : 0);
        check_zero(rep, tag.str() + "[D,E]", d, basis,
                   commutator(D[i - 1], E[j - 1]) - E[j - 1].scaled(ExactScalar(c)));
        check_zero(rep, tag.str() + "[D,F]", d, basis,
                   commutator(D[i - 1], F[j - 1]) + F[j - 1].scaled(ExactScalar(c)));
      }
    // [E_i, F_j] = delta_ij [H_i]
    for (int i = 1; i <= p - 1; ++i)
      for (int j = 1; j <= p - 1; ++j) {
        auto lhs = commutator(E[i - 1], F[j - 1]);
        if (i == j) {
          std::vector<ExactScalar> diag(basis.size());
          for (long c = 0; c < basis.size(); ++c) {
            const Monomial& m = basis[c];
            long h = side == Side::K ? m.row_sum(i - 1) - m.row_sum(i)
                                     : m.col_sum(i - 1) - m.col_sum(i);
            diag[c] = qnumber(h);
          }
          lhs -= SparseOp<ExactScalar>::diagonal(diag);
        }
        check_zero(rep, tag.str() + "[E,F]", d, basis, lhs);
      }
    // q-Serre cubic / far commutativity
    auto serre_pair = [&](const std::vector<SparseOp<ExactScalar>>& G,
                          const char* name) {
      for (int i = 1; i <= p - 1; ++i)
        for (int j = 1; j <= p - 1; ++j) {
          if (i == j) continue;
          if (std::abs(i - j) >= 2) {
            check_zero(rep, tag.str() + name + std::string(" far"), d, basis,
                       commutator(G[i - 1], G[j - 1]));
          } else {
            const auto& A = G[i - 1];
            const auto& B = G[j - 1];
            auto lhs = A * A * B - (A * B * A).scaled(ExactScalar(qbinomial_poly(2, 1))) +
                       B * A * A;
            check_zero(rep, tag.str() + name + std::string(" cubic"), d, basis, lhs);
          }
        }
    };
    serre_pair(E, "Serre-E");
    serre_pair(F, "Serre-F");
  }
  return rep;
}

QPolynomial hw_vector(int k, long mu1, long mu2, long i) {
  if (i < 0 || i > std::min(mu1, mu2))
    throw StructureError("hw_vector: need 0 <= i <= min(mu1, mu2)");
  if (k < 2) {
    if (k == 1 && i == 0) {
      Monomial m(1, 2);
      m.at(0, 0) = static_cast<int>(mu1);
      m.at(0, 1) = static_cast<int>(mu2);
      QPolynomial p;
      p.add_term(m, ExactScalar(1));
      return p;
    }
    throw StructureError("hw_vector: k = 1 admits only i = 0");
  }
  QPolynomial p;
  for (long a = 0; a <= i; ++a) {
    Monomial m(k, 2);
    m.at(0, 0) = static_cast<int>(mu1 - i + a);
    m.at(1, 0) = static_cast<int>(i - a);
    m.at(0, 1) = static_cast<int>(mu2 - a);
    m.at(1, 1) = static_cast<int>(a);
    ExactScalar c = ExactScalar(qbinomial_poly(i, a)) *
                    ExactScalar::q_power(Frac(a * (mu2 - a + 1)));
    if (a % 2 == 1) c = -c;
    p.add_term(m, c);
  }
  return p;
}

namespace {

// ambient basis closed under one side's E/F actions and containing the terms
// of p: row sums are fixed for the n-side, column sums for the k-side
MonomialBasis closed_ambient(const QPolynomial& p, Side side) {
  const Monomial& first = p.terms().begin()->first;
  const int k = first.k, n = first.n;
  if (side == Side::N) {
    auto rows = first.row_sums();
    for (const auto& [m, c] : p.terms())
      if (m.row_sums() != rows)
        throw StructureError("generate_component: mixed k-side weights");
    MonomialBasis deg = MonomialBasis::degree(k, n, first.degree());
    std::vector<Monomial> sel;
    for (const auto& m : deg.elements())
      if (m.row_sums() == rows) sel.push_back(m);
    return MonomialBasis::from_elements(k, n, std::move(sel));
  }
  auto cols = first.col_sums();
  for (const auto& [m, c] : p.terms())
    if (m.col_sums() != cols)
      throw StructureError("generate_component: mixed n-side weights");
  return MonomialBasis::multidegree(k, n, cols);
}

}  // namespace

std::vector<QPolynomial> generate_component(const QPolynomial& hw, Side side,
                                            long dim_cap) {
  if (hw.is_zero()) throw StructureError("generate_component: zero generator");
  MonomialBasis ambient = closed_ambient(hw, side);
  const Monomial& first = hw.terms().begin()->first;
  const int p = side == Side::N ? first.n : first.k;
  SpanTracker<ExactScalar> span(ambient.size());
  std::vector<QPolynomial> comp;
  std::deque<QPolynomial> queue;
  span.insert(hw.to_dense(ambient));
  comp.push_back(hw);
  queue.push_back(hw);
  while (!queue.empty()) {
    QPolynomial v = std::move(queue.front());
    queue.pop_front();
    for (int j = 1; j <= p - 1; ++j)
      for (Gen g : {Gen::E, Gen::F}) {
        QPolynomial w = apply_uq(side, g, j, v);
        if (w.is_zero()) continue;
        if (span.insert(w.to_dense(ambient))) {
          comp.push_back(w);
          queue.push_back(w);
          if (static_cast<long>(comp.size()) > dim_cap)
            throw CapacityError("generate_component: dimension cap exceeded");
        }
      }
  }
  // oracle: classical dimension for the dual side's weight of hw
  std::vector<long> weight =
      side == Side::N ? first.row_sums() : first.col_sums();
  std::sort(weight.begin(), weight.end(), std::greater<long>());
  Int expected = glrep::gl_dimension(weight, p);
  if (expected != Int(static_cast<long>(comp.size())))
    throw StructureError("generate_component: dimension " +
                         std::to_string(comp.size()) + " != oracle " +
                         expected.get_str());
  return comp;
}

std::vector<std::vector<ExactScalar>> quantum_singular_vectors(
    const MonomialBasis& basis) {
  const int k = basis.k();
  std::vector<std::vector<ExactScalar>> rows;
  std::map<std::pair<int, long>, long> slot;
  for (int a = 1; a <= k - 1; ++a) {
    for (long c = 0; c < basis.size(); ++c) {
      QPolynomial image = apply_uq(Side::K, Gen::E, a, basis[c]);
      for (const auto& [m, coef] : image.terms()) {
        long bi = basis.index_checked(m);
        auto [it, fresh] = slot.emplace(std::make_pair(a, bi), static_cast<long>(rows.size()));
        if (fresh) rows.emplace_back(basis.size(), ExactScalar());
        rows[it->second][c] += coef;
      }
    }
  }
  return kernel_basis(std::move(rows), basis.size());
}

}  // namespace qweyl::qmat
