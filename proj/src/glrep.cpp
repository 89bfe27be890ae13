#include "qweyl/glrep.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "qweyl/elim.hpp"
#include "qweyl/qexp.hpp"

namespace qweyl::glrep {

std::vector<std::pair<Rat, Monomial>> apply_gl(Side side, int a, int b,
                                               const Monomial& m) {
  std::vector<std::pair<Rat, Monomial>> out;
  if (side == Side::K) {
    // sum_j x_{aj} d_{bj}
    for (int j = 0; j < m.n; ++j) {
      int e = m.at(b - 1, j);
      if (e == 0) continue;
      out.emplace_back(Rat(e), m.shifted(b - 1, j, -1, a - 1, j, +1));
    }
  } else {
    // sum_r x_{ra} d_{rb} with column indices a, b
    for (int r = 0; r < m.k; ++r) {
      int e = m.at(r, b - 1);
      if (e == 0) continue;
      out.emplace_back(Rat(e), m.shifted(r, b - 1, -1, r, a - 1, +1));
    }
  }
  return out;
}

SparseOp<Rat> gl_generator(Side side, int a, int b, const MonomialBasis& basis) {
  SparseOp<Rat> op(basis.size(), basis.size());
  for (long c = 0; c < basis.size(); ++c)
    for (auto& [coef, m] : apply_gl(side, a, b, basis[c]))
      op.add(basis.index_checked(m), c, coef);
  return op;
}

SparseOp<Rat> casimir_truncated(int i, int j, const MonomialBasis& basis) {
  if (!(1 <= i && i < j && j <= basis.n()))
    throw StructureError("casimir_truncated: need 1 <= i < j <= n");
  SparseOp<Rat> op(basis.size(), basis.size());
  for (long c = 0; c < basis.size(); ++c) {
    for (auto& [c1, m1] : apply_gl(Side::N, j, i, basis[c]))
      for (auto& [c2, m2] : apply_gl(Side::N, i, j, m1))
        op.add(basis.index_checked(m2), c, c1 * c2);
    for (auto& [c1, m1] : apply_gl(Side::N, i, j, basis[c]))
      for (auto& [c2, m2] : apply_gl(Side::N, j, i, m1))
        op.add(basis.index_checked(m2), c, c1 * c2);
  }
  return op;
}

SparseOp<Rat> omega_operator(int i, int j, const MonomialBasis& basis,
                             OmegaVariant variant) {
  if (!(1 <= i && i < j && j <= basis.n()))
    throw StructureError("omega_operator: need 1 <= i < j <= n");
  const int k = basis.k();
  SparseOp<Rat> op(basis.size(), basis.size());
  for (long c = 0; c < basis.size(); ++c) {
    const Monomial& m = basis[c];
    // sum_{a,b} x_{ai} d_{bi} x_{bj} d_{aj}: E^{col i}_{ab} tensor E^{col j}_{ba}
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        int ej = m.at(a, j - 1);
        if (ej == 0) continue;
        Monomial m1 = m.shifted(a, j - 1, -1, b, j - 1, +1);
        int ei = m1.at(b, i - 1);
        if (ei == 0) continue;
        Monomial m2 = m1.shifted(b, i - 1, -1, a, i - 1, +1);
        op.add(basis.index_checked(m2), c, Rat(ej) * Rat(ei));
      }
    if (variant == OmegaVariant::SL) {
      Rat central(m.col_sum(i - 1) * m.col_sum(j - 1), k);
      central.canonicalize();
      op.add(c, c, -central);
    }
  }
  return op;
}

Int binomial(long a, long b) {
  if (b < 0 || b > a) return 0;
  Int r = 1;
  for (long t = 1; t <= b; ++t) {
    r *= (a - b + t);
    r /= t;
  }
  return r;
}

Int gl_dimension(const Partition& lambda, int p) {
  // hook content formula: prod over cells (r,c) of (p + c - r) / hook(r,c)
  Partition lam;
  for (long v : lambda)
    if (v > 0) lam.push_back(v);
  if (static_cast<int>(lam.size()) > p) return 0;
  std::vector<long> conj;  // column lengths
  if (!lam.empty()) {
    conj.assign(lam[0], 0);
    for (std::size_t r = 0; r < lam.size(); ++r)
      for (long c = 0; c < lam[r]; ++c) conj[c]++;
  }
  Rat dim(1);
  for (std::size_t r = 0; r < lam.size(); ++r)
    for (long c = 0; c < lam[r]; ++c) {
      long hook = (lam[r] - c) + (conj[c] - static_cast<long>(r)) - 1;
      Rat f(p + c - static_cast<long>(r), hook);
      f.canonicalize();
      dim *= f;
    }
  if (dim.get_den() != 1)
    throw StructureError("gl_dimension: hook content not integral");
  return dim.get_num();
}

namespace {

void partitions_rec(long d, long max_part, int max_rows, Partition& cur,
                    std::vector<Partition>& out) {
  if (d == 0) {
    out.push_back(cur);
    return;
  }
  if (max_rows == 0) return;
  for (long v = std::min(d, max_part); v >= 1; --v) {
    cur.push_back(v);
    partitions_rec(d - v, v, max_rows - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<HoweComponent> howe_components(int k, int n, int d) {
  if (d < 0) throw StructureError("howe_components: d >= 0 required");
  std::vector<Partition> parts;
  Partition cur;
  partitions_rec(d, d, std::min(k, n), cur, parts);
  if (d == 0) parts = {Partition{}};
  std::vector<HoweComponent> out;
  for (auto& lam : parts)
    out.push_back(HoweComponent{lam, gl_dimension(lam, k), gl_dimension(lam, n)});
  return out;
}

namespace {

// number of semistandard tableaux of shape lambda and content mu, by peeling
// the largest entry off as a horizontal strip
Int kostka_rec(const Partition& lam, const std::vector<long>& mu, std::size_t levels,
               std::map<std::pair<Partition, std::size_t>, Int>& memo) {
  long total = 0;
  for (long v : lam) total += v;
  long content = 0;
  for (std::size_t i = 0; i < levels; ++i) content += mu[i];
  if (total != content) return 0;
  if (levels == 0) return total == 0 ? 1 : 0;
  if (static_cast<long>(lam.size()) > static_cast<long>(levels)) return 0;
  auto key = std::make_pair(lam, levels);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  long strip = mu[levels - 1];
  // enumerate sub-partitions lam' with lam/lam' a horizontal strip of size strip
  Int count = 0;
  std::vector<long> lo(lam.size()), hi(lam.size());
  for (std::size_t r = 0; r < lam.size(); ++r) {
    hi[r] = lam[r];
    lo[r] = (r + 1 < lam.size()) ? lam[r + 1] : 0;  // horizontal strip condition
  }
  std::vector<long> cur(lam.size());
  // depth-first over choices of lam'_r in [lo_r, hi_r], weakly decreasing,
  // removing exactly `strip` cells
  std::function<void(std::size_t, long)> rec = [&](std::size_t r, long removed) {
    if (removed > strip) return;
    if (r == lam.size()) {
      if (removed != strip) return;
      Partition sub;
      for (long v : cur)
        if (v > 0) sub.push_back(v);
      count += kostka_rec(sub, mu, levels - 1, memo);
      return;
    }
    long cap = hi[r];
    if (r > 0) cap = std::min(cap, cur[r - 1]);
    for (long v = cap; v >= lo[r]; --v) {
      cur[r] = v;
      rec(r + 1, removed + (lam[r] - v));
    }
    cur[r] = 0;
  };
  rec(0, 0);
  memo[key] = count;
  return count;
}

}  // namespace

Int kostka_number(const Partition& lambda, const std::vector<long>& mu) {
  Partition lam;
  for (long v : lambda)
    if (v > 0) lam.push_back(v);
  std::map<std::pair<Partition, std::size_t>, Int> memo;
  return kostka_rec(lam, mu, mu.size(), memo);
}

std::vector<std::vector<Rat>> highest_weight_subspace(const Partition& lambda,
                                                      const MonomialBasis& basis) {
  const int k = basis.k();
  std::vector<long> lam(k, 0);
  for (std::size_t r = 0; r < lambda.size(); ++r) {
    if (lambda[r] == 0) continue;
    if (static_cast<int>(r) >= k) return {};  // more rows than gl_k allows
    lam[r] = lambda[r];
  }
  // weight space: monomials with row sums lambda
  std::vector<long> wcols;
  for (long c = 0; c < basis.size(); ++c)
    if (basis[c].row_sums() == lam) wcols.push_back(c);
  if (wcols.empty()) return {};
  const long wdim = static_cast<long>(wcols.size());
  // rows of the raising-operator matrix restricted to the weight space;
  // images indexed over the full basis
  std::map<long, long> image_rows;  // basis index -> row slot
  std::vector<std::vector<Rat>> rows;
  for (int a = 1; a <= k - 1; ++a) {
    for (long wc = 0; wc < wdim; ++wc) {
      for (auto& [coef, m] : apply_gl(Side::K, a, a + 1, basis[wcols[wc]])) {
        long bi = basis.index_checked(m);
        auto [it, fresh] = image_rows.emplace(bi * k + a, static_cast<long>(rows.size()));
        if (fresh) rows.emplace_back(wdim, Rat(0));
        rows[it->second][wc] += coef;
      }
    }
  }
  auto kernel = kernel_basis(std::move(rows), wdim);
  // embed back into full basis coordinates
  std::vector<std::vector<Rat>> out;
  for (auto& v : kernel) {
    std::vector<Rat> full(basis.size(), Rat(0));
    for (long wc = 0; wc < wdim; ++wc) full[wcols[wc]] = v[wc];
    out.push_back(std::move(full));
  }
  return out;
}

SparseOp<Rat> sigma_matrix(int j, int n) {
  if (!(1 <= j && j <= n - 1)) throw StructureError("sigma_matrix: 1 <= j <= n-1");
  SparseOp<Rat> s(n, n);
  for (int i = 0; i < n; ++i)
    if (i != j - 1 && i != j) s.set(i, i, Rat(1));
  s.set(j - 1, j, Rat(1));
  s.set(j, j - 1, Rat(-1));
  return s;
}

SparseOp<Rat> sigma_on_basis(int j, const MonomialBasis& basis) {
  if (!(1 <= j && j <= basis.n() - 1))
    throw StructureError("sigma_on_basis: 1 <= j <= n-1");
  auto e = gl_generator(Side::N, j, j + 1, basis);
  auto f = gl_generator(Side::N, j + 1, j, basis);
  auto a = exp_nilpotent(e);
  return a * exp_nilpotent(f.scaled(Rat(-1))) * a;
}

std::string coordinate_list(const SparseOp<Rat>& op) {
  std::string out;
  op.for_each([&](long r, long c, const Rat& v) {
    out += std::to_string(r) + " " + std::to_string(c) + " " + v.get_str() + "\n";
  });
  return out;
}

std::string coordinate_list(const SparseOp<ExactScalar>& op) {
  std::string out;
  op.for_each([&](long r, long c, const ExactScalar& v) {
    out += std::to_string(r) + " " + std::to_string(c) + " " + v.str() + "\n";
  });
  return out;
}

}  // namespace qweyl::glrep
