#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qweyl/basis.hpp"
#include "qweyl/glrep.hpp"
#include "qweyl/qarith.hpp"
#include "qweyl/sparse.hpp"

namespace qweyl::qmat {

using glrep::Side;
using QMatMonomial = Monomial;

// Element of the quantum matrix space in the normal-ordered monomial basis.
class QPolynomial {
 public:
  QPolynomial() = default;

  void add_term(const Monomial& m, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Monomial, ExactScalar>& terms() const { return terms_; }

  QPolynomial& operator+=(const QPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  QPolynomial& operator-=(const QPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }

  QPolynomial scaled(const ExactScalar& s) const {
    QPolynomial r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
  }

  friend bool operator==(const QPolynomial& a, const QPolynomial& b) {
    return (a - b).is_zero();
  }

  std::vector<ExactScalar> to_dense(const MonomialBasis& basis) const {
    std::vector<ExactScalar> v(basis.size());
    for (const auto& [m, c] : terms_) v[basis.index_checked(m)] = c;
    return v;
  }
  static QPolynomial from_dense(const std::vector<ExactScalar>& v,
                                const MonomialBasis& basis) {
    QPolynomial p;
    for (long i = 0; i < basis.size(); ++i) p.add_term(basis[i], v[i]);
    return p;
  }

  // `coef * X[i,j]^e ...` in normal order, one summand per stored monomial.
  std::string str() const;

 private:
  std::map<Monomial, ExactScalar> terms_;
};

// A word in the generators X_{ij}, 1-based indices, leftmost letter first.
struct QWord {
  int k = 0, n = 0;
  std::vector<std::pair<int, int>> letters;
};

enum class RewriteStrategy { LeftmostFirst, RightmostFirst };

// Normal form in the ordered monomial basis via the quantum-matrix
// commutation relations. Termination: every rewrite of an out-of-order
// adjacent pair strictly decreases
//   M(word) = #{p < q : row_p > row_q} + #{p < q : col_p > col_q},
// since a plain or q-swap removes one inversion and the extra summand of the
// diagonal case trades a (row, col) double inversion for a single row one.
QPolynomial straighten(const QWord& w,
                       RewriteStrategy strategy = RewriteStrategy::LeftmostFirst);

enum class Gen { D, E, F };

// Explicit quantum actions in the monomial basis. idx is 1-based: D_idx with
// idx in 1..p, E_idx / F_idx with idx in 1..p-1 where p = k or n by side.
QPolynomial apply_uq(Side side, Gen g, int idx, const Monomial& m);
QPolynomial apply_uq(Side side, Gen g, int idx, const QPolynomial& p);

// Matrix on a basis closed under the generator (degree bases always are).
SparseOp<ExactScalar> uq_operator(Side side, Gen g, int idx,
                                  const MonomialBasis& basis);

// ---- q-Serre verification ---------------------------------------------------

struct SerreViolation {
  std::string relation;
  long degree;
  std::string entry;     // offending matrix position "row <- col"
  std::string residual;  // scalar certificate
};

struct SerreReport {
  bool pass = true;
  int max_degree = 0;
  long relations_checked = 0;
  std::vector<SerreViolation> violations;
};

SerreReport verify_serre(int k, int n, Side side, int degree_bound);

// ---- highest-weight machinery ----------------------------------------------

// v_i^{mu1,mu2} of the two-column space, embedded in S_h(k,2); k >= 2 unless
// i == 0.
QPolynomial hw_vector(int k, long mu1, long mu2, long i);

// Basis of the submodule generated by hw under the chosen side's E_j/F_j
// (applying both directions makes the result independent of hw being a
// highest-weight vector for that side). The dimension is checked against the
// classical Weyl-dimension oracle for the k-side weight of hw.
std::vector<QPolynomial> generate_component(const QPolynomial& hw, Side side,
                                            long dim_cap = 100000);

// Quantum kernel of all k-side raising operators on the given basis
// (dense coordinates). Used for q-Pieri counting and quantum fibres.
std::vector<std::vector<ExactScalar>> quantum_singular_vectors(
    const MonomialBasis& basis);

}  // namespace qweyl::qmat
