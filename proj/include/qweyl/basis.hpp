#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qweyl/common.hpp"

namespace qweyl {

// k x n matrix of natural exponents, row-major. Indexes both the classical
// monomial x^m and the normal-ordered quantum monomial X^m.
struct Monomial {
  int k = 0, n = 0;
  std::vector<int> e;  // size k*n, row-major

  Monomial() = default;
  Monomial(int k_, int n_) : k(k_), n(n_), e(static_cast<std::size_t>(k_) * n_, 0) {}

  int& at(int i, int j) { return e[static_cast<std::size_t>(i) * n + j]; }
  int at(int i, int j) const { return e[static_cast<std::size_t>(i) * n + j]; }

  long row_sum(int i) const {
    long s = 0;
    for (int j = 0; j < n; ++j) s += at(i, j);
    return s;
  }
  long col_sum(int j) const {
    long s = 0;
    for (int i = 0; i < k; ++i) s += at(i, j);
    return s;
  }
  long degree() const {
    long s = 0;
    for (int v : e) s += v;
    return s;
  }
  std::vector<long> row_sums() const {
    std::vector<long> r(k);
    for (int i = 0; i < k; ++i) r[i] = row_sum(i);
    return r;
  }
  std::vector<long> col_sums() const {
    std::vector<long> c(n);
    for (int j = 0; j < n; ++j) c[j] = col_sum(j);
    return c;
  }

  Monomial shifted(int i1, int j1, int d1, int i2, int j2, int d2) const {
    Monomial m = *this;
    m.at(i1, j1) += d1;
    m.at(i2, j2) += d2;
    return m;
  }

  friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.k == b.k && a.n == b.n && a.e == b.e;
  }

  std::string str() const;
};

// Ordered basis of monomials, either all of one multidegree (column sums mu)
// or all of one total degree. Ordering is lexicographic on the flattened
// exponent matrix, so operator matrices are reproducible run to run.
class MonomialBasis {
 public:
  static constexpr long kDefaultCap = 1000000;

  static MonomialBasis multidegree(int k, int n, const std::vector<long>& mu,
                                   long cap = kDefaultCap);
  static MonomialBasis degree(int k, int n, long d, long cap = kDefaultCap);
  static MonomialBasis from_elements(int k, int n, std::vector<Monomial> elems);

  int k() const { return k_; }
  int n() const { return n_; }
  long size() const { return static_cast<long>(elems_.size()); }
  const Monomial& operator[](long i) const { return elems_[i]; }
  const std::vector<Monomial>& elements() const { return elems_; }

  std::optional<long> index(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  long index_checked(const Monomial& m) const {
    auto i = index(m);
    if (!i) throw StructureError("MonomialBasis: monomial not in basis");
    return *i;
  }

 private:
  int k_ = 0, n_ = 0;
  std::vector<Monomial> elems_;
  std::map<Monomial, long> index_;
  void build_index();
};

using BasisPtr = std::shared_ptr<const MonomialBasis>;

inline BasisPtr make_multidegree_basis(int k, int n, const std::vector<long>& mu,
                                       long cap = MonomialBasis::kDefaultCap) {
  return std::make_shared<const MonomialBasis>(MonomialBasis::multidegree(k, n, mu, cap));
}
inline BasisPtr make_degree_basis(int k, int n, long d,
                                  long cap = MonomialBasis::kDefaultCap) {
  return std::make_shared<const MonomialBasis>(MonomialBasis::degree(k, n, d, cap));
}

}  // namespace qweyl
