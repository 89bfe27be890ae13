#pragma once

#include <complex>
#include <map>
#include <vector>

#include "qweyl/common.hpp"

namespace qweyl {

template <class S>
inline bool entry_is_zero(const S& v) {
  return v == S();
}
inline bool entry_is_zero(const std::complex<double>& v) {
  return v.real() == 0.0 && v.imag() == 0.0;
}

// Sparse linear map on an indexed basis; rows/cols are basis indices of the
// codomain/domain. Entries are exact scalars or complex doubles; stored zeros
// are pruned on insertion.
template <class S>
class SparseOp {
 public:
  SparseOp() : rows_(0), cols_(0) {}
  SparseOp(long rows, long cols) : rows_(rows), cols_(cols), data_(rows) {}

  static SparseOp identity(long n) {
    SparseOp a(n, n);
    for (long i = 0; i < n; ++i) a.data_[i].emplace(i, S(1));
    return a;
  }
  static SparseOp diagonal(const std::vector<S>& d) {
    SparseOp a(static_cast<long>(d.size()), static_cast<long>(d.size()));
    for (long i = 0; i < a.rows_; ++i)
      if (!entry_is_zero(d[i])) a.data_[i].emplace(i, d[i]);
    return a;
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  void add(long r, long c, const S& v) {
    if (entry_is_zero(v)) return;
    auto& row = data_[r];
    auto it = row.find(c);
    if (it == row.end()) {
      row.emplace(c, v);
    } else {
      it->second += v;
      if (entry_is_zero(it->second)) row.erase(it);
    }
  }
  void set(long r, long c, const S& v) {
    if (entry_is_zero(v))
      data_[r].erase(c);
    else
      data_[r][c] = v;
  }
  S get(long r, long c) const {
    auto it = data_[r].find(c);
    return it == data_[r].end() ? S() : it->second;
  }
  const std::map<long, S>& row(long r) const { return data_[r]; }

  long nnz() const {
    long n = 0;
    for (const auto& r : data_) n += static_cast<long>(r.size());
    return n;
  }
  bool is_zero() const {
    for (const auto& r : data_)
      if (!r.empty()) return false;
    return true;
  }

  SparseOp& operator+=(const SparseOp& o) {
    check_same_shape(o);
    for (long r = 0; r < rows_; ++r)
      for (const auto& [c, v] : o.data_[r]) add(r, c, v);
    return *this;
  }
  SparseOp& operator-=(const SparseOp& o) {
    check_same_shape(o);
    for (long r = 0; r < rows_; ++r)
      for (const auto& [c, v] : o.data_[r]) add(r, c, -v);
    return *this;
  }
  friend SparseOp operator+(SparseOp a, const SparseOp& b) { return a += b; }
  friend SparseOp operator-(SparseOp a, const SparseOp& b) { return a -= b; }

  SparseOp scaled(const S& s) const {
    SparseOp r(rows_, cols_);
    if (entry_is_zero(s)) return r;
    for (long i = 0; i < rows_; ++i)
      for (const auto& [c, v] : data_[i]) r.add(i, c, v * s);
    return r;
  }

  // Matrix product: (*this) o B, i.e. apply B first.
  friend SparseOp operator*(const SparseOp& a, const SparseOp& b) {
    if (a.cols_ != b.rows_)
      throw StructureError("SparseOp: product shape mismatch");
    SparseOp r(a.rows_, b.cols_);
    for (long i = 0; i < a.rows_; ++i)
      for (const auto& [k, av] : a.data_[i])
        for (const auto& [j, bv] : b.data_[k]) r.add(i, j, av * bv);
    return r;
  }

  std::vector<S> apply(const std::vector<S>& x) const {
    if (static_cast<long>(x.size()) != cols_)
      throw StructureError("SparseOp: apply shape mismatch");
    std::vector<S> y(rows_, S());
    for (long i = 0; i < rows_; ++i)
      for (const auto& [c, v] : data_[i])
        if (!entry_is_zero(x[c])) y[i] += v * x[c];
    return y;
  }

  friend bool operator==(const SparseOp& a, const SparseOp& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (long r = 0; r < a.rows_; ++r) {
      // entries are pruned, but scalar equality may be finer than
      // representation equality, so compare via the scalar's operator==
      auto ia = a.data_[r].begin();
      auto ib = b.data_[r].begin();
      while (ia != a.data_[r].end() && ib != b.data_[r].end()) {
        if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        ++ia;
        ++ib;
      }
      if (ia != a.data_[r].end() || ib != b.data_[r].end()) return false;
    }
    return true;
  }

  template <class T, class F>
  SparseOp<T> map_entries(F&& f) const {
    SparseOp<T> r(rows_, cols_);
    for (long i = 0; i < rows_; ++i)
      for (const auto& [c, v] : data_[i]) r.add(i, c, f(v));
    return r;
  }

  template <class F>
  void for_each(F&& f) const {
    for (long i = 0; i < rows_; ++i)
      for (const auto& [c, v] : data_[i]) f(i, c, v);
  }

 private:
  void check_same_shape(const SparseOp& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw StructureError("SparseOp: shape mismatch");
  }
  long rows_, cols_;
  std::vector<std::map<long, S>> data_;
};

template <class S>
SparseOp<S> commutator(const SparseOp<S>& a, const SparseOp<S>& b) {
  return a * b - b * a;
}

}  // namespace qweyl
