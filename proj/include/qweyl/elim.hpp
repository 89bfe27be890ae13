#pragma once

#include <optional>
#include <vector>

#include "qweyl/common.hpp"
#include "qweyl/sparse.hpp"

namespace qweyl {

// Exact Gaussian elimination over a field scalar S (Rat or ExactScalar).
// Everything here is deterministic: pivots are chosen as the first nonzero
// entry so results are reproducible bit for bit.

// Incremental row echelon that remembers how each echelon row was formed, so
// vectors already known to lie in the span can be re-expressed in terms of
// the inserted originals.
template <class S>
class SpanTracker {
 public:
  explicit SpanTracker(long dim) : dim_(dim) {}

  long dim() const { return dim_; }
  long rank() const { return static_cast<long>(rows_.size()); }
  long inserted() const { return n_inserted_; }

  // Insert an original vector; returns true when it enlarges the span.
  bool insert(const std::vector<S>& v) {
    std::vector<S> w = v;
    std::vector<S> rep(n_inserted_ + 1, S());
    rep[n_inserted_] = S(1);
    ++n_inserted_;
    for (auto& row : rows_) row.rep.push_back(S());
    reduce(w, rep);
    long p = first_nonzero(w);
    if (p < 0) return false;
    S inv = S(1) / w[p];
    for (auto& x : w) x = x * inv;
    for (auto& x : rep) x = x * inv;
    rows_.push_back(Row{p, std::move(w), std::move(rep)});
    // keep rows sorted by pivot for deterministic reduction
    for (std::size_t i = rows_.size(); i > 1 && rows_[i - 1].pivot < rows_[i - 2].pivot; --i)
      std::swap(rows_[i - 1], rows_[i - 2]);
    return true;
  }

  // Coefficients c with v = sum_j c_j * original_j, if v lies in the span.
  std::optional<std::vector<S>> coordinates(const std::vector<S>& v) const {
    std::vector<S> w = v;
    std::vector<S> rep(n_inserted_, S());
    reduce_neg(w, rep);
    if (first_nonzero(w) >= 0) return std::nullopt;
    return rep;
  }

  bool contains(const std::vector<S>& v) const { return coordinates(v).has_value(); }

 private:
  struct Row {
    long pivot;
    std::vector<S> vec;  // reduced, vec[pivot] == 1
    std::vector<S> rep;  // vec = sum_j rep[j] * original_j
  };

  static long first_nonzero(const std::vector<S>& w) {
    for (long i = 0; i < static_cast<long>(w.size()); ++i)
      if (!entry_is_zero(w[i])) return i;
    return -1;
  }

  void reduce(std::vector<S>& w, std::vector<S>& rep) const {
    for (const auto& row : rows_) {
      const S& f = w[row.pivot];
      if (entry_is_zero(f)) continue;
      S factor = f;
      for (long i = 0; i < dim_; ++i)
        if (!entry_is_zero(row.vec[i])) w[i] -= factor * row.vec[i];
      for (std::size_t j = 0; j < row.rep.size(); ++j)
        if (!entry_is_zero(row.rep[j])) rep[j] -= factor * row.rep[j];
      w[row.pivot] = S();
    }
  }

  // same as reduce but accumulates +rep (coordinates of v rather than of the
  // residual)
  void reduce_neg(std::vector<S>& w, std::vector<S>& rep) const {
    for (const auto& row : rows_) {
      const S& f = w[row.pivot];
      if (entry_is_zero(f)) continue;
      S factor = f;
      for (long i = 0; i < dim_; ++i)
        if (!entry_is_zero(row.vec[i])) w[i] -= factor * row.vec[i];
      for (std::size_t j = 0; j < row.rep.size(); ++j)
        if (!entry_is_zero(row.rep[j])) rep[j] += factor * row.rep[j];
      w[row.pivot] = S();
    }
  }

  long dim_;
  long n_inserted_ = 0;
  std::vector<Row> rows_;
};

// Kernel of the matrix whose rows are given (acting on column vectors of
// length ncols). Returns a deterministic basis: one vector per free column,
// unit at the free column.
template <class S>
std::vector<std::vector<S>> kernel_basis(std::vector<std::vector<S>> rows, long ncols) {
  // forward elimination to row echelon form with unit pivots
  std::vector<long> pivot_col;
  long r = 0;
  for (long c = 0; c < ncols && r < static_cast<long>(rows.size()); ++c) {
    long sel = -1;
    for (long i = r; i < static_cast<long>(rows.size()); ++i)
      if (!entry_is_zero(rows[i][c])) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[r], rows[sel]);
    S inv = S(1) / rows[r][c];
    for (long j = c; j < ncols; ++j)
      if (!entry_is_zero(rows[r][j])) rows[r][j] = rows[r][j] * inv;
    for (long i = 0; i < static_cast<long>(rows.size()); ++i) {
      if (i == r || entry_is_zero(rows[i][c])) continue;
      S f = rows[i][c];
      for (long j = c; j < ncols; ++j)
        if (!entry_is_zero(rows[r][j])) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (long c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<S>> kernel;
  for (long f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> v(ncols, S());
    v[f] = S(1);
    for (long i = 0; i < r; ++i) v[pivot_col[i]] = -rows[i][f];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

// Solve A X = B for square invertible A (Gauss-Jordan on [A | B]).
template <class S>
std::vector<std::vector<S>> solve_right(std::vector<std::vector<S>> a,
                                        std::vector<std::vector<S>> b) {
  const long n = static_cast<long>(a.size());
  if (n == 0) return b;
  const long m = static_cast<long>(b[0].size());
  for (long c = 0; c < n; ++c) {
    long sel = -1;
    for (long i = c; i < n; ++i)
      if (!entry_is_zero(a[i][c])) {
        sel = i;
        break;
      }
    if (sel < 0) throw StructureError("solve_right: singular matrix");
    std::swap(a[c], a[sel]);
    std::swap(b[c], b[sel]);
    S inv = S(1) / a[c][c];
    for (long j = 0; j < n; ++j)
      if (!entry_is_zero(a[c][j])) a[c][j] = a[c][j] * inv;
    for (long j = 0; j < m; ++j)
      if (!entry_is_zero(b[c][j])) b[c][j] = b[c][j] * inv;
    for (long i = 0; i < n; ++i) {
      if (i == c || entry_is_zero(a[i][c])) continue;
      S f = a[i][c];
      for (long j = 0; j < n; ++j)
        if (!entry_is_zero(a[c][j])) a[i][j] -= f * a[c][j];
      for (long j = 0; j < m; ++j)
        if (!entry_is_zero(b[c][j])) b[i][j] -= f * b[c][j];
    }
  }
  return b;
}

}  // namespace qweyl
