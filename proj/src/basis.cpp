#include "qweyl/basis.hpp"

#include <algorithm>
#include <sstream>

namespace qweyl {

std::string Monomial::str() const {
  std::ostringstream os;
  bool first = true;
  bool any = false;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < k; ++i) {
      int ex = at(i, j);
      if (ex == 0) continue;
      any = true;
      if (!first) os << " ";
      first = false;
      os << "X[" << (i + 1) << "," << (j + 1) << "]";
      if (ex != 1) os << "^" << ex;
    }
  if (!any) return "1";
  return os.str();
}

namespace {

// compositions of d into p parts, lexicographically increasing
void compositions(long d, int p, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (p == 1) {
    cur.push_back(static_cast<int>(d));
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long v = 0; v <= d; ++v) {
    cur.push_back(static_cast<int>(v));
    compositions(d - v, p - 1, cur, out);
    cur.pop_back();
  }
}

long binom_long(long a, long b) {
  if (b < 0 || b > a) return 0;
  long r = 1;
  for (long t = 1; t <= b; ++t) {
    r = r * (a - b + t) / t;
    if (r < 0 || r > (1L << 62)) throw CapacityError("binomial overflow");
  }
  return r;
}

}  // namespace

MonomialBasis MonomialBasis::multidegree(int k, int n, const std::vector<long>& mu,
                                         long cap) {
  if (static_cast<int>(mu.size()) != n)
    throw StructureError("multidegree basis: mu must have length n");
  long count = 1;
  for (long m : mu) {
    if (m < 0) throw StructureError("multidegree basis: negative degree");
    count *= binom_long(k + m - 1, m);
    if (count > cap) throw CapacityError("multidegree basis exceeds cap");
  }
  // per-column exponent vectors with the prescribed column sum
  std::vector<std::vector<std::vector<int>>> cols(n);
  for (int j = 0; j < n; ++j) {
    std::vector<int> cur;
    compositions(mu[j], k, cur, cols[j]);
  }
  MonomialBasis b;
  b.k_ = k;
  b.n_ = n;
  std::vector<int> pick(n, 0);
  for (;;) {
    Monomial m(k, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < k; ++i) m.at(i, j) = cols[j][pick[j]][i];
    b.elems_.push_back(std::move(m));
    int j = n - 1;
    while (j >= 0 && ++pick[j] == static_cast<int>(cols[j].size())) pick[j--] = 0;
    if (j < 0) break;
  }
  std::sort(b.elems_.begin(), b.elems_.end());
  b.build_index();
  return b;
}

MonomialBasis MonomialBasis::degree(int k, int n, long d, long cap) {
  if (d < 0) throw StructureError("degree basis: negative degree");
  if (binom_long(static_cast<long>(k) * n + d - 1, d) > cap)
    throw CapacityError("degree basis exceeds cap");
  std::vector<std::vector<int>> flat;
  std::vector<int> cur;
  compositions(d, k * n, cur, flat);
  MonomialBasis b;
  b.k_ = k;
  b.n_ = n;
  for (auto& e : flat) {
    Monomial m(k, n);
    m.e = std::move(e);
    b.elems_.push_back(std::move(m));
  }
  std::sort(b.elems_.begin(), b.elems_.end());
  b.build_index();
  return b;
}

MonomialBasis MonomialBasis::from_elements(int k, int n, std::vector<Monomial> elems) {
  MonomialBasis b;
  b.k_ = k;
  b.n_ = n;
  b.elems_ = std::move(elems);
  b.build_index();
  return b;
}

void MonomialBasis::build_index() {
  index_.clear();
  for (long i = 0; i < size(); ++i) {
    if (!index_.emplace(elems_[i], i).second)
      throw StructureError("MonomialBasis: duplicate element");
  }
}

}  // namespace qweyl
