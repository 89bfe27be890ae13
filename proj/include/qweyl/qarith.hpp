#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "qweyl/common.hpp"
#include "qweyl/frac.hpp"

namespace qweyl {

using Rat = mpq_class;
using Int = mpz_class;

inline bool rat_is_zero(const Rat& r) { return sgn(r) == 0; }

// Laurent polynomial in u = q^{1/D}: finite map from exact rational exponent
// (denominator implicitly bounded by the context's D) to exact rational
// coefficient. Zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Rat& c) {
    if (!rat_is_zero(c)) terms_[Frac(0)] = c;
  }
  explicit LaurentPoly(long c) : LaurentPoly(Rat(c)) {}

  static LaurentPoly term(const Rat& c, const Frac& e) {
    LaurentPoly p;
    if (!rat_is_zero(c)) p.terms_[e] = c;
    return p;
  }
  static LaurentPoly one() { return LaurentPoly(Rat(1)); }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_zero() &&
           terms_.begin()->second == 1;
  }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }
  const std::map<Frac, Rat>& terms() const { return terms_; }

  void add_term(const Frac& e, const Rat& c) {
    if (rat_is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (rat_is_zero(it->second)) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  // Multiply by the single term c * q^e.
  LaurentPoly shifted(const Rat& c, const Frac& e) const {
    LaurentPoly r;
    if (rat_is_zero(c)) return r;
    for (const auto& [e0, c0] : terms_) r.terms_.emplace(e0 + e, c0 * c);
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  Frac min_exp() const;
  Frac max_exp() const;
  const Rat& coeff(const Frac& e) const;

  // lcm of the denominators of all exponents (1 for the zero polynomial).
  std::int64_t exponent_denominator() const;

  // q -> q^{-1}
  LaurentPoly bar() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }

  // Exact polynomial division; nullopt when the division is not exact.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& d) const;

  Rat eval_one() const {
    Rat s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }
  // Value at q = exp(logq); every term evaluates as c * exp(logq * e), which
  // keeps fractional powers continuous in logq instead of picking a branch of
  // the evaluated number.
  std::complex<double> eval_log(std::complex<double> logq) const;

  std::string str() const;

 private:
  std::map<Frac, Rat> terms_;
};

// Rational function in q with fractional exponents: num/den, den nonzero.
// Stored unreduced apart from cheap simplifications (monomial denominators
// fold into the numerator; exact polynomial division is attempted once).
// Equality is exact via cross-multiplication.
class ExactScalar {
 public:
  ExactScalar() : num_(), den_(LaurentPoly::one()) {}
  ExactScalar(long v) : num_(Rat(v)), den_(LaurentPoly::one()) {}
  ExactScalar(const Rat& v) : num_(v), den_(LaurentPoly::one()) {}
  explicit ExactScalar(LaurentPoly p) : num_(std::move(p)), den_(LaurentPoly::one()) {}
  ExactScalar(LaurentPoly num, LaurentPoly den);

  static ExactScalar q_power(const Frac& e) {
    return ExactScalar(LaurentPoly::term(Rat(1), e));
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_polynomial() const { return den_.is_one(); }

  ExactScalar operator-() const;
  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);
  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
  ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

  ExactScalar inverse() const;
  ExactScalar bar() const { return ExactScalar(num_.bar(), den_.bar()); }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    if (a.num_.is_zero()) return b.num_.is_zero();
    if (b.num_.is_zero()) return false;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  std::int64_t exponent_denominator() const {
    return lcm64(num_.exponent_denominator(), den_.exponent_denominator());
  }

  // Exact value at q = 1; requires the denominator not to vanish there after
  // simplification.
  Rat eval_one() const;

  std::complex<double> eval_log(std::complex<double> logq) const;
  // Principal branch of log(q_value); use eval_log directly when a specific
  // branch (e.g. logq = 2*pi*i*h) is wanted.
  std::complex<double> eval_at(std::complex<double> q_value) const;

  // Canonical text: numerator terms "c * q^(e)" sorted by exponent, followed
  // by " / (...)" when the denominator is not 1.
  std::string str() const;

 private:
  void normalize();
  LaurentPoly num_, den_;
};

// ---- q-combinatorics ------------------------------------------------------

// Symmetric q-integer [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}; [-n] = -[n].
LaurentPoly qnumber_poly(long n);
inline ExactScalar qnumber(long n) { return ExactScalar(qnumber_poly(n)); }

// [n]! for n >= 0.
LaurentPoly qfactorial_poly(long n);

// Gaussian binomial [n]!/([k]![n-k]!); zero outside 0 <= k <= n.
LaurentPoly qbinomial_poly(long n, long k);
inline ExactScalar qbinomial(long n, long k) { return ExactScalar(qbinomial_poly(n, k)); }

}  // namespace qweyl
