#include "qweyl/qarith.hpp"

#include <cmath>
#include <sstream>

namespace qweyl {

Frac LaurentPoly::min_exp() const {
  if (terms_.empty()) throw std::domain_error("min_exp of zero polynomial");
  return terms_.begin()->first;
}

Frac LaurentPoly::max_exp() const {
  if (terms_.empty()) throw std::domain_error("max_exp of zero polynomial");
  return terms_.rbegin()->first;
}

const Rat& LaurentPoly::coeff(const Frac& e) const {
  static const Rat zero(0);
  auto it = terms_.find(e);
  return it == terms_.end() ? zero : it->second;
}

std::int64_t LaurentPoly::exponent_denominator() const {
  std::int64_t d = 1;
  for (const auto& [e, c] : terms_) d = lcm64(d, e.den);
  return d;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& d) const {
  if (d.is_zero()) return std::nullopt;
  if (is_zero()) return LaurentPoly();
  LaurentPoly rem = *this;
  LaurentPoly quot;
  const Frac d_lead = d.max_exp();
  const Rat& d_coeff = d.terms().rbegin()->second;
  const Frac d_low = d.min_exp();
  // Divide from the top. The quotient's lowest possible exponent is bounded
  // below by min_exp(this) - d_low; once the remainder's leading exponent
  // drops past d_lead + that bound the division cannot be exact.
  const Frac quot_min = min_exp() - d_low;
  while (!rem.is_zero()) {
    Frac e = rem.max_exp() - d_lead;
    if (e < quot_min) return std::nullopt;
    Rat c = rem.terms().rbegin()->second / d_coeff;
    quot.add_term(e, c);
    rem -= d.shifted(c, e);
  }
  return quot;
}

std::complex<double> LaurentPoly::eval_log(std::complex<double> logq) const {
  std::complex<double> s(0.0, 0.0);
  for (const auto& [e, c] : terms_)
    s += c.get_d() * std::exp(logq * e.to_double());
  return s;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << " * q^(" << e.str() << ")";
  }
  return os.str();
}

ExactScalar::ExactScalar(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("ExactScalar: zero denominator");
  normalize();
}

void ExactScalar::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly::one();
    return;
  }
  if (den_.is_one()) return;
  if (den_.is_monomial()) {
    // fold c * q^e into the numerator
    const auto& [e, c] = *den_.terms().begin();
    num_ = num_.shifted(1 / c, -e);
    den_ = LaurentPoly::one();
    return;
  }
  if (auto q = num_.divide_exact(den_)) {
    num_ = std::move(*q);
    den_ = LaurentPoly::one();
    return;
  }
  // Anchor the denominator: lowest term becomes the constant 1 so equal
  // fractions built along different routes tend to share a representation.
  const auto& [e0, c0] = *den_.terms().begin();
  num_ = num_.shifted(1 / c0, -e0);
  den_ = den_.shifted(1 / c0, -e0);
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return ExactScalar(a.num_ + b.num_, a.den_);
  return ExactScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.den_ == b.den_) return ExactScalar(a.num_ - b.num_, a.den_);
  return ExactScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  if (a.is_zero() || b.is_zero()) return ExactScalar();
  return ExactScalar(a.num_ * b.num_, a.den_ * b.den_);
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
  if (b.is_zero()) throw std::domain_error("ExactScalar: division by zero");
  if (a.is_zero()) return ExactScalar();
  return ExactScalar(a.num_ * b.den_, a.den_ * b.num_);
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("ExactScalar: inverse of zero");
  return ExactScalar(den_, num_);
}

Rat ExactScalar::eval_one() const {
  Rat d = den_.eval_one();
  if (rat_is_zero(d)) {
    // the fraction may still be regular at q = 1; try exact division
    if (auto q = num_.divide_exact(den_)) return q->eval_one();
    throw PoleError("ExactScalar: denominator vanishes at q = 1");
  }
  return num_.eval_one() / d;
}

std::complex<double> ExactScalar::eval_log(std::complex<double> logq) const {
  std::complex<double> d = den_.eval_log(logq);
  if (std::abs(d) < 1e-300)
    throw PoleError("ExactScalar: denominator ~ 0 at evaluation point");
  return num_.eval_log(logq) / d;
}

std::complex<double> ExactScalar::eval_at(std::complex<double> q_value) const {
  if (q_value == std::complex<double>(0.0, 0.0))
    throw std::domain_error("ExactScalar: evaluation at q = 0");
  return eval_log(std::log(q_value));
}

std::string ExactScalar::str() const {
  if (den_.is_one()) return num_.str();
  return num_.str() + " / (" + den_.str() + ")";
}

LaurentPoly qnumber_poly(long n) {
  if (n < 0) return -qnumber_poly(-n);
  LaurentPoly p;
  for (long t = 0; t < n; ++t) p.add_term(Frac(n - 1 - 2 * t), Rat(1));
  return p;
}

LaurentPoly qfactorial_poly(long n) {
  if (n < 0) throw std::domain_error("qfactorial of negative integer");
  LaurentPoly p = LaurentPoly::one();
  for (long t = 2; t <= n; ++t) p *= qnumber_poly(t);
  return p;
}

LaurentPoly qbinomial_poly(long n, long k) {
  if (k < 0 || k > n) return LaurentPoly();
  if (k == 0 || k == n) return LaurentPoly::one();
  LaurentPoly num = LaurentPoly::one();
  for (long t = 0; t < k; ++t) num *= qnumber_poly(n - t);
  auto q = num.divide_exact(qfactorial_poly(k));
  if (!q) throw std::logic_error("qbinomial: division not exact");
  return *q;
}

}  // namespace qweyl
