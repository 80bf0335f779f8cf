#ifndef GPK_SIGNED_LOG_HPP
#define GPK_SIGNED_LOG_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <vector>

namespace gpk {

// Signed scalar carried as sign + natural log of magnitude. sign == 0 is
// exactly zero and log_mag is ignored in that case.
struct SignedLogValue {
  int sign = 0;
  double log_mag = -std::numeric_limits<double>::infinity();

  static SignedLogValue zero() { return {}; }
  static SignedLogValue one() { return {1, 0.0}; }

  static SignedLogValue from_real(double x) {
    if (x == 0.0) return zero();
    return {x > 0 ? 1 : -1, std::log(std::abs(x))};
  }

  static SignedLogValue from_log(int sign, double log_mag) {
    if (sign == 0) return zero();
    return {sign > 0 ? 1 : -1, log_mag};
  }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }
  bool is_zero() const { return sign == 0; }

  SignedLogValue operator-() const { return {-sign, log_mag}; }

  SignedLogValue operator*(const SignedLogValue& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return {sign * o.sign, log_mag + o.log_mag};
  }

  SignedLogValue operator/(const SignedLogValue& o) const {
    if (sign == 0) return zero();
    return {sign * o.sign, log_mag - o.log_mag};
  }

  SignedLogValue operator+(const SignedLogValue& o) const {
    if (sign == 0) return o;
    if (o.sign == 0) return *this;
    double hi = std::max(log_mag, o.log_mag);
    double lo = std::min(log_mag, o.log_mag);
    if (sign == o.sign) return {sign, hi + std::log1p(std::exp(lo - hi))};
    if (log_mag == o.log_mag) return zero();
    int s = (log_mag > o.log_mag) ? sign : o.sign;
    return {s, hi + std::log1p(-std::exp(lo - hi))};
  }

  SignedLogValue operator-(const SignedLogValue& o) const { return *this + (-o); }

  // Integer power; p may be negative for nonzero values.
  SignedLogValue pow_int(long p) const {
    if (sign == 0) return p == 0 ? one() : zero();
    int s = (sign < 0 && (p & 1)) ? -1 : 1;
    return {s, log_mag * static_cast<double>(p)};
  }
};

// Signed sum of a sequence: max-shifted exponentials accumulated in
// ascending-magnitude order with Kahan compensation. Exact cancellation of
// equal-magnitude opposite terms yields sign = 0.
inline SignedLogValue log_sum(std::span<const SignedLogValue> values) {
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& v : values)
    if (v.sign != 0) hi = std::max(hi, v.log_mag);
  if (std::isinf(hi) && hi < 0) return SignedLogValue::zero();

  std::vector<const SignedLogValue*> terms;
  terms.reserve(values.size());
  for (const auto& v : values)
    if (v.sign != 0) terms.push_back(&v);
  std::sort(terms.begin(), terms.end(),
            [](const SignedLogValue* a, const SignedLogValue* b) {
              return a->log_mag < b->log_mag;
            });

  double acc = 0.0, comp = 0.0;
  for (const SignedLogValue* t : terms) {
    double term = t->sign * std::exp(t->log_mag - hi);
    double y = term - comp;
    double s = acc + y;
    comp = (s - acc) - y;
    acc = s;
  }
  if (acc == 0.0) return SignedLogValue::zero();
  return SignedLogValue::from_log(acc > 0 ? 1 : -1, hi + std::log(std::abs(acc)));
}

inline SignedLogValue log_sum(const std::vector<SignedLogValue>& values) {
  return log_sum(std::span<const SignedLogValue>(values));
}

}  // namespace gpk

#endif
