#ifndef GPK_RISING_HPP
#define GPK_RISING_HPP

#include <cstdint>

#include "gpk/signed_log.hpp"

namespace gpk {

// Generalized rising factorial with increment h:
//   x (x + h) (x + 2h) ... (x + (n-1)h),  empty product = 1.
inline SignedLogValue rising_factorial(double x, long n, double h) {
  SignedLogValue r = SignedLogValue::one();
  for (long i = 0; i < n; ++i) {
    double factor = x + static_cast<double>(i) * h;
    if (factor == 0.0) return SignedLogValue::zero();
    r.sign *= factor > 0 ? 1 : -1;
    r.log_mag += std::log(std::abs(factor));
  }
  return r;
}

inline SignedLogValue rising_factorial(double x, long n) {
  return rising_factorial(x, n, 1.0);
}

// Binomial coefficient C(n, k). Prefix products of C(n,k) are integers, so
// the linear-domain loop is exact while the running value stays below 2^53;
// larger values fall back to log accumulation.
inline SignedLogValue binomial(long n, long k) {
  if (k < 0 || k > n) return SignedLogValue::zero();
  if (k > n - k) k = n - k;
  double exact = 1.0;
  bool exact_ok = true;
  double log_acc = 0.0;
  for (long i = 1; i <= k; ++i) {
    double num = static_cast<double>(n - k + i);
    log_acc += std::log(num) - std::log(static_cast<double>(i));
    if (exact_ok) {
      exact = exact * num / static_cast<double>(i);
      if (exact > 9.0e15) exact_ok = false;
    }
  }
  if (exact_ok) return SignedLogValue::from_real(std::round(exact));
  return SignedLogValue::from_log(1, log_acc);
}

}  // namespace gpk

#endif
