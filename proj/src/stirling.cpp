#include "gpk/stirling.hpp"

#include <cmath>

#include "gpk/rising.hpp"

namespace gpk {

StirlingTable::StirlingTable(double alpha, int n_max)
    : alpha_(alpha), n_max_(n_max) {
  if (n_max < 0) throw std::invalid_argument("StirlingTable: n_max < 0");
  rows_.resize(n_max + 1);
  rows_[0] = {SignedLogValue::one()};
  for (int n = 0; n < n_max; ++n) {
    rows_[n + 1].assign(n + 2, SignedLogValue::zero());
    for (int k = 1; k <= n + 1; ++k) {
      SignedLogValue carry =
          (k <= n) ? SignedLogValue::from_real(n - k * alpha) * rows_[n][k]
                   : SignedLogValue::zero();
      rows_[n + 1][k] = rows_[n][k - 1] + carry;
    }
  }
}

SignedLogValue StirlingTable::at(int n, int k) const {
  if (n < 0 || n > n_max_)
    throw std::out_of_range("StirlingTable::at: n out of range");
  if (k < 0 || k > n) return SignedLogValue::zero();
  return rows_[n][k];
}

namespace {

// Walk all compositions (n_1, ..., n_k) of n with n_i >= 1, accumulating
// prod w(n_i)/n_i! into terms.
void composition_terms(int n, int k, int max_part,
                       const std::function<SignedLogValue(int)>& w,
                       SignedLogValue prefix,
                       std::vector<SignedLogValue>& terms) {
  if (k == 1) {
    if (n >= 1 && n <= max_part)
      terms.push_back(prefix * w(n) /
                      SignedLogValue::from_log(1, std::lgamma(n + 1.0)));
    return;
  }
  for (int first = 1; first <= n - (k - 1) && first <= max_part; ++first) {
    SignedLogValue part =
        w(first) / SignedLogValue::from_log(1, std::lgamma(first + 1.0));
    composition_terms(n - first, k - 1, max_part, w, prefix * part, terms);
  }
}

}  // namespace

SignedLogValue bell_polynomial(int n, int k,
                               const std::function<SignedLogValue(int)>& w) {
  if (k < 1 || k > n)
    throw std::invalid_argument("bell_polynomial: need 1 <= k <= n");
  std::vector<SignedLogValue> terms;
  composition_terms(n, k, n - k + 1, w, SignedLogValue::one(), terms);
  SignedLogValue scale = SignedLogValue::from_log(
      1, std::lgamma(n + 1.0) - std::lgamma(k + 1.0));
  return scale * log_sum(terms);
}

SignedLogValue noncentral_stirling(double alpha, double gamma, int n, int k) {
  if (k > n) throw std::invalid_argument("noncentral_stirling: k > n");
  if (k < 0 || n < 0)
    throw std::invalid_argument("noncentral_stirling: negative index");
  StirlingTable table(alpha, n);
  std::vector<SignedLogValue> terms;
  terms.reserve(n - k + 1);
  for (int s = k; s <= n; ++s)
    terms.push_back(binomial(n, s) * table.at(s, k) *
                    rising_factorial(-gamma, n - s));
  return log_sum(terms);
}

SignedLogValue factorial_coefficient(double alpha, int n, int k) {
  if (alpha == 0.0)
    throw std::invalid_argument("factorial_coefficient: alpha must be nonzero");
  StirlingTable table(alpha, n);
  return SignedLogValue::from_real(alpha).pow_int(k) * table.at(n, k);
}

}  // namespace gpk
