#ifndef GPK_STIRLING_HPP
#define GPK_STIRLING_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "gpk/signed_log.hpp"

namespace gpk {

// Triangular table of the generalized Stirling numbers S(n, k) that connect
// the ordinary rising factorial (x)_{n up 1} with the alpha-increment one:
//   (x)_{n up 1} = sum_k S(n, k) (x)_{k up alpha}.
// Filled once at construction by the triangular recurrence
//   S(n+1, k) = S(n, k-1) + (n - k*alpha) S(n, k),  S(0, 0) = 1,
// and immutable afterwards.
class StirlingTable {
 public:
  StirlingTable(double alpha, int n_max);

  double alpha() const { return alpha_; }
  int n_max() const { return n_max_; }

  // S(n, k); zero outside 0 <= k <= n. Throws for n > n_max or negative n.
  SignedLogValue at(int n, int k) const;

 private:
  double alpha_;
  int n_max_;
  std::vector<std::vector<SignedLogValue>> rows_;
};

// Partial Bell polynomial B_{n,k}(w) evaluated by summing over compositions
// (n_1, ..., n_k) of n:
//   B_{n,k}(w) = (n!/k!) sum prod_i w(n_i) / n_i!.
// w(j) must be defined for 1 <= j <= n - k + 1. Throws unless 1 <= k <= n.
SignedLogValue bell_polynomial(int n, int k,
                               const std::function<SignedLogValue(int)>& w);

// Non-central generalized Stirling number
//   S(n, k; alpha, gamma) = sum_{s=k}^{n} C(n,s) S(s, k) (-gamma)_{n-s up 1}.
SignedLogValue noncentral_stirling(double alpha, double gamma, int n, int k);

// Generalized factorial coefficient C(n, k; alpha) = alpha^k S(n, k).
// alpha must be nonzero.
SignedLogValue factorial_coefficient(double alpha, int n, int k);

}  // namespace gpk

#endif
