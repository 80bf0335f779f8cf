#ifndef GPK_VERIFY_HPP
#define GPK_VERIFY_HPP

#include <string>
#include <vector>

#include "gpk/gibbs.hpp"

namespace gpk {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// EPPF normalization over all set partitions of [1..n].
std::vector<CheckResult> verify_normalization(int n);
std::vector<CheckResult> verify_normalization(const GibbsModel& model,
                                              const std::string& label, int n);

// Stirling connection identities: central (recurrence vs Bell sum, connection
// coefficients) and non-central (convolution vs connection evaluation).
std::vector<CheckResult> verify_stirling(int n_max);

// Closed-form group laws against the brute-force sequential seating law for
// every state with n <= n_max and group sizes up to m_max.
std::vector<CheckResult> verify_group(int n_max, int m_max);
std::vector<CheckResult> verify_group(const GibbsModel& model,
                                      const std::string& label, int n_max,
                                      int m_max);

// E(S) = m V_{n+1,k+1} / V_{n,k} across model families.
std::vector<CheckResult> verify_conjecture8();
std::vector<CheckResult> verify_conjecture8(const GibbsModel& model,
                                            const std::string& label,
                                            int n_cap, int m_cap);

// Deletion-of-classes conditional EPPF: normalization over partitions of [s]
// and invariance to the old-increment configuration.
std::vector<CheckResult> verify_deletion();

// Table-avoidance probability: limit reductions and brute-force agreement.
std::vector<CheckResult> verify_avoidance();

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace gpk

#endif
