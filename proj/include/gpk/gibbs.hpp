#ifndef GPK_GIBBS_HPP
#define GPK_GIBBS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gpk/signed_log.hpp"

namespace gpk {

// Block sizes (n_1, ..., n_k) of the seated customers, listed in order of
// block appearance. The empty state (no customers) is allowed.
struct PartitionState {
  std::vector<int> sizes;

  PartitionState() = default;
  explicit PartitionState(std::vector<int> s);

  long n() const;
  int k() const { return static_cast<int>(sizes.size()); }
};

struct PitmanYorWeights {
  double alpha;  // in [0, 1)
  double theta;  // > -alpha
};

// Triangular array V[n-1][k-1] = V_{n,k}, 1 <= k <= n <= n_max.
struct ExplicitTableWeights {
  int n_max;
  std::vector<std::vector<double>> v;
};

struct RecursionReport {
  double max_rel_residual = 0.0;
  std::optional<std::pair<int, int>> first_failure;  // (n, k)
  bool ok() const { return !first_failure.has_value(); }
};

// A Gibbs-type partition model: type parameter alpha plus the V-weight
// triangle, either in Pitman-Yor closed form
//   V_{n,k} = (theta + alpha)_{k-1 up alpha} / (theta + 1)_{n-1 up 1}
// or as an explicit validated table.
class GibbsModel {
 public:
  static GibbsModel pitman_yor(double alpha, double theta);
  static GibbsModel dirichlet_process(double theta);  // PY with alpha = 0
  // Validates positivity, V_{1,1} = 1 and the backward recursion; rejects
  // invalid tables.
  static GibbsModel explicit_table(double alpha, ExplicitTableWeights table,
                                   double tol = 1e-9);
  // Reads the JSON table format {"alpha":..., "n_max":..., "V":[[...],...]}
  // with entries as decimal strings.
  static GibbsModel load_table(const std::string& path, double tol = 1e-9);

  double alpha() const { return alpha_; }
  bool has_table() const;
  int table_n_max() const;  // throws unless has_table()

  // V_{n,k}, 1 <= k <= n (and n <= n_max for table models).
  SignedLogValue v_weight(long n, int k) const;

  // EPPF p(n_1,...,n_k) = V_{n,k} prod_j (1 - alpha)_{n_j - 1 up}.
  SignedLogValue eppf_log(const PartitionState& state) const;
  double eppf(const PartitionState& state) const;

  // Seating pmf for the next customer: entries 0..k-1 are the existing
  // tables, entry k is a new table. The empty state seats at a new table
  // with probability 1.
  std::vector<double> predictive(const PartitionState& state) const;

  // Residuals of V_{n,k} = (n - alpha k) V_{n+1,k} + V_{n+1,k+1} over
  // 1 <= k <= n < n_max.
  RecursionReport validate_backward_recursion(int n_max, double tol) const;

 private:
  GibbsModel(double alpha, std::variant<PitmanYorWeights, ExplicitTableWeights> w)
      : alpha_(alpha), weights_(std::move(w)) {}

  double alpha_;
  std::variant<PitmanYorWeights, ExplicitTableWeights> weights_;
};

// Builds a valid explicit V table by running the backward recursion down
// from a positive boundary row V_{n_max, .} and normalizing V_{1,1} to 1.
ExplicitTableWeights table_from_boundary(double alpha,
                                         const std::vector<double>& boundary_row);

}  // namespace gpk

#endif
