#ifndef GPK_CRP_HPP
#define GPK_CRP_HPP

#include <random>
#include <utility>
#include <vector>

#include "gpk/gibbs.hpp"

namespace gpk {

// Result of seating one arriving group against a conditioning state:
// increments (m_1, ..., m_k) to the old blocks plus sizes (s_1, ..., s_k*)
// of the new blocks in order of appearance.
struct GroupOutcome {
  std::vector<int> old_increments;
  std::vector<int> new_block_sizes;

  long m() const;
  long s() const;
  int kstar() const { return static_cast<int>(new_block_sizes.size()); }

  auto operator<=>(const GroupOutcome&) const = default;
};

template <typename Label>
struct Pmf {
  std::vector<Label> support;
  std::vector<double> probs;

  double total() const {
    double t = 0.0;
    for (double p : probs) t += p;
    return t;
  }
};

// Probability of one labeled assignment pattern for a group of m = |outcome|
// customers:
//   (V_{n+m,k+k*}/V_{n,k}) prod_j (n_j - alpha)_{m_j up}
//                          prod_j (1 - alpha)_{s_j - 1 up}.
// Multiplicity counting over customer labelings is deliberately not included.
double group_outcome_prob(const GibbsModel& model, const PartitionState& state,
                          const GroupOutcome& outcome);

// Pr(all m customers sit at new tables) = sum_k* (V_{n+m,k+k*}/V_{n,k}) S(m,k*).
double prob_all_new(const GibbsModel& model, const PartitionState& state, long m);

// Pr(all m customers sit at the k old tables) = (V_{n+m,k}/V_{n,k})(n-k alpha)_{m up}.
double prob_all_old(const GibbsModel& model, const PartitionState& state, long m);

// Marginal probability that the new blocks come out with the given sizes
// (s_1, ..., s_k*), the remaining m - s customers landing anywhere among the
// old tables:
//   (V_{n+m,k+k*}/V_{n,k}) C(m, m-s) (n - k alpha)_{m-s up}
//       prod_j (1 - alpha)_{s_j - 1 up}.
double new_sizes_marginal(const GibbsModel& model, const PartitionState& state,
                          long m, const std::vector<int>& new_block_sizes);

// Joint law of (K*, S): number of new blocks and customers in them. The
// (0, 0) atom carries the all-old mass.
Pmf<std::pair<int, int>> joint_kstar_s(const GibbsModel& model,
                                       const PartitionState& state, long m);

Pmf<int> pmf_s(const GibbsModel& model, const PartitionState& state, long m);
Pmf<int> pmf_kstar(const GibbsModel& model, const PartitionState& state, long m);

// Conditional law of S given K* = kstar, supported on {kstar, ..., m}.
Pmf<int> pmf_s_given_kstar(const GibbsModel& model, const PartitionState& state,
                           long m, int kstar);

double expected_s(const GibbsModel& model, const PartitionState& state, long m);
double expected_kstar(const GibbsModel& model, const PartitionState& state,
                      long m);

// Numerical comparison of E(S) with the shortcut m V_{n+1,k+1}/V_{n,k}, plus
// pairwise gaps between the three candidate closed forms for the law of S.
struct Conjecture8Report {
  double expected_s = 0.0;
  double shortcut = 0.0;
  double rel_gap = 0.0;
  double gap_general_vs_ratio_form = 0.0;   // max abs over s
  double gap_general_vs_alpha_form = 0.0;
  double gap_ratio_vs_alpha_form = 0.0;
  bool within_tol = false;
};

Conjecture8Report check_conjecture8(const GibbsModel& model,
                                    const PartitionState& state, long m,
                                    double tol);

// Probability that none of the m arriving customers sits at tables
// r+1, ..., k (only the first r old tables and new tables may receive them).
// include_all_old adds the k* = 0 event where everybody fits in the first r
// old tables; with it the r = k case is the full probability 1.
double prob_avoid_tables(const GibbsModel& model, const PartitionState& state,
                         long m, int r, bool include_all_old = true);

// Conditional EPPF of the partition of the s new-table customers given the
// group outcome; depends on the old increments only through their total.
double deletion_conditional_eppf(const GibbsModel& model,
                                 const PartitionState& state,
                                 const std::vector<int>& old_increments,
                                 const std::vector<int>& new_block_sizes);

using Rng = std::mt19937_64;

// Seats one customer according to the predictive pmf; mutates the state and
// returns the 0-based table index (== old k for a new table).
int sample_next(const GibbsModel& model, PartitionState& state, Rng& rng);

// Seats m customers one at a time and aggregates relative to the initial state.
GroupOutcome sample_group(const GibbsModel& model, const PartitionState& state,
                          long m, Rng& rng);

}  // namespace gpk

#endif
