#ifndef GPK_ORACLE_HPP
#define GPK_ORACLE_HPP

#include <map>
#include <vector>

#include "gpk/crp.hpp"
#include "gpk/gibbs.hpp"

namespace gpk {

// A set partition of [n] as a restricted-growth string: assignment[i] is the
// block index of element i, blocks numbered by first appearance.
struct SetPartition {
  std::vector<int> assignment;

  int n() const { return static_cast<int>(assignment.size()); }
  int block_count() const;
  std::vector<int> block_sizes() const;  // in order of appearance
};

// Streams every set partition of [n] in lexicographic restricted-growth
// order. n is capped at 13 (Bell-number guard).
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(int n);

  // Advances to the next partition; false when exhausted. current() is valid
  // after each true return.
  bool next();
  const SetPartition& current() const { return current_; }

 private:
  int n_;
  bool started_ = false;
  bool done_ = false;
  SetPartition current_;
};

// Streams ordered k-vectors of nonnegative (allow_zero) or positive integers
// summing to n.
class CompositionEnumerator {
 public:
  CompositionEnumerator(int n, int k, bool allow_zero);

  bool next();
  const std::vector<int>& current() const { return current_; }

 private:
  int n_, k_;
  bool allow_zero_;
  bool started_ = false;
  bool done_ = false;
  std::vector<int> current_;
};

// Exact law of the aggregated outcome of seating m customers sequentially,
// obtained by enumerating every labeled seating path through the predictive
// rule. Guarded to n <= 6, m <= 5.
std::map<GroupOutcome, double> brute_group_law(const GibbsModel& model,
                                               const PartitionState& state,
                                               long m);

// Sum of the EPPF over all set partitions of [n]; 1 for a valid model.
double total_probability(const GibbsModel& model, int n);

// Number of set partitions of an s-set whose blocks, listed by least
// element, have exactly the given sizes.
double appearance_partition_count(const std::vector<int>& sizes);

// Number of labeled seatings of [m] that aggregate to the outcome: a
// multinomial split of the customers over old tables and the new-table set,
// times the count of orderly partitions of the new-table customers.
double labeled_multiplicity(const GroupOutcome& outcome);

}  // namespace gpk

#endif
