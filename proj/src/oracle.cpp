#include "gpk/oracle.hpp"

#include <cmath>
#include <algorithm>
#include <stdexcept>

#include "gpk/rising.hpp"

namespace gpk {

int SetPartition::block_count() const {
  int mx = -1;
  for (int a : assignment) mx = std::max(mx, a);
  return mx + 1;
}

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> sizes(block_count(), 0);
  for (int a : assignment) ++sizes[a];
  return sizes;
}

PartitionEnumerator::PartitionEnumerator(int n) : n_(n) {
  if (n < 1 || n > 13)
    throw std::invalid_argument("PartitionEnumerator: need 1 <= n <= 13");
  current_.assignment.assign(n, 0);
}

bool PartitionEnumerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    return true;  // all-zero string: the one-block partition
  }
  auto& a = current_.assignment;
  for (int i = n_ - 1; i >= 1; --i) {
    int prefix_max = 0;
    for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, a[j]);
    if (a[i] <= prefix_max) {
      ++a[i];
      std::fill(a.begin() + i + 1, a.end(), 0);
      return true;
    }
  }
  done_ = true;
  return false;
}

CompositionEnumerator::CompositionEnumerator(int n, int k, bool allow_zero)
    : n_(n), k_(k), allow_zero_(allow_zero) {
  if (k < 1) throw std::invalid_argument("CompositionEnumerator: k < 1");
  if (n < 0) throw std::invalid_argument("CompositionEnumerator: n < 0");
  if (!allow_zero && n < k) done_ = true;
}

bool CompositionEnumerator::next() {
  if (done_) return false;
  const int lo = allow_zero_ ? 0 : 1;
  if (!started_) {
    started_ = true;
    current_.assign(k_, lo);
    current_.back() = n_ - lo * (k_ - 1);
    if (current_.back() < lo) {
      done_ = true;
      return false;
    }
    return true;
  }
  // Move one unit leftward: find rightmost position before the last that can
  // take one more from the tail.
  for (int i = k_ - 2; i >= 0; --i) {
    int tail = 0;
    for (int j = i + 1; j < k_; ++j) tail += current_[j];
    if (tail > lo * (k_ - 1 - i)) {
      ++current_[i];
      int remaining = tail - 1;
      for (int j = i + 1; j < k_ - 1; ++j) {
        current_[j] = lo;
        remaining -= lo;
      }
      current_[k_ - 1] = remaining;
      return true;
    }
  }
  done_ = true;
  return false;
}

namespace {

void enumerate_seatings(const GibbsModel& model, PartitionState& work,
                        const PartitionState& initial, long remaining,
                        double path_prob,
                        std::map<GroupOutcome, double>& law) {
  if (remaining == 0) {
    GroupOutcome outcome;
    outcome.old_increments.resize(initial.k());
    for (int j = 0; j < initial.k(); ++j)
      outcome.old_increments[j] = work.sizes[j] - initial.sizes[j];
    for (size_t j = initial.sizes.size(); j < work.sizes.size(); ++j)
      outcome.new_block_sizes.push_back(work.sizes[j]);
    law[outcome] += path_prob;
    return;
  }
  std::vector<double> pmf = model.predictive(work);
  for (size_t j = 0; j < pmf.size(); ++j) {
    if (pmf[j] == 0.0) continue;
    const bool opens_block = (j == work.sizes.size());
    if (opens_block)
      work.sizes.push_back(1);
    else
      ++work.sizes[j];
    enumerate_seatings(model, work, initial, remaining - 1,
                       path_prob * pmf[j], law);
    if (opens_block)
      work.sizes.pop_back();
    else
      --work.sizes[j];
  }
}

}  // namespace

std::map<GroupOutcome, double> brute_group_law(const GibbsModel& model,
                                               const PartitionState& state,
                                               long m) {
  if (state.n() > 6 || m > 5)
    throw std::invalid_argument("brute_group_law: size guard n <= 6, m <= 5");
  std::map<GroupOutcome, double> law;
  PartitionState work = state;
  enumerate_seatings(model, work, state, m, 1.0, law);
  return law;
}

double appearance_partition_count(const std::vector<int>& sizes) {
  long remaining = 0;
  for (int s : sizes) remaining += s;
  double count = 1.0;
  for (int s : sizes) {
    // The least remaining element anchors this block; choose its companions.
    count *= binomial(remaining - 1, s - 1).value();
    remaining -= s;
  }
  // Counts are integers; round away the log-domain round-trip error.
  return std::round(count);
}

double labeled_multiplicity(const GroupOutcome& outcome) {
  const long m = outcome.m();
  const long s = outcome.s();
  double count = binomial(m, s).value();
  long remaining = m - s;
  for (long inc : outcome.old_increments) {
    count *= binomial(remaining, inc).value();
    remaining -= inc;
  }
  return std::round(count * appearance_partition_count(outcome.new_block_sizes));
}

double total_probability(const GibbsModel& model, int n) {
  const double alpha = model.alpha();
  std::vector<SignedLogValue> block_weight(n + 1);
  for (int j = 1; j <= n; ++j)
    block_weight[j] = rising_factorial(1.0 - alpha, j - 1);

  double total = 0.0;
  PartitionEnumerator partitions(n);
  while (partitions.next()) {
    std::vector<int> sizes = partitions.current().block_sizes();
    SignedLogValue p =
        model.v_weight(n, static_cast<int>(sizes.size()));
    for (int size : sizes) p = p * block_weight[size];
    total += p.value();
  }
  return total;
}

}  // namespace gpk
