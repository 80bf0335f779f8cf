#include "gpk/crp.hpp"

#include <cmath>

#include "gpk/rising.hpp"
#include "gpk/stirling.hpp"

namespace gpk {

long GroupOutcome::m() const {
  long total = 0;
  for (int v : old_increments) total += v;
  for (int v : new_block_sizes) total += v;
  return total;
}

long GroupOutcome::s() const {
  long total = 0;
  for (int v : new_block_sizes) total += v;
  return total;
}

namespace {

SignedLogValue v_ratio(const GibbsModel& model, const PartitionState& state,
                       long m, int kstar) {
  const long n = state.n();
  const int k = state.k();
  if (k == 0) {
    // First group: the conditional law is the unconditional EPPF of the
    // partition it creates, so the ratio is just V_{m, k*}.
    return model.v_weight(m, kstar);
  }
  return model.v_weight(n + m, k + kstar) / model.v_weight(n, k);
}

}  // namespace

double group_outcome_prob(const GibbsModel& model, const PartitionState& state,
                          const GroupOutcome& outcome) {
  if (static_cast<int>(outcome.old_increments.size()) != state.k())
    throw std::invalid_argument(
        "group_outcome_prob: increment length must match state");
  for (int s : outcome.new_block_sizes)
    if (s < 1)
      throw std::invalid_argument("group_outcome_prob: new block size < 1");
  const double alpha = model.alpha();
  SignedLogValue p = v_ratio(model, state, outcome.m(), outcome.kstar());
  for (int j = 0; j < state.k(); ++j)
    p = p * rising_factorial(state.sizes[j] - alpha, outcome.old_increments[j]);
  for (int s : outcome.new_block_sizes)
    p = p * rising_factorial(1.0 - alpha, s - 1);
  return p.value();
}

double prob_all_new(const GibbsModel& model, const PartitionState& state,
                    long m) {
  if (m == 0) return 1.0;
  StirlingTable table(model.alpha(), static_cast<int>(m));
  std::vector<SignedLogValue> terms;
  for (int kstar = 1; kstar <= m; ++kstar)
    terms.push_back(v_ratio(model, state, m, kstar) *
                    table.at(static_cast<int>(m), kstar));
  return log_sum(terms).value();
}

double prob_all_old(const GibbsModel& model, const PartitionState& state,
                    long m) {
  if (m == 0) return 1.0;
  if (state.k() == 0) return 0.0;
  return (v_ratio(model, state, m, 0) *
          rising_factorial(state.n() - state.k() * model.alpha(), m))
      .value();
}

double new_sizes_marginal(const GibbsModel& model, const PartitionState& state,
                          long m, const std::vector<int>& new_block_sizes) {
  long s = 0;
  for (int v : new_block_sizes) {
    if (v < 1)
      throw std::invalid_argument("new_sizes_marginal: new block size < 1");
    s += v;
  }
  if (s > m) throw std::invalid_argument("new_sizes_marginal: s > m");
  if (s == 0) return prob_all_old(model, state, m);
  const double alpha = model.alpha();
  SignedLogValue p =
      v_ratio(model, state, m, static_cast<int>(new_block_sizes.size())) *
      binomial(m, m - s) *
      rising_factorial(state.n() - state.k() * alpha, m - s);
  for (int v : new_block_sizes) p = p * rising_factorial(1.0 - alpha, v - 1);
  return p.value();
}

Pmf<std::pair<int, int>> joint_kstar_s(const GibbsModel& model,
                                       const PartitionState& state, long m) {
  Pmf<std::pair<int, int>> pmf;
  if (m == 0) {
    pmf.support = {{0, 0}};
    pmf.probs = {1.0};
    return pmf;
  }
  const double alpha = model.alpha();
  StirlingTable table(alpha, static_cast<int>(m));
  for (int s = 0; s <= m; ++s) {
    int k_lo = (s == 0) ? 0 : 1;
    for (int kstar = k_lo; kstar <= s; ++kstar) {
      if (s == 0 && state.k() == 0) continue;  // empty restaurant: no old mass
      SignedLogValue p = v_ratio(model, state, m, kstar) * binomial(m, s) *
                         rising_factorial(state.n() - state.k() * alpha, m - s) *
                         table.at(s, kstar);
      pmf.support.emplace_back(kstar, s);
      pmf.probs.push_back(p.value());
    }
  }
  return pmf;
}

Pmf<int> pmf_s(const GibbsModel& model, const PartitionState& state, long m) {
  Pmf<int> pmf;
  if (m == 0) {
    pmf.support = {0};
    pmf.probs = {1.0};
    return pmf;
  }
  const double alpha = model.alpha();
  StirlingTable table(alpha, static_cast<int>(m));
  for (int s = 0; s <= m; ++s) {
    std::vector<SignedLogValue> terms;
    for (int kstar = (s == 0) ? 0 : 1; kstar <= s; ++kstar) {
      if (kstar == 0 && state.k() == 0) continue;
      terms.push_back(v_ratio(model, state, m, kstar) * table.at(s, kstar));
    }
    SignedLogValue p = log_sum(terms) * binomial(m, s) *
                       rising_factorial(state.n() - state.k() * alpha, m - s);
    pmf.support.push_back(s);
    pmf.probs.push_back(p.value());
  }
  return pmf;
}

Pmf<int> pmf_kstar(const GibbsModel& model, const PartitionState& state,
                   long m) {
  Pmf<int> pmf;
  if (m == 0) {
    pmf.support = {0};
    pmf.probs = {1.0};
    return pmf;
  }
  const double alpha = model.alpha();
  const double gamma = -(state.n() - state.k() * alpha);
  for (int kstar = 0; kstar <= m; ++kstar) {
    if (kstar == 0 && state.k() == 0) {
      pmf.support.push_back(0);
      pmf.probs.push_back(0.0);
      continue;
    }
    SignedLogValue p =
        v_ratio(model, state, m, kstar) *
        noncentral_stirling(alpha, gamma, static_cast<int>(m), kstar);
    pmf.support.push_back(kstar);
    pmf.probs.push_back(p.value());
  }
  return pmf;
}

Pmf<int> pmf_s_given_kstar(const GibbsModel& model, const PartitionState& state,
                           long m, int kstar) {
  const double alpha = model.alpha();
  const double gamma = -(state.n() - state.k() * alpha);
  SignedLogValue denom =
      noncentral_stirling(alpha, gamma, static_cast<int>(m), kstar);
  if (denom.is_zero())
    throw std::invalid_argument("pmf_s_given_kstar: Pr(K* = kstar) is zero");
  StirlingTable table(alpha, static_cast<int>(m));
  Pmf<int> pmf;
  for (int s = kstar; s <= m; ++s) {
    SignedLogValue p = binomial(m, s) *
                       rising_factorial(state.n() - state.k() * alpha, m - s) *
                       table.at(s, kstar) / denom;
    pmf.support.push_back(s);
    pmf.probs.push_back(p.value());
  }
  return pmf;
}

namespace {

double pmf_mean(const Pmf<int>& pmf) {
  double mean = 0.0;
  for (size_t i = 0; i < pmf.support.size(); ++i)
    mean += pmf.support[i] * pmf.probs[i];
  return mean;
}

}  // namespace

double expected_s(const GibbsModel& model, const PartitionState& state, long m) {
  return pmf_mean(pmf_s(model, state, m));
}

double expected_kstar(const GibbsModel& model, const PartitionState& state,
                      long m) {
  return pmf_mean(pmf_kstar(model, state, m));
}

Conjecture8Report check_conjecture8(const GibbsModel& model,
                                    const PartitionState& state, long m,
                                    double tol) {
  Conjecture8Report report;
  const long n = state.n();
  const int k = state.k();
  const double alpha = model.alpha();
  report.expected_s = expected_s(model, state, m);
  report.shortcut =
      (SignedLogValue::from_real(static_cast<double>(m)) *
       model.v_weight(n + 1, k + 1) / model.v_weight(n, k))
          .value();
  report.rel_gap = std::abs(report.expected_s - report.shortcut) /
                   std::max(std::abs(report.shortcut), 1e-300);
  report.within_tol = report.rel_gap <= tol;

  // Candidate closed forms for Pr(S = s), compared entrywise: the general
  // Stirling-sum law, the rising-factorial ratio form built from the scalar
  // split V_{n,k} = (n - k alpha) V_{n+1,k} + V_{n+1,k+1}, and the
  // alpha-increment rising-factorial form.
  Pmf<int> general = pmf_s(model, state, m);
  const double xv = (n - k * alpha) * model.v_weight(n + 1, k).value();
  const double yv = model.v_weight(n + 1, k + 1).value();
  const double vv = model.v_weight(n, k).value();
  StirlingTable table(alpha, static_cast<int>(m));
  for (int s = 0; s <= m; ++s) {
    double ratio_form = (binomial(m, s) * rising_factorial(xv, m - s) *
                         rising_factorial(yv, s) /
                         rising_factorial(vv, m))
                            .value();
    std::vector<SignedLogValue> terms;
    for (int kstar = 0; kstar <= s; ++kstar)
      terms.push_back(rising_factorial(yv, kstar, alpha) * table.at(s, kstar));
    double alpha_form = (binomial(m, s) *
                         rising_factorial(n - k * alpha, m - s) *
                         v_ratio(model, state, m, 0) * log_sum(terms))
                            .value();
    double g = general.probs[s];
    report.gap_general_vs_ratio_form =
        std::max(report.gap_general_vs_ratio_form, std::abs(g - ratio_form));
    report.gap_general_vs_alpha_form =
        std::max(report.gap_general_vs_alpha_form, std::abs(g - alpha_form));
    report.gap_ratio_vs_alpha_form = std::max(
        report.gap_ratio_vs_alpha_form, std::abs(ratio_form - alpha_form));
  }
  return report;
}

double prob_avoid_tables(const GibbsModel& model, const PartitionState& state,
                         long m, int r, bool include_all_old) {
  if (r < 0 || r > state.k())
    throw std::invalid_argument("prob_avoid_tables: r out of range");
  if (m == 0) return 1.0;
  const double alpha = model.alpha();
  long retained = 0;
  for (int j = 0; j < r; ++j) retained += state.sizes[j];
  const double gamma = r * alpha - static_cast<double>(retained);
  std::vector<SignedLogValue> terms;
  int k_lo = include_all_old ? 0 : 1;
  if (k_lo == 0 && (state.k() == 0 || r == 0)) k_lo = 1;
  for (int kstar = k_lo; kstar <= m; ++kstar)
    terms.push_back(v_ratio(model, state, m, kstar) *
                    noncentral_stirling(alpha, gamma, static_cast<int>(m),
                                        kstar));
  return log_sum(terms).value();
}

double deletion_conditional_eppf(const GibbsModel& model,
                                 const PartitionState& state,
                                 const std::vector<int>& old_increments,
                                 const std::vector<int>& new_block_sizes) {
  if (static_cast<int>(old_increments.size()) != state.k())
    throw std::invalid_argument(
        "deletion_conditional_eppf: increment length must match state");
  long s = 0;
  for (int v : new_block_sizes) {
    if (v < 1)
      throw std::invalid_argument(
          "deletion_conditional_eppf: new block size < 1");
    s += v;
  }
  if (s == 0)
    throw std::invalid_argument("deletion_conditional_eppf: s must be >= 1");
  long m = s;
  for (int v : old_increments) m += v;
  const double alpha = model.alpha();
  const int kstar = static_cast<int>(new_block_sizes.size());
  StirlingTable table(alpha, static_cast<int>(s));
  std::vector<SignedLogValue> denom_terms;
  for (int kp = 1; kp <= s; ++kp)
    denom_terms.push_back(v_ratio(model, state, m, kp) *
                          table.at(static_cast<int>(s), kp));
  SignedLogValue p = v_ratio(model, state, m, kstar) / log_sum(denom_terms);
  for (int v : new_block_sizes) p = p * rising_factorial(1.0 - alpha, v - 1);
  return p.value();
}

namespace {

double uniform01(Rng& rng) {
  // 53-bit mantissa draw; keeps the stream identical across platforms.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

int sample_next(const GibbsModel& model, PartitionState& state, Rng& rng) {
  std::vector<double> pmf = model.predictive(state);
  double u = uniform01(rng);
  int choice = static_cast<int>(pmf.size()) - 1;
  double cum = 0.0;
  for (size_t j = 0; j < pmf.size(); ++j) {
    cum += pmf[j];
    if (u < cum) {
      choice = static_cast<int>(j);
      break;
    }
  }
  if (choice < state.k())
    ++state.sizes[choice];
  else
    state.sizes.push_back(1);
  return choice;
}

GroupOutcome sample_group(const GibbsModel& model, const PartitionState& state,
                          long m, Rng& rng) {
  PartitionState work = state;
  for (long i = 0; i < m; ++i) sample_next(model, work, rng);
  GroupOutcome outcome;
  outcome.old_increments.resize(state.k());
  for (int j = 0; j < state.k(); ++j)
    outcome.old_increments[j] = work.sizes[j] - state.sizes[j];
  for (size_t j = state.sizes.size(); j < work.sizes.size(); ++j)
    outcome.new_block_sizes.push_back(work.sizes[j]);
  return outcome;
}

}  // namespace gpk
