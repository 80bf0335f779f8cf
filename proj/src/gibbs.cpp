#include "gpk/gibbs.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "gpk/rising.hpp"

namespace gpk {

PartitionState::PartitionState(std::vector<int> s) : sizes(std::move(s)) {
  for (int v : sizes)
    if (v < 1) throw std::invalid_argument("PartitionState: block size < 1");
}

long PartitionState::n() const {
  long total = 0;
  for (int v : sizes) total += v;
  return total;
}

GibbsModel GibbsModel::pitman_yor(double alpha, double theta) {
  if (alpha < 0.0 || alpha >= 1.0)
    throw std::invalid_argument("pitman_yor: alpha must be in [0, 1)");
  if (theta <= -alpha)
    throw std::invalid_argument("pitman_yor: theta must exceed -alpha");
  return GibbsModel(alpha, PitmanYorWeights{alpha, theta});
}

GibbsModel GibbsModel::dirichlet_process(double theta) {
  if (theta <= 0.0)
    throw std::invalid_argument("dirichlet_process: theta must be positive");
  return pitman_yor(0.0, theta);
}

GibbsModel GibbsModel::explicit_table(double alpha, ExplicitTableWeights table,
                                      double tol) {
  if (alpha >= 1.0)
    throw std::invalid_argument("explicit_table: alpha must be < 1");
  if (table.n_max < 1 ||
      table.v.size() != static_cast<size_t>(table.n_max))
    throw std::invalid_argument("explicit_table: bad triangle shape");
  for (int n = 1; n <= table.n_max; ++n) {
    if (table.v[n - 1].size() != static_cast<size_t>(n))
      throw std::invalid_argument("explicit_table: bad triangle row length");
    for (double x : table.v[n - 1])
      if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument("explicit_table: weights must be positive");
  }
  if (std::abs(table.v[0][0] - 1.0) > tol)
    throw std::invalid_argument("explicit_table: V_{1,1} must equal 1");
  GibbsModel model(alpha, table);
  RecursionReport report = model.validate_backward_recursion(table.n_max, tol);
  if (!report.ok())
    throw std::invalid_argument(
        "explicit_table: backward recursion violated at (n=" +
        std::to_string(report.first_failure->first) +
        ", k=" + std::to_string(report.first_failure->second) +
        "), residual " + std::to_string(report.max_rel_residual));
  return model;
}

GibbsModel GibbsModel::load_table(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_table: cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  ExplicitTableWeights table;
  double alpha = doc.at("alpha").get<double>();
  table.n_max = doc.at("n_max").get<int>();
  for (const auto& row : doc.at("V")) {
    std::vector<double> parsed;
    for (const auto& cell : row) {
      if (cell.is_string())
        parsed.push_back(std::stod(cell.get<std::string>()));
      else
        parsed.push_back(cell.get<double>());
    }
    table.v.push_back(std::move(parsed));
  }
  return explicit_table(alpha, std::move(table), tol);
}

bool GibbsModel::has_table() const {
  return std::holds_alternative<ExplicitTableWeights>(weights_);
}

int GibbsModel::table_n_max() const {
  return std::get<ExplicitTableWeights>(weights_).n_max;
}

SignedLogValue GibbsModel::v_weight(long n, int k) const {
  if (n < 1 || k < 1 || k > n)
    throw std::out_of_range("v_weight: need 1 <= k <= n");
  if (const auto* py = std::get_if<PitmanYorWeights>(&weights_)) {
    return rising_factorial(py->theta + py->alpha, k - 1, py->alpha) /
           rising_factorial(py->theta + 1.0, n - 1);
  }
  const auto& table = std::get<ExplicitTableWeights>(weights_);
  if (n > table.n_max)
    throw std::out_of_range("v_weight: n exceeds table n_max");
  return SignedLogValue::from_real(table.v[n - 1][k - 1]);
}

SignedLogValue GibbsModel::eppf_log(const PartitionState& state) const {
  if (state.k() == 0) return SignedLogValue::one();
  SignedLogValue p = v_weight(state.n(), state.k());
  for (int size : state.sizes) p = p * rising_factorial(1.0 - alpha_, size - 1);
  return p;
}

double GibbsModel::eppf(const PartitionState& state) const {
  return eppf_log(state).value();
}

std::vector<double> GibbsModel::predictive(const PartitionState& state) const {
  const int k = state.k();
  if (k == 0) return {1.0};
  const long n = state.n();
  SignedLogValue v_nk = v_weight(n, k);
  SignedLogValue old_ratio = v_weight(n + 1, k) / v_nk;
  std::vector<double> pmf(k + 1);
  for (int j = 0; j < k; ++j)
    pmf[j] = (old_ratio * SignedLogValue::from_real(state.sizes[j] - alpha_))
                 .value();
  pmf[k] = (v_weight(n + 1, k + 1) / v_nk).value();
  return pmf;
}

RecursionReport GibbsModel::validate_backward_recursion(int n_max,
                                                        double tol) const {
  RecursionReport report;
  for (int n = 1; n < n_max; ++n) {
    for (int k = 1; k <= n; ++k) {
      double lhs = v_weight(n, k).value();
      double rhs = (SignedLogValue::from_real(n - alpha_ * k) *
                        v_weight(n + 1, k) +
                    v_weight(n + 1, k + 1))
                       .value();
      double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
      report.max_rel_residual = std::max(report.max_rel_residual, rel);
      if (rel > tol && !report.first_failure) report.first_failure = {n, k};
    }
  }
  return report;
}

ExplicitTableWeights table_from_boundary(double alpha,
                                         const std::vector<double>& boundary_row) {
  const int n_max = static_cast<int>(boundary_row.size());
  if (n_max < 1)
    throw std::invalid_argument("table_from_boundary: empty boundary");
  for (double x : boundary_row)
    if (!(x > 0.0))
      throw std::invalid_argument("table_from_boundary: boundary must be positive");
  std::vector<std::vector<double>> v(n_max);
  v[n_max - 1] = boundary_row;
  for (int n = n_max - 1; n >= 1; --n) {
    v[n - 1].resize(n);
    for (int k = 1; k <= n; ++k)
      v[n - 1][k - 1] = (n - alpha * k) * v[n][k - 1] + v[n][k];
  }
  double scale = v[0][0];
  for (auto& row : v)
    for (double& x : row) x /= scale;
  return ExplicitTableWeights{n_max, std::move(v)};
}

}  // namespace gpk
