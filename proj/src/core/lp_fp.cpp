#include "wnd/lp_fp.hpp"

#include <cmath>
#include <limits>

#include "simplex_kernel.hpp"
#include "wnd/errors.hpp"

namespace wnd {

const char* to_string(FpStatus status) {
  switch (status) {
    case FpStatus::kOptimal:
      return "optimal";
    case FpStatus::kInfeasible:
      return "infeasible";
    case FpStatus::kUnbounded:
      return "unbounded";
    case FpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

FpModel to_fp_model(const LinearProgram& lp) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  FpModel model;
  model.num_vars = lp.num_variables();
  model.num_rows = lp.num_rows();
  model.sense = lp.objective.sense;

  model.col_lower.reserve(model.num_vars);
  model.col_upper.reserve(model.num_vars);
  for (const auto& v : lp.variables) {
    model.col_lower.push_back(v.lower ? to_double_nearest(*v.lower) : -kInf);
    model.col_upper.push_back(v.upper ? to_double_nearest(*v.upper) : kInf);
  }
  model.cost.assign(model.num_vars, 0.0);
  for (const auto& [index, value] : lp.objective.coefficients) {
    model.cost.at(index) += to_double_nearest(value);
  }

  std::vector<std::size_t> counts(model.num_vars, 0);
  for (const auto& row : lp.rows) {
    for (const auto& term : row.coefficients) ++counts.at(term.first);
  }
  model.col_start.assign(model.num_vars + 1, 0);
  for (std::size_t j = 0; j < model.num_vars; ++j) model.col_start[j + 1] = model.col_start[j] + counts[j];
  model.row_index.resize(model.col_start.back());
  model.value.resize(model.col_start.back());
  std::vector<std::size_t> fill(model.col_start.begin(), model.col_start.end() - 1);
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    for (const auto& [index, value] : row.coefficients) {
      const std::size_t k = fill[index]++;
      model.row_index[k] = i;
      model.value[k] = to_double_nearest(value);
    }
    const double rhs = to_double_nearest(row.rhs);
    switch (row.sense) {
      case Sense::kGreaterEqual:
        model.row_lower.push_back(rhs);
        model.row_upper.push_back(kInf);
        break;
      case Sense::kLessEqual:
        model.row_lower.push_back(-kInf);
        model.row_upper.push_back(rhs);
        break;
      case Sense::kEqual:
        model.row_lower.push_back(rhs);
        model.row_upper.push_back(rhs);
        break;
    }
  }
  return model;
}

FpLpResult solve_lp_fp(const FpModel& model, const FpOptions& options, const Basis* warm_basis) {
  if (!(options.eps > 0)) throw DomainError("tolerance must be positive");
  const std::size_t n = model.num_vars;
  const std::size_t m = model.num_rows;

  detail::KernelData<double> data;
  data.n = n;
  data.m = m;
  data.col_start = model.col_start;
  data.row_index = model.row_index;
  data.value = model.value;
  data.lower.reserve(n + m);
  data.upper.reserve(n + m);
  data.lower.insert(data.lower.end(), model.col_lower.begin(), model.col_lower.end());
  data.lower.insert(data.lower.end(), model.row_lower.begin(), model.row_lower.end());
  data.upper.insert(data.upper.end(), model.col_upper.begin(), model.col_upper.end());
  data.upper.insert(data.upper.end(), model.row_upper.begin(), model.row_upper.end());
  data.has_lower.resize(n + m);
  data.has_upper.resize(n + m);
  for (std::size_t j = 0; j < n + m; ++j) {
    if (data.lower[j] > data.upper[j]) {
      // Crossed bounds: report infeasible without iterating.
      FpLpResult r;
      r.status = FpStatus::kInfeasible;
      r.point.assign(n, 0.0);
      r.row_activity.assign(m, 0.0);
      r.basis.assign(n + m, BasisStatus::kAtLower);
      return r;
    }
    data.has_lower[j] = std::isfinite(data.lower[j]);
    data.has_upper[j] = std::isfinite(data.upper[j]);
  }
  data.cost = model.cost;
  if (model.sense == ObjectiveSense::kMaximize) {
    for (auto& c : data.cost) c = -c;
  }

  detail::KernelSettings settings;
  settings.primal_tol = options.eps;
  settings.dual_tol = options.eps;
  settings.pivot_tol = 1e-11;
  settings.iteration_limit = options.iteration_limit;
  settings.refactor_interval = options.refactor_interval;
  settings.degeneracy_streak = options.degeneracy_streak;
  settings.bland_only = options.bland_only;
  settings.harris = true;

  detail::BoundedSimplex<double> simplex(data, settings);
  auto kr = simplex.run(warm_basis);

  FpLpResult result;
  switch (kr.status) {
    case detail::KernelStatus::kOptimal:
      result.status = FpStatus::kOptimal;
      break;
    case detail::KernelStatus::kInfeasible:
      result.status = FpStatus::kInfeasible;
      break;
    case detail::KernelStatus::kUnbounded:
      result.status = FpStatus::kUnbounded;
      break;
    case detail::KernelStatus::kIterationLimit:
      result.status = FpStatus::kIterationLimit;
      break;
  }
  result.point.assign(kr.x.begin(), kr.x.begin() + static_cast<std::ptrdiff_t>(n));
  result.row_activity.assign(kr.x.begin() + static_cast<std::ptrdiff_t>(n), kr.x.end());
  result.basis = std::move(kr.basis);
  result.iterations = kr.iterations;
  double obj = 0;
  for (std::size_t j = 0; j < n; ++j) obj += model.cost[j] * result.point[j];
  result.objective = obj;
  return result;
}

FpLpResult solve_lp_fp(const LinearProgram& lp, double eps, std::size_t iteration_limit) {
  FpOptions options;
  options.eps = eps;
  options.iteration_limit = iteration_limit;
  return solve_lp_fp(to_fp_model(lp), options);
}

}  // namespace wnd
