#include "wnd/lp_exact.hpp"

#include "simplex_kernel.hpp"
#include "wnd/errors.hpp"

namespace wnd {

const char* to_string(ExactStatus status) {
  return status == ExactStatus::kFeasible ? "feasible" : "infeasible";
}

namespace {

detail::KernelData<Rational> kernel_data(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  const std::size_t m = lp.num_rows();
  detail::KernelData<Rational> data;
  data.n = n;
  data.m = m;
  data.lower.resize(n + m);
  data.upper.resize(n + m);
  data.has_lower.assign(n + m, 0);
  data.has_upper.assign(n + m, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = lp.variables[j];
    if (v.lower) {
      data.lower[j] = *v.lower;
      data.has_lower[j] = 1;
    }
    if (v.upper) {
      data.upper[j] = *v.upper;
      data.has_upper[j] = 1;
    }
  }

  std::vector<std::size_t> counts(n, 0);
  for (const auto& row : lp.rows) {
    for (const auto& term : row.coefficients) ++counts.at(term.first);
  }
  data.col_start.assign(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) data.col_start[j + 1] = data.col_start[j] + counts[j];
  data.row_index.resize(data.col_start.back());
  data.value.resize(data.col_start.back());
  std::vector<std::size_t> fill(data.col_start.begin(), data.col_start.end() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    for (const auto& [index, value] : row.coefficients) {
      const std::size_t k = fill[index]++;
      data.row_index[k] = i;
      data.value[k] = value;
    }
    const std::size_t j = n + i;
    if (row.sense != Sense::kLessEqual) {
      data.lower[j] = row.rhs;
      data.has_lower[j] = 1;
    }
    if (row.sense != Sense::kGreaterEqual) {
      data.upper[j] = row.rhs;
      data.has_upper[j] = 1;
    }
  }

  data.cost.assign(n, Rational(0));
  const bool maximize = lp.objective.sense == ObjectiveSense::kMaximize;
  for (const auto& [index, value] : lp.objective.coefficients) {
    data.cost.at(index) += maximize ? Rational(-value) : value;
  }
  return data;
}

}  // namespace

ExactLpResult solve_lp_exact(const LinearProgram& lp, const Basis* warm_basis,
                             const ExactOptions& options) {
  lp.validate();
  const std::size_t n = lp.num_variables();
  const std::size_t m = lp.num_rows();

  ExactLpResult result;
  for (const auto& v : lp.variables) {
    if (v.lower && v.upper && *v.lower > *v.upper) {
      // Empty box; the zero-row aggregation cannot express this, so the
      // certificate is left empty.
      result.status = ExactStatus::kInfeasible;
      result.certificate.assign(m, Rational(0));
      return result;
    }
  }

  const auto data = kernel_data(lp);
  detail::KernelSettings settings;
  settings.bland_only = true;
  settings.feasibility_only = !options.optimize;
  settings.iteration_limit = static_cast<std::size_t>(-1);
  detail::BoundedSimplex<Rational> simplex(data, settings);
  auto kr = simplex.run(warm_basis);

  result.pivots_after_warmstart = kr.iterations;
  result.warm_start_used = kr.warm_start_used;
  if (kr.status == detail::KernelStatus::kInfeasible) {
    result.status = ExactStatus::kInfeasible;
    result.certificate.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& w = kr.farkas_duals[i];
      result.certificate[i] = lp.rows[i].sense == Sense::kLessEqual ? Rational(-w) : w;
    }
    return result;
  }
  result.status = ExactStatus::kFeasible;
  result.point.assign(kr.x.begin(), kr.x.begin() + static_cast<std::ptrdiff_t>(n));
  if (options.optimize && kr.status == detail::KernelStatus::kOptimal) {
    Rational obj = 0;
    for (const auto& [index, value] : lp.objective.coefficients) obj += value * result.point[index];
    result.objective = obj;
  }
  return result;
}

bool PointCheck::all_satisfied() const {
  for (const auto& r : rows) {
    if (!r.satisfied) return false;
  }
  for (const auto& b : bounds) {
    if (!b.satisfied) return false;
  }
  return true;
}

Rational PointCheck::max_violation() const {
  Rational worst = 0;
  for (const auto& r : rows) {
    if (r.violation > worst) worst = r.violation;
  }
  for (const auto& b : bounds) {
    if (b.violation > worst) worst = b.violation;
  }
  return worst;
}

PointCheck check_point_exact(const LinearProgram& lp, std::span<const Rational> x) {
  if (x.size() != lp.num_variables()) {
    throw DomainError("point has " + std::to_string(x.size()) + " entries, expected " +
                      std::to_string(lp.num_variables()));
  }
  PointCheck check;
  check.rows.reserve(lp.num_rows());
  for (const auto& row : lp.rows) {
    const Rational activity = row.activity(x);
    RowCheck rc;
    switch (row.sense) {
      case Sense::kGreaterEqual:
        rc.violation = row.rhs - activity;
        break;
      case Sense::kLessEqual:
        rc.violation = activity - row.rhs;
        break;
      case Sense::kEqual:
        rc.violation = abs(activity - row.rhs);
        break;
    }
    rc.satisfied = rc.violation <= 0;
    check.rows.push_back(std::move(rc));
  }
  check.bounds.reserve(lp.num_variables());
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const auto& v = lp.variables[j];
    RowCheck bc;
    bool any = false;
    if (v.lower) {
      bc.violation = *v.lower - x[j];
      any = true;
    }
    if (v.upper) {
      Rational up = x[j] - *v.upper;
      if (!any || up > bc.violation) bc.violation = up;
      any = true;
    }
    if (!any) bc.violation = 0;
    bc.satisfied = bc.violation <= 0;
    check.bounds.push_back(std::move(bc));
  }
  return check;
}

bool check_farkas(const LinearProgram& lp, std::span<const Rational> y) {
  if (y.size() != lp.num_rows()) {
    throw DomainError("certificate has " + std::to_string(y.size()) + " multipliers, expected " +
                      std::to_string(lp.num_rows()));
  }
  std::vector<Rational> aggregated(lp.num_variables(), Rational(0));
  Rational rhs = 0;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const auto& row = lp.rows[i];
    if (row.sense != Sense::kEqual && sgn(y[i]) < 0) {
      throw DomainError("negative multiplier on inequality row " + std::to_string(i));
    }
    if (sgn(y[i]) == 0) continue;
    const Rational sign = row.sense == Sense::kLessEqual ? Rational(-1) : Rational(1);
    const Rational mult = sign * y[i];
    for (const auto& [index, value] : row.coefficients) aggregated[index] += mult * value;
    rhs += mult * row.rhs;
  }
  // Max of aggregated * x over the box.
  Rational max_lhs = 0;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const int s = sgn(aggregated[j]);
    if (s == 0) continue;
    const auto& v = lp.variables[j];
    const auto& bound = s > 0 ? v.upper : v.lower;
    if (!bound) return false;
    max_lhs += aggregated[j] * *bound;
  }
  return max_lhs < rhs;
}

}  // namespace wnd
