#include "wnd/tolerance.hpp"

#include <algorithm>
#include <cmath>

#include "wnd/errors.hpp"

namespace wnd {

namespace {

struct LeForm {
  double activity = 0;
  double rhs = 0;
};

double activity_fp(const LinearRow& row, std::span<const double> x) {
  double sum = 0;
  for (const auto& [index, value] : row.coefficients) {
    if (index >= x.size()) throw DomainError("point too short for row");
    sum += to_double_nearest(value) * x[index];
  }
  return sum;
}

// Absolute and relative violation for a single <=-form inequality.
std::pair<double, double> le_violation(double activity, double rhs) {
  const double absolute = activity - rhs;
  const double scale = std::max({std::fabs(activity), std::fabs(rhs), 1.0});
  return {absolute, absolute / scale};
}

std::pair<double, double> row_violation(const LinearRow& row, std::span<const double> x) {
  const double activity = activity_fp(row, x);
  const double rhs = to_double_nearest(row.rhs);
  switch (row.sense) {
    case Sense::kLessEqual:
      return le_violation(activity, rhs);
    case Sense::kGreaterEqual:
      return le_violation(-activity, -rhs);
    case Sense::kEqual: {
      const auto up = le_violation(activity, rhs);
      const auto down = le_violation(-activity, -rhs);
      return up.second >= down.second ? up : down;
    }
  }
  return {0, 0};
}

}  // namespace

double relative_violation(const LinearRow& row, std::span<const double> x) {
  return row_violation(row, x).second;
}

bool is_row_satisfied(const LinearRow& row, std::span<const double> x, double eps) {
  if (!(eps > 0)) throw DomainError("feasibility tolerance must be positive");
  return relative_violation(row, x) <= eps;
}

ViolationMeasure measure_violation(const LinearRow& row, std::span<const double> x,
                                   std::span<const double> tolerances) {
  const auto [absolute, relative] = row_violation(row, x);
  ViolationMeasure m;
  m.absolute_violation = absolute;
  m.relative_violation = relative;
  for (double eps : tolerances) {
    if (!(eps > 0)) throw DomainError("feasibility tolerance must be positive");
    m.satisfied_at[eps] = relative <= eps;
  }
  return m;
}

SirViolationPair sir_violation_from_linear(const Instance& inst, std::span<const Rational> p,
                                           ReceiverIndex r, TransmitterIndex s) {
  const Rational denom = noise_plus_interference(inst, p, r, s);
  const auto& rec = inst.receivers()[r.value];
  const Rational interference = denom - rec.noise;
  const Rational service = inst.fading_matrix()[r.value][s.value] * p[s.value];

  SirViolationPair out;
  out.eps_linear = rec.delta * rec.noise - (service - rec.delta * interference);
  out.eps_sir = rec.delta - service / denom;
  out.amplification = 1 / denom;
  return out;
}

}  // namespace wnd
