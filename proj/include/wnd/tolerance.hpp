#pragma once

#include <map>
#include <span>

#include "wnd/model.hpp"
#include "wnd/rational.hpp"

namespace wnd {

// How a floating-point solver sees a row at a point. Rows are brought to
// <=-form first (>= rows negated); equality rows report the worse side.
struct ViolationMeasure {
  double absolute_violation = 0;  // activity - rhs in <=-form
  double relative_violation = 0;  // divided by max{|activity|, |rhs|, 1}
  std::map<double, bool> satisfied_at;
};

// Evaluated in double precision on the row rounded to nearest, as a
// floating-point solver would. <= 0 means satisfied.
double relative_violation(const LinearRow& row, std::span<const double> x);

// relative_violation(row, x) <= eps. Throws DomainError if eps <= 0.
bool is_row_satisfied(const LinearRow& row, std::span<const double> x, double eps);

ViolationMeasure measure_violation(const LinearRow& row, std::span<const double> x,
                                   std::span<const double> tolerances);

// Exact violations of the linear and the ratio form of one SIR condition.
// eps_sir * (N + I) == eps_linear and amplification == 1 / (N + I).
struct SirViolationPair {
  Rational eps_linear;
  Rational eps_sir;
  Rational amplification;
};

SirViolationPair sir_violation_from_linear(const Instance& inst, std::span<const Rational> p,
                                           ReceiverIndex r, TransmitterIndex s);

}  // namespace wnd
