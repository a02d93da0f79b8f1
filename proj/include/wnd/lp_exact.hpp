#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wnd/lp_fp.hpp"
#include "wnd/model.hpp"
#include "wnd/rational.hpp"

namespace wnd {

enum class ExactStatus { kFeasible, kInfeasible };

const char* to_string(ExactStatus status);

struct ExactLpResult {
  ExactStatus status = ExactStatus::kInfeasible;
  std::vector<Rational> point;  // when feasible
  // One multiplier per row for the row written in >=-form (<= rows negated);
  // nonnegative on inequalities, free on equalities. Bound multipliers are
  // implicit: check_farkas reduces the aggregated row against the box.
  std::vector<Rational> certificate;  // when infeasible
  std::size_t pivots_after_warmstart = 0;
  bool warm_start_used = false;
  std::optional<Rational> objective;  // when optimize was requested
};

struct ExactOptions {
  bool optimize = false;  // also minimize/maximize the objective (phase 2)
};

// Rational bounded simplex with Bland's rule. Without optimize this is a pure
// phase-1 feasibility solve. A warm basis (e.g. from solve_lp_fp) is used if
// it is exactly nonsingular; if it is already feasible no pivots are made.
ExactLpResult solve_lp_exact(const LinearProgram& lp, const Basis* warm_basis = nullptr,
                             const ExactOptions& options = {});

struct RowCheck {
  bool satisfied = true;
  Rational violation;  // > 0: amount violated; <= 0: slack (negated)
};

struct PointCheck {
  std::vector<RowCheck> rows;
  std::vector<RowCheck> bounds;  // worse of the two sides per variable

  bool all_satisfied() const;
  // max(0, largest violation over rows and bounds).
  Rational max_violation() const;
};

PointCheck check_point_exact(const LinearProgram& lp, std::span<const Rational> x);

// True iff sum_i y_i * (row_i in >=-form) has a right-hand side strictly
// above the maximum of its left-hand side over the variable box.
bool check_farkas(const LinearProgram& lp, std::span<const Rational> y);

}  // namespace wnd
