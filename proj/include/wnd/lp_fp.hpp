#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wnd/model.hpp"

namespace wnd {

// Per-variable simplex status; structural variables first, then one entry
// per row (the row activity variable).
enum class BasisStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

using Basis = std::vector<BasisStatus>;

enum class FpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(FpStatus status);

struct FpLpResult {
  FpStatus status = FpStatus::kIterationLimit;
  std::vector<double> point;         // structural values
  std::vector<double> row_activity;  // A * point as tracked by the solver
  Basis basis;
  double objective = 0;
  std::size_t iterations = 0;
};

struct FpOptions {
  double eps = 1e-9;                  // primal and dual feasibility tolerance
  std::size_t iteration_limit = 100000;
  std::size_t refactor_interval = 50;
  std::size_t degeneracy_streak = 50;  // degenerate pivots before Bland's rule
  bool bland_only = false;
};

// Double-precision copy of a LinearProgram: rounded to nearest once, with
// infinite bounds as +-infinity. Column-compressed constraint matrix.
struct FpModel {
  std::size_t num_vars = 0;
  std::size_t num_rows = 0;
  std::vector<std::size_t> col_start;  // num_vars + 1
  std::vector<std::size_t> row_index;
  std::vector<double> value;
  std::vector<double> col_lower, col_upper;
  std::vector<double> row_lower, row_upper;
  std::vector<double> cost;
  ObjectiveSense sense = ObjectiveSense::kMinimize;
};

FpModel to_fp_model(const LinearProgram& lp);

// Bounded-variable primal simplex (composite phase 1, Harris ratio test,
// Dantzig pricing with a switch to Bland's rule after a degeneracy streak).
// Deterministic. A warm basis with the wrong shape or a singular basis
// matrix is ignored.
FpLpResult solve_lp_fp(const FpModel& model, const FpOptions& options,
                       const Basis* warm_basis = nullptr);

FpLpResult solve_lp_fp(const LinearProgram& lp, double eps, std::size_t iteration_limit);

}  // namespace wnd
