#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wnd/model.hpp"
#include "wnd/rational.hpp"

namespace wnd {

enum class RefineStatus { kSuccess, kRoundLimit, kFpFailure };

const char* to_string(RefineStatus status);

struct RefineResult {
  RefineStatus status = RefineStatus::kFpFailure;
  std::vector<Rational> point;
  Rational max_violation;  // exact, over rows and bounds
  std::size_t rounds = 0;  // floating-point solves performed
  std::vector<Rational> per_round_violations;
  std::vector<Rational> scale_factors;  // Delta used for each correction round
  std::string message;
};

struct RefineOptions {
  double fp_eps = 1e-9;
  std::size_t iteration_limit = 100000;
  // Delta may grow by at most this factor from one round to the next.
  double scale_growth_cap = 1e12;
};

// Primal iterative refinement. Round 1 solves lp in double precision; each
// further round solves the residual problem scaled by Delta, warm-started
// from the previous basis, and adds correction / Delta to the point exactly.
// Throws DomainError if tol <= 0.
RefineResult refine_lp(const LinearProgram& lp, const Rational& tol, std::size_t max_rounds = 10,
                       const RefineOptions& options = {});

}  // namespace wnd
