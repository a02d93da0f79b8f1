#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wnd/model.hpp"
#include "wnd/rational.hpp"

namespace wnd {

struct Provenance {
  std::string solver;         // "bnb", "bnb-verify", "brute-force", ...
  double eps = 0;             // feasibility tolerance of the fp solver
  std::string scale = "1";    // row scaling applied before solving
  std::size_t node_limit = 0;
  double time_limit = 0;      // seconds
  std::string status;         // solver verdict for this solution
  std::string note;
};

struct Solution {
  std::vector<double> power;                       // as returned by the solver
  std::optional<std::vector<Rational>> power_exact;  // exact repair, if any
  Assignment assignment;
  Rational objective_claimed;  // revenue of the assignment
  Provenance provenance;

  // power_exact if present, otherwise the doubles read exactly.
  std::vector<Rational> exact_power() const;
};

Rational assignment_revenue(const Instance& inst, const Assignment& asg);

enum class MipStatus { kOptimal, kFeasibleLimit, kInfeasible };

const char* to_string(MipStatus status);

struct MipResult {
  MipStatus status = MipStatus::kInfeasible;
  Solution solution;
  std::size_t nodes = 0;
  double dual_bound = 0;
};

struct BnbOptions {
  double eps = 1e-6;  // fp feasibility tolerance for relaxations and incumbents
  std::size_t node_limit = 100000;
  double time_limit = 3600;  // seconds
  double integrality_tol = 1e-6;
  // Integral nodes are accepted only if the fixed-assignment LP is exactly
  // feasible; otherwise the assignment is cut off by no-good branching.
  bool verification_mode = false;
};

// Branch-and-bound on an SPAP model (layout required, maximization). Revenues
// are read from the objective coefficients of the binaries.
MipResult solve_spap_bnb(const MipProblem& mip, const BnbOptions& options = {});

// Exhaustive exact oracle over all (|T|+1)^|R| assignments. Throws LimitError
// when that count exceeds max_assignments.
MipResult brute_force_spap(const Instance& inst, std::size_t max_assignments = 100000);

}  // namespace wnd
