#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wnd/mip_bnb.hpp"
#include "wnd/model.hpp"
#include "wnd/rational.hpp"

namespace wnd {

struct ReceiverAudit {
  ReceiverIndex receiver;
  TransmitterIndex server;
  Rational eps_linear;    // > 0: linear row violated by this much
  Rational eps_sir;       // delta - SIR
  Rational denominator;   // N + I
  bool served = false;    // SIR >= delta - serve_tol
};

struct AuditReport {
  std::size_t num_receivers = 0;
  std::size_t num_transmitters = 0;
  Rational alpha_min;  // smallest nonzero fading coefficient
  Rational alpha_max;
  Rational objective_claimed;
  std::size_t claimed = 0;
  // Maxima over claimed receivers, clamped at zero.
  Rational max_linear_violation;
  Rational max_sir_violation;
  std::size_t served = 0;
  std::size_t unserved = 0;
  Rational serve_tol;
  std::vector<ReceiverAudit> per_receiver;  // receiver order
};

// Exact a-posteriori check of a solution's coverage claims.
AuditReport audit_solution(const Instance& inst, const Solution& sol,
                           const Rational& serve_tol = Rational(1, 1000000));

enum class VerificationStatus { kFeasible, kInfeasible };

const char* to_string(VerificationStatus status);

struct VerificationResult {
  VerificationStatus status = VerificationStatus::kInfeasible;
  std::vector<Rational> power;        // when feasible
  std::vector<Rational> certificate;  // when infeasible, one per served receiver row
  LinearProgram lp;                   // the fixed LP that was decided
  double time = 0;                    // seconds
  std::size_t pivots = 0;
  bool warm_start_used = false;
};

struct VerifyOptions {
  // Warm-start the exact solve from a double-precision basis computed on the
  // LP with SIR rows scaled by warm_scale. Scaling does not change the basis
  // structure, so the basis carries over to the unscaled LP.
  bool warm_start = true;
  Rational warm_scale = pow10(12);
  double warm_eps = 1e-9;
};

VerificationResult verify_assignment_exact(const Instance& inst, const Assignment& asg,
                                           const VerifyOptions& options = {});

// One summary line per report, columns:
// |R| |T| alpha_min alpha_max obj. linear-viol. SIR-viol. served unserved
std::string render_audit_table(const std::vector<AuditReport>& reports);
std::string render_receiver_table(const Instance& inst, const AuditReport& report);

}  // namespace wnd
