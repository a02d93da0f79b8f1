#include "wnd/audit.hpp"

#include <chrono>
#include <cstdio>

#include "wnd/errors.hpp"
#include "wnd/lp_exact.hpp"
#include "wnd/lp_fp.hpp"
#include "wnd/tolerance.hpp"

namespace wnd {

const char* to_string(VerificationStatus status) {
  return status == VerificationStatus::kFeasible ? "feasible" : "infeasible";
}

AuditReport audit_solution(const Instance& inst, const Solution& sol, const Rational& serve_tol) {
  if (sgn(serve_tol) < 0) throw DomainError("serve tolerance must be nonnegative");
  if (sol.power.size() != inst.num_transmitters() ||
      (sol.power_exact && sol.power_exact->size() != inst.num_transmitters())) {
    throw DomainError("power vector does not match the number of transmitters");
  }
  if (sol.assignment.num_receivers() != inst.num_receivers()) {
    throw DomainError("assignment does not match the number of receivers");
  }
  const auto p = sol.exact_power();

  AuditReport report;
  report.num_receivers = inst.num_receivers();
  report.num_transmitters = inst.num_transmitters();
  bool first_alpha = true;
  for (const auto& row : inst.fading_matrix()) {
    for (const auto& a : row) {
      if (sgn(a) == 0) continue;
      if (first_alpha || a < report.alpha_min) report.alpha_min = a;
      if (first_alpha || a > report.alpha_max) report.alpha_max = a;
      first_alpha = false;
    }
  }
  report.objective_claimed = sol.objective_claimed;
  report.serve_tol = serve_tol;

  for (const auto& [r, s] : sol.assignment.served_pairs()) {
    inst.check_transmitter(s);
    const auto pair = sir_violation_from_linear(inst, p, r, s);
    ReceiverAudit ra;
    ra.receiver = r;
    ra.server = s;
    ra.eps_linear = pair.eps_linear;
    ra.eps_sir = pair.eps_sir;
    ra.denominator = 1 / pair.amplification;
    ra.served = ra.eps_sir <= serve_tol;
    if (ra.eps_linear > report.max_linear_violation) report.max_linear_violation = ra.eps_linear;
    if (ra.eps_sir > report.max_sir_violation) report.max_sir_violation = ra.eps_sir;
    ++report.claimed;
    ++(ra.served ? report.served : report.unserved);
    report.per_receiver.push_back(std::move(ra));
  }
  return report;
}

VerificationResult verify_assignment_exact(const Instance& inst, const Assignment& asg,
                                           const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerificationResult result;
  result.lp = build_pap(inst, asg);

  std::optional<Basis> warm;
  if (options.warm_start && result.lp.num_rows() > 0) {
    FpOptions fp;
    fp.eps = options.warm_eps;
    const auto fp_result = solve_lp_fp(to_fp_model(scale_rows(result.lp, options.warm_scale)), fp);
    if (fp_result.status == FpStatus::kOptimal) warm = fp_result.basis;
  }

  const auto exact = solve_lp_exact(result.lp, warm ? &*warm : nullptr);
  result.pivots = exact.pivots_after_warmstart;
  result.warm_start_used = exact.warm_start_used;
  if (exact.status == ExactStatus::kFeasible) {
    result.status = VerificationStatus::kFeasible;
    result.power = exact.point;
  } else {
    result.status = VerificationStatus::kInfeasible;
    result.certificate = exact.certificate;
  }
  result.time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string render_audit_table(const std::vector<AuditReport>& reports) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%5s %4s %9s %9s %5s %12s %10s %7s %9s\n", "|R|", "|T|",
                "a_min", "a_max", "obj.", "linear viol.", "SIR viol.", "served", "unserved");
  out += buf;
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%5zu %4zu %9s %9s %5s %12s %10s %7zu %9zu\n", r.num_receivers,
                  r.num_transmitters, approx_string(r.alpha_min).c_str(),
                  approx_string(r.alpha_max).c_str(), approx_string(r.objective_claimed, 6).c_str(),
                  approx_string(r.max_linear_violation).c_str(),
                  approx_string(r.max_sir_violation).c_str(), r.served, r.unserved);
    out += buf;
  }
  return out;
}

std::string render_receiver_table(const Instance& inst, const AuditReport& report) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %-10s %12s %12s %12s %s\n", "receiver", "server",
                "linear viol.", "SIR viol.", "N+I", "served");
  out += buf;
  for (const auto& ra : report.per_receiver) {
    std::snprintf(buf, sizeof buf, "%-10s %-10s %12s %12s %12s %s\n",
                  inst.receiver(ra.receiver).id.c_str(), inst.transmitter(ra.server).id.c_str(),
                  approx_string(ra.eps_linear, 3).c_str(), approx_string(ra.eps_sir, 3).c_str(),
                  approx_string(ra.denominator, 3).c_str(), ra.served ? "yes" : "no");
    out += buf;
  }
  return out;
}

}  // namespace wnd
