// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wnd/audit.hpp"
#include "wnd/instgen.hpp"
#include "wnd/lp_exact.hpp"
#include "wnd/lp_refine.hpp"
#include "wnd/mip_bnb.hpp"
#include "wnd/tolerance.hpp"

using wnd::Rational;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- 1

Outcome model_dimensions() {
  struct Case {
    std::size_t r, t;
    wnd::ModelDimensions expected;
  };
  const std::vector<Case> cases{{100, 8, {808, 900, 8000}}, {900, 36, {32436, 33300, 1231200}}};
  std::ostringstream d;
  bool ok = true;
  for (const auto& c : cases) {
    wnd::GenParams p;
    p.receivers = c.r;
    p.transmitters = c.t;
    const auto inst = wnd::generate_instance(p);
    const auto start = std::chrono::steady_clock::now();
    const auto mip = wnd::build_spap(inst);
    const auto dims = wnd::dimensions(mip.lp);
    const double t = seconds_since(start);
    ok = ok && dims == c.expected && t < 1.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "(%zu,%zu)=%zu/%zu/%zu built in %.3fs; ", c.r, c.t, dims.variables, dims.rows,
                  dims.nonzeros, t);
    d << buf;
  }
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 2, 3

struct SirSample {
  wnd::Instance inst;
  std::vector<Rational> p;
  std::size_t r = 0, s = 0;
};

std::vector<SirSample> sir_samples(std::size_t count) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> nr(1, 4), nt(1, 4);
  std::uniform_int_distribution<int> mode(0, 3), frac(0, 1000);
  std::vector<SirSample> out;
  while (out.size() < count) {
    auto inst = oracle::random_instance(rng, nr(rng), nt(rng));
    std::uniform_int_distribution<std::size_t> pick_r(0, inst.num_receivers() - 1),
        pick_t(0, inst.num_transmitters() - 1);
    const std::size_t r = pick_r(rng), s = pick_t(rng);
    std::vector<Rational> p;
    for (const auto& t : inst.transmitters()) p.push_back(t.p_max * frac(rng) / 1000);
    const auto& a = inst.fading_matrix()[r];
    const auto& rec = inst.receivers()[r];
    if (mode(rng) == 0 && a[s] != 0) {
      // Put the point exactly on the threshold.
      Rational interference = rec.noise;
      for (std::size_t t = 0; t < p.size(); ++t) {
        if (t != s) interference += a[t] * p[t];
      }
      p[s] = rec.delta * interference / a[s];
    }
    out.push_back({std::move(inst), std::move(p), r, s});
  }
  return out;
}

Outcome ratio_linear_equivalence(const std::vector<SirSample>& samples) {
  std::size_t agree = 0, holds = 0, ties = 0;
  for (const auto& smp : samples) {
    const Rational sir = oracle::sir_formula(smp.inst, smp.p, smp.r, smp.s);
    const Rational delta = smp.inst.receivers()[smp.r].delta;
    const bool ratio = sir >= delta;
    const auto row = wnd::linearized_sir_row(smp.inst, wnd::ReceiverIndex{smp.r}, wnd::TransmitterIndex{smp.s});
    const bool linear = row.activity(smp.p) >= row.rhs;
    agree += ratio == linear;
    holds += ratio;
    ties += sir == delta;
  }
  std::ostringstream d;
  d << agree << "/" << samples.size() << " agree (" << holds << " satisfied, " << ties << " on the threshold)";
  return {agree == samples.size(), d.str()};
}

Outcome violation_identity(const std::vector<SirSample>& samples) {
  std::size_t exact = 0, positive = 0;
  for (const auto& smp : samples) {
    const auto pair = wnd::sir_violation_from_linear(smp.inst, smp.p, wnd::ReceiverIndex{smp.r},
                                                     wnd::TransmitterIndex{smp.s});
    // Independent values from the raw formulas.
    const auto& a = smp.inst.fading_matrix()[smp.r];
    const auto& rec = smp.inst.receivers()[smp.r];
    Rational ni = rec.noise;
    for (std::size_t t = 0; t < smp.p.size(); ++t) {
      if (t != smp.s) ni += a[t] * smp.p[t];
    }
    const Rational eps_linear = rec.delta * ni - a[smp.s] * smp.p[smp.s];
    const Rational eps_sir = rec.delta - oracle::sir_formula(smp.inst, smp.p, smp.r, smp.s);
    const bool ok = pair.eps_sir * ni == pair.eps_linear && pair.eps_linear == eps_linear &&
                    pair.eps_sir == eps_sir && pair.amplification * ni == 1;
    exact += ok;
    positive += eps_sir > 0;
  }
  std::ostringstream d;
  d << exact << "/" << samples.size() << " exact (" << positive << " violated)";
  return {exact == samples.size(), d.str()};
}

// ---------------------------------------------------------------- 4

Outcome scaled_tolerance() {
  std::mt19937_64 rng(5150);
  const Rational s = wnd::pow10(12);
  std::size_t agree = 0, sat = 0;
  const std::size_t n = 1000;
  for (std::size_t k = 0; k < n; ++k) {
    const auto sample = oracle::sample_small_row(rng);
    wnd::LinearRow scaled = sample.row;
    for (auto& term : scaled.coefficients) term.second *= s;
    scaled.rhs *= s;
    const bool a = wnd::is_row_satisfied(scaled, sample.x, 1e-9);
    const bool b = wnd::is_row_satisfied(sample.row, sample.x, 1e-21);
    agree += a == b;
    sat += b;
  }
  std::ostringstream d;
  d << agree << "/" << n << " agree (" << sat << " satisfied)";
  return {agree == n, d.str()};
}

// ---------------------------------------------------------------- 5, 6, 10

struct Experiment {
  wnd::Instance inst;
  wnd::MipResult unscaled;
  wnd::AuditReport unscaled_audit;
  wnd::MipResult scaled;
  wnd::AuditReport scaled_audit;
  wnd::VerificationResult scaled_verify;
};

std::vector<wnd::Instance> experiment_instances() {
  std::vector<wnd::Instance> out;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    out.push_back(wnd::generate_instance(fixtures::experiment_params(50, 8, seed)));
  }
  return out;
}

Outcome unreliability(std::vector<Experiment>& runs) {
  std::ostringstream d;
  bool ok = true;
  for (const auto& inst : experiment_instances()) {
    const auto [lo, hi] = wnd::fading_range(inst);
    const bool span = hi >= lo * wnd::pow10(10);
    wnd::BnbOptions opt;
    opt.eps = 1e-6;
    opt.node_limit = 200;
    opt.time_limit = 20;
    auto res = wnd::solve_spap_bnb(wnd::build_spap(inst), opt);
    auto rep = wnd::audit_solution(inst, res.solution);
    const bool hit = span && rep.max_linear_violation <= wnd::pow10(-8) && rep.max_sir_violation >= 1 &&
                     rep.served < rep.claimed;
    ok = ok && hit;
    d << "[" << wnd::approx_string(lo) << ".." << wnd::approx_string(hi) << " lin "
      << wnd::approx_string(rep.max_linear_violation) << " sir " << wnd::approx_string(rep.max_sir_violation)
      << " served " << rep.served << "/" << rep.claimed << "] ";
    runs.push_back({inst, std::move(res), std::move(rep), {}, {}, {}});
  }
  return {ok, d.str()};
}

Outcome scaling_improvement(std::vector<Experiment>& runs) {
  std::ostringstream d;
  std::size_t good = 0;
  for (auto& run : runs) {
    wnd::BnbOptions opt;
    opt.eps = 1e-6;
    opt.node_limit = 200;
    opt.time_limit = 40;
    run.scaled = wnd::solve_spap_bnb(wnd::scale_rows(wnd::build_spap(run.inst), wnd::pow10(12)), opt);
    run.scaled_audit = wnd::audit_solution(run.inst, run.scaled.solution);
    run.scaled_verify = wnd::verify_assignment_exact(run.inst, run.scaled.solution.assignment);
    const bool hit = run.scaled_audit.claimed > 0 && run.scaled_audit.max_sir_violation <= Rational(1, 1000) &&
                     run.scaled_verify.status == wnd::VerificationStatus::kFeasible;
    good += hit;
    d << "[sir " << wnd::approx_string(run.scaled_audit.max_sir_violation) << " served "
      << run.scaled_audit.served << "/" << run.scaled_audit.claimed << " "
      << wnd::to_string(run.scaled_verify.status) << "] ";
  }
  d << good << "/5 qualify";
  return {good >= 4, d.str()};
}

Outcome repair_coherence(const std::vector<Experiment>& runs) {
  std::ostringstream d;
  bool ok = true;
  std::size_t checked = 0;
  for (const auto& run : runs) {
    if (run.scaled_verify.status != wnd::VerificationStatus::kFeasible) continue;
    ++checked;
    wnd::Solution repaired = run.scaled.solution;
    repaired.power_exact = run.scaled_verify.power;
    repaired.power = wnd::to_doubles(run.scaled_verify.power);
    const auto rep = wnd::audit_solution(run.inst, repaired);
    const bool exact_ok = rep.max_sir_violation == 0 && rep.served == rep.claimed &&
                          rep.claimed == run.scaled.solution.assignment.served_count();
    // The refined vector of the scaled fixed LP, reported alongside.
    const auto lp = wnd::scale_rows(wnd::build_pap(run.inst, run.scaled.solution.assignment), wnd::pow10(12));
    const auto ref = wnd::refine_lp(lp, wnd::pow10(-25));
    wnd::Solution refined = run.scaled.solution;
    refined.power_exact = ref.point;
    refined.power = wnd::to_doubles(ref.point);
    const auto rep2 = wnd::audit_solution(run.inst, refined);
    ok = ok && exact_ok;
    d << "[exact sir " << wnd::approx_string(rep.max_sir_violation) << " served " << rep.served << "/"
      << rep.claimed << "; refined sir " << wnd::approx_string(rep2.max_sir_violation) << " served "
      << rep2.served << "/" << rep2.claimed << "] ";
  }
  d << checked << " checked";
  return {ok && checked > 0, d.str()};
}

// ---------------------------------------------------------------- 7

Outcome exact_soundness() {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<std::size_t> dim(1, 6), coin(0, 1);
  std::size_t match = 0, feasible = 0, points_ok = 0, certs_ok = 0;
  const std::size_t n = 100;
  for (std::size_t k = 0; k < n; ++k) {
    const auto lp = oracle::random_lp(rng, dim(rng), dim(rng), coin(rng) == 1);
    const auto truth = oracle::find_vertex(lp);
    const auto res = wnd::solve_lp_exact(lp);
    const bool says_feasible = res.status == wnd::ExactStatus::kFeasible;
    match += says_feasible == truth.feasible;
    if (says_feasible) {
      ++feasible;
      points_ok += oracle::satisfies(lp, res.point) && oracle::max_violation(lp, res.point) == 0;
    } else {
      certs_ok += wnd::check_farkas(lp, res.certificate);
    }
  }
  std::ostringstream d;
  d << match << "/" << n << " verdicts match (" << feasible << " feasible); points " << points_ok << "/"
    << feasible << "; certificates " << certs_ok << "/" << (n - feasible);
  return {match == n && points_ok == feasible && certs_ok == n - feasible, d.str()};
}

// ---------------------------------------------------------------- 8

Outcome refinement_accuracy() {
  const Rational tol = wnd::pow10(-25);
  std::size_t good = 0;
  Rational worst = 0;
  std::size_t max_rounds = 0;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const std::size_t receivers = 40 + 6 * k;  // 40..94
    const auto inst = wnd::generate_instance(fixtures::experiment_params(receivers, 8, 100 + k));
    const auto asg = fixtures::greedy_assignment(inst);
    const auto lp = wnd::scale_rows(wnd::build_pap(inst, asg), wnd::pow10(12));
    const auto res = wnd::refine_lp(lp, tol, 10);
    const Rational viol = oracle::max_violation(lp, res.point);
    const bool ok = res.status == wnd::RefineStatus::kSuccess && res.rounds <= 10 && viol <= tol &&
                    viol == res.max_violation && lp.num_rows() > 0;
    good += ok;
    worst = std::max(worst, viol);
    max_rounds = std::max(max_rounds, res.rounds);
  }
  std::ostringstream d;
  d << good << "/10 reach 1e-25; worst " << wnd::approx_string(worst) << ", at most " << max_rounds << " rounds";
  return {good == 10, d.str()};
}

// ---------------------------------------------------------------- 9

wnd::Assignment full_service(const wnd::Instance& inst) {
  wnd::Assignment asg(inst.num_receivers());
  for (std::size_t r = 0; r < inst.num_receivers(); ++r) asg.assign(wnd::ReceiverIndex{r}, wnd::TransmitterIndex{0});
  return asg;
}

Outcome bnb_correctness() {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> nr(1, 6), nt(1, 3);
  wnd::BnbOptions opt;
  opt.verification_mode = true;
  std::size_t agree = 0, partial = 0;
  const std::size_t n = 50;
  for (std::size_t k = 0; k < n; ++k) {
    const auto inst = oracle::random_instance(rng, nr(rng), nt(rng));
    const auto bnb = wnd::solve_spap_bnb(wnd::build_spap(inst), opt);
    const auto brute = wnd::brute_force_spap(inst);
    agree += bnb.status == wnd::MipStatus::kOptimal &&
             bnb.solution.objective_claimed == brute.solution.objective_claimed;
    partial += brute.solution.objective_claimed < wnd::assignment_revenue(inst, full_service(inst));
  }
  std::ostringstream d;
  d << agree << "/" << n << " objectives equal (" << partial << " where not everyone can be served)";
  return {agree == n, d.str()};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, double limit, const std::function<Outcome()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double t = seconds_since(start);
    const bool pass = out.pass && t < limit;
    failures += !pass;
    std::printf("criterion %2d: %s  (%.2fs, limit %.0fs) %s\n", id, pass ? "PASS" : "FAIL", t, limit,
                out.detail.c_str());
    std::fflush(stdout);
  };

  report(1, 60, model_dimensions);  // each build_spap call is held to 1 s inside
  const auto samples = sir_samples(1000);
  report(2, 10, [&] { return ratio_linear_equivalence(samples); });
  report(3, 10, [&] { return violation_identity(samples); });
  report(4, 10, scaled_tolerance);
  std::vector<Experiment> runs;
  report(5, 300, [&] { return unreliability(runs); });
  report(6, 300, [&] { return scaling_improvement(runs); });
  report(7, 60, exact_soundness);
  report(8, 120, refinement_accuracy);
  report(9, 300, bnb_correctness);
  report(10, 60, [&] { return repair_coherence(runs); });
  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
