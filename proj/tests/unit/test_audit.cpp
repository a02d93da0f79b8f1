#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wnd/audit.hpp"
#include "wnd/errors.hpp"
#include "wnd/instgen.hpp"
#include "wnd/lp_exact.hpp"

using wnd::parse_rational;
using wnd::Rational;

namespace {

wnd::Solution make_solution(const wnd::Instance& inst, std::vector<std::pair<std::size_t, std::size_t>> pairs,
                            std::vector<Rational> p) {
  wnd::Solution s;
  s.assignment = wnd::Assignment(inst.num_receivers());
  for (const auto& [r, t] : pairs) s.assignment.assign(wnd::ReceiverIndex{r}, wnd::TransmitterIndex{t});
  s.power = wnd::to_doubles(p);
  s.power_exact = std::move(p);
  s.objective_claimed = wnd::assignment_revenue(inst, s.assignment);
  return s;
}

// Farkas check written out: nonnegative multipliers on >= rows whose
// aggregate cannot reach its rhs anywhere in the bounded box.
bool farkas_holds(const wnd::LinearProgram& lp, const std::vector<Rational>& y) {
  if (y.size() != lp.num_rows()) return false;
  std::vector<Rational> g(lp.num_variables(), Rational(0));
  Rational rhs = 0;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const auto& row = lp.rows[i];
    if (row.sense != wnd::Sense::kGreaterEqual || y[i] < 0) return false;
    for (const auto& [j, c] : row.coefficients) g[j] += y[i] * c;
    rhs += y[i] * row.rhs;
  }
  Rational best = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto& v = lp.variables[j];
    if (!v.lower || !v.upper) return false;
    best += std::max(Rational(g[j] * *v.lower), Rational(g[j] * *v.upper));
  }
  return best < rhs;
}

}  // namespace

TEST_CASE("TINY1 audits") {
  const auto inst = oracle::tiny1();
  const auto good = wnd::audit_solution(inst, make_solution(inst, {{0, 0}}, {Rational(1), Rational(0)}));
  CHECK(good.claimed == 1);
  CHECK(good.served == 1);
  CHECK(good.unserved == 0);
  CHECK(good.max_linear_violation == 0);
  CHECK(good.max_sir_violation == 0);
  CHECK(good.per_receiver.at(0).eps_sir <= 0);
  CHECK(good.per_receiver.at(0).eps_linear <= 0);

  const auto bad = wnd::audit_solution(
      inst, make_solution(inst, {{0, 0}}, {parse_rational("1e-3"), Rational(1)}));
  CHECK(bad.served == 0);
  CHECK(bad.unserved == 1);
  CHECK(bad.per_receiver.at(0).eps_sir == Rational(201, 101));
  CHECK(bad.max_sir_violation == Rational(201, 101));
  // delta - SIR from the raw formula.
  CHECK(bad.per_receiver.at(0).eps_sir ==
        2 - oracle::sir_formula(inst, {parse_rational("1e-3"), Rational(1)}, 0, 0));
  CHECK(bad.alpha_min == parse_rational("1e-10"));
  CHECK(bad.alpha_max == parse_rational("1e-9"));
}

TEST_CASE("linear and ratio violations stay coherent in every report") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int k = 0; k < 60; ++k) {
    const auto inst = oracle::random_instance(rng, 5, 3);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t r = 0; r < 5; ++r) {
      if (coin(rng) > 0) pairs.emplace_back(r, static_cast<std::size_t>(coin(rng)));
    }
    std::vector<Rational> p;
    for (std::size_t t = 0; t < 3; ++t) {
      p.push_back(inst.transmitters()[t].p_max * oracle::random_rational(rng, 10, 10) / 10);
      if (p.back() < 0) p.back() = -p.back();
    }
    const auto rep = wnd::audit_solution(inst, make_solution(inst, pairs, p));
    CHECK(rep.served + rep.unserved == pairs.size());
    if (pairs.empty()) continue;
    Rational dmin = rep.per_receiver[0].denominator, dmax = dmin;
    for (const auto& ra : rep.per_receiver) {
      const std::size_t r = ra.receiver.value, s = ra.server.value;
      CHECK(ra.eps_sir * ra.denominator == ra.eps_linear);
      CHECK(ra.eps_sir == inst.receivers()[r].delta - oracle::sir_formula(inst, p, r, s));
      dmin = std::min(dmin, ra.denominator);
      dmax = std::max(dmax, ra.denominator);
    }
    CHECK(rep.max_sir_violation * dmin <= rep.max_linear_violation);
    CHECK(rep.max_linear_violation <= rep.max_sir_violation * dmax);
  }
}

TEST_CASE("serve_tol zero means exact satisfaction of the ratio condition") {
  std::mt19937_64 rng(78);
  for (int k = 0; k < 40; ++k) {
    const auto inst = oracle::random_instance(rng, 4, 2);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t r = 0; r < 4; ++r) pairs.emplace_back(r, r % 2);
    std::vector<Rational> p{inst.transmitters()[0].p_max, inst.transmitters()[1].p_max / (k + 1)};
    const auto rep = wnd::audit_solution(inst, make_solution(inst, pairs, p), Rational(0));
    for (const auto& ra : rep.per_receiver) {
      const std::size_t r = ra.receiver.value;
      CHECK(ra.served == (oracle::sir_formula(inst, p, r, ra.server.value) >= inst.receivers()[r].delta));
    }
  }
}

TEST_CASE("audit rejects mismatched solutions") {
  const auto inst = oracle::tiny1();
  auto sol = make_solution(inst, {{0, 0}}, {Rational(1), Rational(0)});
  auto short_power = sol;
  short_power.power.pop_back();
  short_power.power_exact->pop_back();
  CHECK_THROWS_AS(wnd::audit_solution(inst, short_power), wnd::DomainError);
  auto wide = sol;
  wide.assignment = wnd::Assignment(2);
  CHECK_THROWS_AS(wnd::audit_solution(inst, wide), wnd::DomainError);
  CHECK_THROWS_AS(wnd::audit_solution(inst, sol, Rational(-1)), wnd::DomainError);
}

TEST_CASE("exact verification: feasible and infeasible examples") {
  const auto inst = oracle::tiny1();
  wnd::Assignment asg(1);
  asg.assign(wnd::ReceiverIndex{0}, wnd::TransmitterIndex{0});
  const auto ok = wnd::verify_assignment_exact(inst, asg);
  REQUIRE(ok.status == wnd::VerificationStatus::kFeasible);
  CHECK(oracle::satisfies(ok.lp, ok.power));
  CHECK(oracle::sir_formula(inst, ok.power, 0, 0) >= 2);

  // Two receivers that jam each other when both are served.
  const Rational n = parse_rational("1e-3");
  const wnd::Instance pair({{"t0", Rational(1)}, {"t1", Rational(1)}},
                           {{"r0", n, Rational(2), Rational(1)}, {"r1", n, Rational(2), Rational(1)}},
                           {{parse_rational("2e-3"), Rational(0)},
                            {parse_rational("1.5e-3"), parse_rational("3e-3")}});
  wnd::Assignment both(2);
  both.assign(wnd::ReceiverIndex{0}, wnd::TransmitterIndex{0});
  both.assign(wnd::ReceiverIndex{1}, wnd::TransmitterIndex{1});
  for (bool warm : {true, false}) {
    wnd::VerifyOptions opt;
    opt.warm_start = warm;
    const auto no = wnd::verify_assignment_exact(pair, both, opt);
    CHECK(no.status == wnd::VerificationStatus::kInfeasible);
    CHECK(farkas_holds(no.lp, no.certificate));
    CHECK(wnd::check_farkas(no.lp, no.certificate));
    CHECK(!oracle::find_vertex(no.lp).feasible);
  }
}

TEST_CASE("repair with the verified power vector clears the audit") {
  const auto inst = wnd::generate_instance(fixtures::experiment_params(20, 4, 9));
  const auto asg = fixtures::greedy_assignment(inst);
  REQUIRE(asg.served_count() > 0);
  // Unscaled solve point: zero power on the claimed assignment.
  wnd::Solution sol;
  sol.assignment = asg;
  sol.power.assign(4, 0.0);
  sol.objective_claimed = wnd::assignment_revenue(inst, asg);
  const auto before = wnd::audit_solution(inst, sol);
  CHECK(before.unserved == before.claimed);

  const auto ver = wnd::verify_assignment_exact(inst, asg);
  REQUIRE(ver.status == wnd::VerificationStatus::kFeasible);
  CHECK(ver.warm_start_used);
  sol.power_exact = ver.power;
  sol.power = wnd::to_doubles(ver.power);
  const auto after = wnd::audit_solution(inst, sol, Rational(0));
  CHECK(after.max_sir_violation == 0);
  CHECK(after.max_linear_violation == 0);
  CHECK(after.served == after.claimed);
  CHECK(after.claimed == asg.served_count());
}

TEST_CASE("tables carry one line per report or receiver") {
  const auto inst = oracle::tiny1();
  const auto rep = wnd::audit_solution(inst, make_solution(inst, {{0, 0}}, {Rational(1), Rational(0)}));
  const auto table = wnd::render_audit_table({rep, rep});
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);
  CHECK(table.find("SIR viol.") != std::string::npos);
  const auto per = wnd::render_receiver_table(inst, rep);
  CHECK(std::count(per.begin(), per.end(), '\n') == 2);
  CHECK(per.find("r1") != std::string::npos);
}
