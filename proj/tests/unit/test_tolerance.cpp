#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wnd/errors.hpp"
#include "wnd/tolerance.hpp"

using wnd::parse_rational;
using wnd::Rational;

namespace {

wnd::LinearRow le_row(std::initializer_list<std::pair<std::size_t, const char*>> terms, const char* rhs) {
  wnd::LinearRow row;
  for (const auto& [j, c] : terms) row.coefficients.emplace_back(j, parse_rational(c));
  row.sense = wnd::Sense::kLessEqual;
  row.rhs = parse_rational(rhs);
  return row;
}

}  // namespace

TEST_CASE("relative violation examples") {
  const std::vector<double> x{0.50000005};
  CHECK(wnd::relative_violation(le_row({{0, "2"}}, "1"), x) == doctest::Approx(1e-7).epsilon(1e-6));

  const std::vector<double> y{3e-13};
  const auto small = le_row({{0, "1"}}, "2e-13");
  const auto m = wnd::measure_violation(small, y, std::vector<double>{1e-9, 1e-14});
  CHECK(m.absolute_violation == doctest::Approx(1e-13).epsilon(1e-9));
  CHECK(m.relative_violation == doctest::Approx(1e-13).epsilon(1e-9));
  CHECK(m.satisfied_at.at(1e-9));
  CHECK_FALSE(m.satisfied_at.at(1e-14));

  const auto scaled = le_row({{0, "1e12"}}, "0.2");
  CHECK(wnd::relative_violation(scaled, y) == doctest::Approx(0.1).epsilon(1e-9));

  CHECK(wnd::is_row_satisfied(small, y, 1e-9));
  CHECK_FALSE(wnd::is_row_satisfied(scaled, y, 1e-9));

  const std::vector<double> z{0.25};
  CHECK(wnd::is_row_satisfied(le_row({{0, "4"}}, "1"), z, 1e-30));
  CHECK_THROWS_AS(wnd::is_row_satisfied(small, y, 0.0), wnd::DomainError);
  CHECK_THROWS_AS(wnd::is_row_satisfied(small, y, -1.0), wnd::DomainError);
}

TEST_CASE(">= rows are negated and equality rows take the worse side") {
  wnd::LinearRow ge;
  ge.coefficients = {{0, Rational(1)}};
  ge.sense = wnd::Sense::kGreaterEqual;
  ge.rhs = 5;
  CHECK(wnd::relative_violation(ge, std::vector<double>{3}) == doctest::Approx(2.0 / 5.0));
  CHECK(wnd::relative_violation(ge, std::vector<double>{7}) <= 0);
  wnd::LinearRow eq = ge;
  eq.sense = wnd::Sense::kEqual;
  CHECK(wnd::relative_violation(eq, std::vector<double>{7}) == doctest::Approx(2.0 / 7.0));
  CHECK(wnd::relative_violation(eq, std::vector<double>{3}) == doctest::Approx(2.0 / 5.0));
}

TEST_CASE("relative violation never exceeds absolute when the denominator is at least 1") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int k = 0; k < 300; ++k) {
    auto row = le_row({{0, "3"}, {1, "-2"}}, "4");
    const std::vector<double> x{u(rng), u(rng)};
    const auto m = wnd::measure_violation(row, x, {});
    if (m.absolute_violation > 0) CHECK(m.relative_violation <= m.absolute_violation);
  }
}

TEST_CASE("scaling rows by S tightens the check by 1/S") {
  std::mt19937_64 rng(23);
  const Rational s = wnd::pow10(12);
  int agree = 0;
  for (int k = 0; k < 300; ++k) {
    const auto sample = oracle::sample_small_row(rng);
    wnd::LinearRow scaled = sample.row;
    for (auto& term : scaled.coefficients) term.second *= s;
    scaled.rhs *= s;
    agree += wnd::is_row_satisfied(scaled, sample.x, 1e-9) == wnd::is_row_satisfied(sample.row, sample.x, 1e-21);
  }
  CHECK(agree == 300);
}

TEST_CASE("is_row_satisfied is monotone in eps") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 200; ++k) {
    const auto sample = oracle::sample_small_row(rng);
    bool previous = false;
    for (double eps = 1e-30; eps < 1; eps *= 10) {
      const bool now = wnd::is_row_satisfied(sample.row, sample.x, eps);
      CHECK((!previous || now));
      previous = now;
    }
  }
}

TEST_CASE("SIR violation from the linear violation") {
  const auto inst = oracle::tiny1();
  const std::vector<Rational> p{parse_rational("1e-3"), Rational(1)};
  const auto pair = wnd::sir_violation_from_linear(inst, p, wnd::ReceiverIndex{0}, wnd::TransmitterIndex{0});
  CHECK(pair.eps_linear == parse_rational("2.01e-10"));
  CHECK(pair.eps_sir == Rational(201, 101));
  CHECK(pair.eps_sir == inst.receivers()[0].delta - oracle::sir_formula(inst, p, 0, 0));

  // Denominator near 1e-9 turns 1e-10 into order one.
  const wnd::Instance weak_link({{"t1", Rational(1000)}, {"t2", Rational(1000)}},
                               {{"r", parse_rational("1e-12"), parse_rational("6.3")}},
                               {{parse_rational("1e-12"), parse_rational("1e-12")}});
  const std::vector<Rational> q{Rational(0), Rational(1)};
  const auto big = wnd::sir_violation_from_linear(weak_link, q, wnd::ReceiverIndex{0}, wnd::TransmitterIndex{0});
  CHECK(big.eps_linear < parse_rational("2e-10"));
  CHECK(big.eps_sir > 1);

  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    const auto ri = oracle::random_instance(rng, 1, 3);
    std::vector<Rational> pr;
    for (const auto& t : ri.transmitters()) {
      Rational v = oracle::random_rational(rng, 20, 9);
      pr.push_back(v < 0 ? Rational(0) : (v > t.p_max ? t.p_max : v));
    }
    for (std::size_t s = 0; s < 3; ++s) {
      const auto vp = wnd::sir_violation_from_linear(ri, pr, wnd::ReceiverIndex{0}, wnd::TransmitterIndex{s});
      Rational interference = 0;
      for (std::size_t t = 0; t < 3; ++t) {
        if (t != s) interference += ri.fading_matrix()[0][t] * pr[t];
      }
      CHECK(vp.eps_sir * (ri.receivers()[0].noise + interference) == vp.eps_linear);
      CHECK(sgn(vp.eps_sir) == sgn(vp.eps_linear));
      CHECK(vp.eps_sir == ri.receivers()[0].delta - oracle::sir_formula(ri, pr, 0, s));
    }
  }
}
