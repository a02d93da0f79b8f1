#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the solvers under test.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "wnd/lp_fp.hpp"
#include "wnd/model.hpp"

namespace oracle {

using wnd::Rational;

// Dense Gaussian elimination; nullopt if singular.
std::optional<std::vector<Rational>> solve_dense(std::vector<std::vector<Rational>> a,
                                                 std::vector<Rational> b);
std::optional<std::vector<double>> solve_dense(std::vector<std::vector<double>> a,
                                               std::vector<double> b);

// Exact feasibility check of x against rows and bounds, recomputed here.
bool satisfies(const wnd::LinearProgram& lp, const std::vector<Rational>& x);

// Largest violation over rows (in their stated form) and bounds; 0 when x
// satisfies everything.
Rational max_violation(const wnd::LinearProgram& lp, const std::vector<Rational>& x);

// Brute-force vertex enumeration. Requires every variable to have at least
// one finite bound, so a nonempty feasible set has a vertex.
struct VertexResult {
  bool feasible = false;
  std::vector<Rational> vertex;
};
VertexResult find_vertex(const wnd::LinearProgram& lp);

// Optimum over all vertices (double arithmetic); requires a bounded box.
// nullopt if infeasible.
std::optional<double> best_vertex_objective(const wnd::LinearProgram& lp);

// a[r][s] p[s] / (N + sum_{t != s} a[r][t] p[t]) from the raw formula.
Rational sir_formula(const wnd::Instance& inst, const std::vector<Rational>& p, std::size_t r,
                     std::size_t s);

// Point described by a basis: nonbasics at their bound, basics solved from
// A x - r = 0. Double arithmetic.
std::optional<std::vector<double>> point_from_basis(const wnd::LinearProgram& lp,
                                                    const wnd::Basis& basis);
std::optional<std::vector<Rational>> exact_point_from_basis(const wnd::LinearProgram& lp,
                                                            const wnd::Basis& basis);

// Random rational with numerator in [-k, k] and denominator in [1, d].
Rational random_rational(std::mt19937_64& rng, int k, int d);

// Random tiny LP: n variables each with at least one finite bound, m rows
// with small integer coefficients and a mix of senses.
wnd::LinearProgram random_lp(std::mt19937_64& rng, std::size_t n, std::size_t m, bool box = false);

// Random rational instance: fading, noise, delta drawn from small rationals
// times powers of ten.
wnd::Instance random_instance(std::mt19937_64& rng, std::size_t receivers, std::size_t transmitters);

// A >= or <= row and a point with |activity| and |rhs| below bound, with the
// violation spread over many magnitudes around 1e-21.
struct SampledRow {
  wnd::LinearRow row;
  std::vector<double> x;
};
SampledRow sample_small_row(std::mt19937_64& rng, double bound = 1e-12);

// The two-transmitter, one-receiver instance used throughout the examples.
wnd::Instance tiny1();

}  // namespace oracle
