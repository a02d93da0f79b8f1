#include "wnd/lp_refine.hpp"

#include <cmath>
#include <limits>

#include "wnd/errors.hpp"
#include "wnd/lp_exact.hpp"
#include "wnd/lp_fp.hpp"

namespace wnd {

const char* to_string(RefineStatus status) {
  switch (status) {
    case RefineStatus::kSuccess:
      return "success";
    case RefineStatus::kRoundLimit:
      return "round_limit";
    case RefineStatus::kFpFailure:
      return "fp_failure";
  }
  return "unknown";
}

namespace {

// Largest power of two not above value (value > 0).
Rational power_of_two_below(const Rational& value) {
  // floor(log2) via the integer parts of numerator and denominator.
  const long num_bits = static_cast<long>(mpz_sizeinbase(value.get_num_mpz_t(), 2));
  const long den_bits = static_cast<long>(mpz_sizeinbase(value.get_den_mpz_t(), 2));
  long e = num_bits - den_bits;
  auto pow2 = [](long k) {
    Rational q = 1;
    if (k >= 0) {
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(k));
    } else {
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-k));
    }
    return q;
  };
  Rational p = pow2(e);
  while (p > value) p = pow2(--e);
  while (pow2(e + 1) <= value) p = pow2(++e);
  return p;
}

// Residual problem in the correction c = Delta (y - x).
FpModel correction_model(const FpModel& base, const LinearProgram& lp,
                         const std::vector<Rational>& x, const Rational& delta) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  FpModel model = base;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const auto& v = lp.variables[j];
    model.col_lower[j] = v.lower ? to_double_nearest(delta * (*v.lower - x[j])) : -kInf;
    model.col_upper[j] = v.upper ? to_double_nearest(delta * (*v.upper - x[j])) : kInf;
  }
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const auto& row = lp.rows[i];
    const double r = to_double_nearest(delta * (row.rhs - row.activity(x)));
    switch (row.sense) {
      case Sense::kGreaterEqual:
        model.row_lower[i] = r;
        break;
      case Sense::kLessEqual:
        model.row_upper[i] = r;
        break;
      case Sense::kEqual:
        model.row_lower[i] = r;
        model.row_upper[i] = r;
        break;
    }
  }
  return model;
}

}  // namespace

RefineResult refine_lp(const LinearProgram& lp, const Rational& tol, std::size_t max_rounds,
                       const RefineOptions& options) {
  if (sgn(tol) <= 0) throw DomainError("refinement tolerance must be positive");
  lp.validate();

  RefineResult result;
  const FpModel base = to_fp_model(lp);
  FpOptions fp;
  fp.eps = options.fp_eps;
  fp.iteration_limit = options.iteration_limit;

  auto first = solve_lp_fp(base, fp);
  result.rounds = 1;
  if (first.status != FpStatus::kOptimal) {
    result.status = RefineStatus::kFpFailure;
    result.message = std::string("initial floating-point solve: ") + to_string(first.status);
    result.point = from_doubles(first.point);
    result.max_violation = check_point_exact(lp, result.point).max_violation();
    result.per_round_violations.push_back(result.max_violation);
    return result;
  }
  result.point = from_doubles(first.point);
  Basis basis = std::move(first.basis);
  result.max_violation = check_point_exact(lp, result.point).max_violation();
  result.per_round_violations.push_back(result.max_violation);

  const Rational growth_cap = rational_from_double(options.scale_growth_cap);
  Rational delta = 1;
  while (result.max_violation > tol) {
    if (result.rounds >= max_rounds) {
      result.status = RefineStatus::kRoundLimit;
      result.message = "round limit reached";
      return result;
    }
    Rational next = power_of_two_below(1 / result.max_violation);
    const Rational limit = delta * growth_cap;
    if (next > limit) next = power_of_two_below(limit);
    if (next < delta) next = delta;
    delta = next;
    result.scale_factors.push_back(delta);

    auto correction = solve_lp_fp(correction_model(base, lp, result.point, delta), fp, &basis);
    ++result.rounds;
    if (correction.status != FpStatus::kOptimal) {
      result.status = RefineStatus::kFpFailure;
      result.message = std::string("correction solve in round ") + std::to_string(result.rounds) +
                       ": " + to_string(correction.status);
      return result;
    }
    for (std::size_t j = 0; j < result.point.size(); ++j) {
      if (correction.point[j] != 0) result.point[j] += rational_from_double(correction.point[j]) / delta;
    }
    basis = std::move(correction.basis);
    result.max_violation = check_point_exact(lp, result.point).max_violation();
    result.per_round_violations.push_back(result.max_violation);
  }
  result.status = RefineStatus::kSuccess;
  return result;
}

}  // namespace wnd
