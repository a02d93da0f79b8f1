#pragma once

// Bounded-variable primal simplex on  A x - r = 0,  l <= (x, r) <= u,
// shared by the double-precision and the exact rational solver.
//
// Variables 0..n-1 are structural, n..n+m-1 are row activities (column -e_i).
// The basis inverse is kept dense and explicit; the double instantiation
// re-inverts periodically, the rational one never needs to.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "wnd/lp_fp.hpp"
#include "wnd/rational.hpp"

namespace wnd::detail {

template <typename T>
struct NumericPolicy;

template <>
struct NumericPolicy<double> {
  static constexpr bool kExact = false;
  static int sign(double v) { return (v > 0) - (v < 0); }
  static double magnitude(double v) { return std::fabs(v); }
};

template <>
struct NumericPolicy<Rational> {
  static constexpr bool kExact = true;
  static int sign(const Rational& v) { return sgn(v); }
  static double magnitude(const Rational& v) { return std::fabs(v.get_d()); }
};

template <typename T>
struct KernelData {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> col_start;
  std::vector<std::size_t> row_index;
  std::vector<T> value;
  // n + m entries each.
  std::vector<T> lower, upper;
  std::vector<char> has_lower, has_upper;
  std::vector<T> cost;  // n entries, minimization form
};

struct KernelSettings {
  double primal_tol = 0;
  double dual_tol = 0;
  double pivot_tol = 0;
  std::size_t iteration_limit = 100000;
  std::size_t refactor_interval = 0;  // 0 = never
  std::size_t degeneracy_streak = 50;
  bool bland_only = false;
  bool feasibility_only = false;
  bool harris = false;
};

enum class KernelStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

template <typename T>
struct KernelResult {
  KernelStatus status = KernelStatus::kIterationLimit;
  std::vector<T> x;  // n + m values
  Basis basis;
  std::vector<T> farkas_duals;  // m entries when infeasible (exact only)
  std::size_t iterations = 0;
  bool warm_start_used = false;
};

template <typename T>
class BoundedSimplex {
  using P = NumericPolicy<T>;

 public:
  BoundedSimplex(const KernelData<T>& data, const KernelSettings& settings)
      : d_(data), s_(settings), total_(data.n + data.m) {}

  KernelResult<T> run(const Basis* warm) {
    KernelResult<T> result;
    result.warm_start_used = warm != nullptr && try_warm_start(*warm);
    if (!result.warm_start_used) cold_start();
    compute_primal();

    bool bland = s_.bland_only;
    std::size_t degenerate = 0;
    std::size_t since_refactor = 0;
    std::size_t final_checks = 0;

    while (true) {
      if (result.iterations >= s_.iteration_limit) {
        result.status = KernelStatus::kIterationLimit;
        break;
      }
      if (!P::kExact && s_.refactor_interval > 0 && since_refactor >= s_.refactor_interval) {
        if (!refactor()) break;
        since_refactor = 0;
      }

      const bool phase_one = compute_phase_costs();
      if (!phase_one && s_.feasibility_only) {
        if (finish_check(since_refactor, final_checks)) continue;
        result.status = KernelStatus::kOptimal;
        break;
      }
      compute_duals();
      const auto entering = price(phase_one, bland);
      if (!entering) {
        if (finish_check(since_refactor, final_checks)) continue;
        if (phase_one) {
          result.status = KernelStatus::kInfeasible;
          result.farkas_duals = duals_;
        } else {
          result.status = KernelStatus::kOptimal;
        }
        break;
      }
      const auto [q, direction] = *entering;
      ftran(q);
      const auto step = ratio_test(q, direction, phase_one, bland);
      if (!step.has_value()) {
        if (phase_one) {
          // Cannot happen in exact arithmetic; numerically, start over.
          if (!refactor()) break;
          since_refactor = 0;
          bland = true;
          ++result.iterations;
          continue;
        }
        result.status = KernelStatus::kUnbounded;
        break;
      }
      apply(q, direction, *step);
      ++result.iterations;
      ++since_refactor;
      if (is_zero_step(step->theta)) {
        if (++degenerate >= s_.degeneracy_streak) bland = true;
      } else {
        degenerate = 0;
      }
    }

    result.x = x_;
    result.basis = status_;
    return result;
  }

 private:
  struct Step {
    T theta;
    std::optional<std::size_t> leaving_pos;  // nullopt: entering bound flip
    bool to_upper = false;                   // leaving variable's final bound
  };

  // Column entries of variable j.
  template <typename F>
  void for_column(std::size_t j, F&& f) const {
    if (j < d_.n) {
      for (std::size_t k = d_.col_start[j]; k < d_.col_start[j + 1]; ++k) f(d_.row_index[k], d_.value[k]);
    } else {
      static const T minus_one = T(-1);
      f(j - d_.n, minus_one);
    }
  }

  bool is_fixed(std::size_t j) const {
    return d_.has_lower[j] && d_.has_upper[j] && d_.lower[j] == d_.upper[j];
  }

  bool is_zero_step(const T& theta) const {
    if constexpr (P::kExact) {
      return P::sign(theta) == 0;
    } else {
      return theta <= 1e-12;
    }
  }

  void set_nonbasic_value(std::size_t j) {
    switch (status_[j]) {
      case BasisStatus::kAtLower:
        x_[j] = d_.lower[j];
        break;
      case BasisStatus::kAtUpper:
        x_[j] = d_.upper[j];
        break;
      default:
        x_[j] = T(0);
        break;
    }
  }

  BasisStatus default_nonbasic(std::size_t j) const {
    if (d_.has_lower[j]) return BasisStatus::kAtLower;
    if (d_.has_upper[j]) return BasisStatus::kAtUpper;
    return BasisStatus::kFree;
  }

  void cold_start() {
    status_.assign(total_, BasisStatus::kBasic);
    x_.assign(total_, T(0));
    head_.resize(d_.m);
    pos_.assign(total_, kNotBasic);
    for (std::size_t j = 0; j < d_.n; ++j) {
      status_[j] = default_nonbasic(j);
      set_nonbasic_value(j);
    }
    for (std::size_t i = 0; i < d_.m; ++i) {
      head_[i] = d_.n + i;
      pos_[d_.n + i] = i;
    }
    binv_.assign(d_.m * d_.m, T(0));
    for (std::size_t i = 0; i < d_.m; ++i) binv_[i * d_.m + i] = T(-1);
  }

  bool try_warm_start(const Basis& warm) {
    if (warm.size() != total_) return false;
    std::size_t basic = 0;
    for (auto st : warm) basic += st == BasisStatus::kBasic;
    if (basic != d_.m) return false;

    status_ = warm;
    x_.assign(total_, T(0));
    head_.clear();
    pos_.assign(total_, kNotBasic);
    for (std::size_t j = 0; j < total_; ++j) {
      if (status_[j] == BasisStatus::kBasic) {
        pos_[j] = head_.size();
        head_.push_back(j);
        continue;
      }
      // Repair statuses that point at infinite bounds.
      if (status_[j] == BasisStatus::kAtLower && !d_.has_lower[j]) status_[j] = default_nonbasic(j);
      if (status_[j] == BasisStatus::kAtUpper && !d_.has_upper[j]) status_[j] = default_nonbasic(j);
      if (status_[j] == BasisStatus::kFree && (d_.has_lower[j] || d_.has_upper[j])) {
        status_[j] = default_nonbasic(j);
      }
      set_nonbasic_value(j);
    }
    return invert();
  }

  // Gauss-Jordan on the basis matrix; false if singular.
  bool invert() {
    const std::size_t m = d_.m;
    std::vector<T> b(m * m, T(0));
    for (std::size_t i = 0; i < m; ++i) {
      for_column(head_[i], [&](std::size_t row, const T& v) { b[row * m + i] = v; });
    }
    std::vector<T> inv(m * m, T(0));
    for (std::size_t i = 0; i < m; ++i) inv[i * m + i] = T(1);

    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = m;
      double best = 0;
      for (std::size_t row = col; row < m; ++row) {
        if (P::sign(b[row * m + col]) == 0) continue;
        const double mag = P::magnitude(b[row * m + col]);
        if constexpr (P::kExact) {
          piv = row;
          break;
        } else {
          if (mag > best) {
            best = mag;
            piv = row;
          }
        }
      }
      if (piv == m) return false;
      if constexpr (!P::kExact) {
        if (best < 1e-14) return false;
      }
      if (piv != col) {
        for (std::size_t k = 0; k < m; ++k) {
          std::swap(b[piv * m + k], b[col * m + k]);
          std::swap(inv[piv * m + k], inv[col * m + k]);
        }
      }
      const T pivot = b[col * m + col];
      for (std::size_t k = 0; k < m; ++k) {
        if (P::sign(b[col * m + k]) != 0) b[col * m + k] /= pivot;
        if (P::sign(inv[col * m + k]) != 0) inv[col * m + k] /= pivot;
      }
      for (std::size_t row = 0; row < m; ++row) {
        if (row == col) continue;
        const T factor = b[row * m + col];
        if (P::sign(factor) == 0) continue;
        for (std::size_t k = 0; k < m; ++k) {
          if (P::sign(b[col * m + k]) != 0) b[row * m + k] -= factor * b[col * m + k];
          if (P::sign(inv[col * m + k]) != 0) inv[row * m + k] -= factor * inv[col * m + k];
        }
      }
    }
    // Row i of b^{-1} corresponds to basis position i after the column
    // elimination above; inv now satisfies inv * B = I.
    binv_ = std::move(inv);
    return true;
  }

  bool refactor() {
    if (!invert()) {
      cold_start();
    }
    compute_primal();
    return true;
  }

  // x_B = -B^{-1} N x_N.
  void compute_primal() {
    const std::size_t m = d_.m;
    std::vector<T> rhs(m, T(0));
    for (std::size_t j = 0; j < total_; ++j) {
      if (status_[j] == BasisStatus::kBasic || P::sign(x_[j]) == 0) continue;
      for_column(j, [&](std::size_t row, const T& v) { rhs[row] -= v * x_[j]; });
    }
    for (std::size_t i = 0; i < m; ++i) {
      T sum = T(0);
      for (std::size_t k = 0; k < m; ++k) {
        if (P::sign(rhs[k]) != 0 && P::sign(binv_[i * m + k]) != 0) sum += binv_[i * m + k] * rhs[k];
      }
      x_[head_[i]] = sum;
    }
  }

  bool below_lower(std::size_t j) const {
    if (!d_.has_lower[j]) return false;
    if constexpr (P::kExact) {
      return x_[j] < d_.lower[j];
    } else {
      return x_[j] < d_.lower[j] - s_.primal_tol;
    }
  }

  bool above_upper(std::size_t j) const {
    if (!d_.has_upper[j]) return false;
    if constexpr (P::kExact) {
      return x_[j] > d_.upper[j];
    } else {
      return x_[j] > d_.upper[j] + s_.primal_tol;
    }
  }

  // Phase-1 costs for infeasible basics; returns true if any exist.
  bool compute_phase_costs() {
    basic_cost_.assign(d_.m, T(0));
    bool infeasible = false;
    for (std::size_t i = 0; i < d_.m; ++i) {
      const std::size_t j = head_[i];
      if (below_lower(j)) {
        basic_cost_[i] = T(-1);
        infeasible = true;
      } else if (above_upper(j)) {
        basic_cost_[i] = T(1);
        infeasible = true;
      }
    }
    phase_one_ = infeasible;
    if (!infeasible) {
      for (std::size_t i = 0; i < d_.m; ++i) {
        basic_cost_[i] = head_[i] < d_.n ? d_.cost[head_[i]] : T(0);
      }
    }
    return infeasible;
  }

  void compute_duals() {
    const std::size_t m = d_.m;
    duals_.assign(m, T(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (P::sign(basic_cost_[i]) == 0) continue;
      for (std::size_t k = 0; k < m; ++k) {
        if (P::sign(binv_[i * m + k]) != 0) duals_[k] += basic_cost_[i] * binv_[i * m + k];
      }
    }
  }

  T reduced_cost(std::size_t j) const {
    T dj = (!phase_one_ && j < d_.n) ? d_.cost[j] : T(0);
    for_column(j, [&](std::size_t row, const T& v) {
      if (P::sign(duals_[row]) != 0) dj -= duals_[row] * v;
    });
    return dj;
  }

  bool attractive_negative(const T& dj) const {
    if constexpr (P::kExact) {
      return P::sign(dj) < 0;
    } else {
      return dj < -s_.dual_tol;
    }
  }

  bool attractive_positive(const T& dj) const {
    if constexpr (P::kExact) {
      return P::sign(dj) > 0;
    } else {
      return dj > s_.dual_tol;
    }
  }

  // (entering variable, direction +1/-1) or nullopt at optimality.
  std::optional<std::pair<std::size_t, int>> price(bool /*phase_one*/, bool bland) const {
    std::optional<std::pair<std::size_t, int>> best;
    double best_mag = 0;
    for (std::size_t j = 0; j < total_; ++j) {
      const auto st = status_[j];
      if (st == BasisStatus::kBasic || is_fixed(j)) continue;
      const T dj = reduced_cost(j);
      int direction = 0;
      if (st == BasisStatus::kAtLower && attractive_negative(dj)) direction = 1;
      if (st == BasisStatus::kAtUpper && attractive_positive(dj)) direction = -1;
      if (st == BasisStatus::kFree) {
        if (attractive_negative(dj)) direction = 1;
        if (attractive_positive(dj)) direction = -1;
      }
      if (direction == 0) continue;
      if (bland) return std::make_pair(j, direction);
      const double mag = P::magnitude(dj);
      if (!best || mag > best_mag) {
        best = std::make_pair(j, direction);
        best_mag = mag;
      }
    }
    return best;
  }

  void ftran(std::size_t q) {
    const std::size_t m = d_.m;
    alpha_.assign(m, T(0));
    for_column(q, [&](std::size_t row, const T& v) {
      for (std::size_t i = 0; i < m; ++i) {
        if (P::sign(binv_[i * m + row]) != 0) alpha_[i] += binv_[i * m + row] * v;
      }
    });
  }

  bool usable_pivot(const T& a) const {
    if constexpr (P::kExact) {
      return P::sign(a) != 0;
    } else {
      return std::fabs(a) > s_.pivot_tol;
    }
  }

  struct Candidate {
    std::size_t pos;
    T exact_ratio;
    T relaxed_ratio;
    bool to_upper;
  };

  std::optional<Step> ratio_test(std::size_t q, int direction, bool phase_one, bool bland) {
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < d_.m; ++i) {
      if (!usable_pivot(alpha_[i])) continue;
      const std::size_t j = head_[i];
      // x_j moves by rate * theta.
      const T rate = direction > 0 ? T(-alpha_[i]) : T(alpha_[i]);
      const int rs = P::sign(rate);
      const T speed = rs < 0 ? T(-rate) : rate;
      if (rs < 0) {
        if (phase_one && above_upper(j)) {
          const T r = (x_[j] - d_.upper[j]) / speed;
          cands.push_back({i, r, r, true});
        } else if (d_.has_lower[j] && !below_lower(j)) {
          T r = (x_[j] - d_.lower[j]) / speed;
          T relaxed = r;
          if constexpr (!P::kExact) relaxed = (x_[j] - d_.lower[j] + s_.primal_tol) / speed;
          cands.push_back({i, r, relaxed, false});
        }
      } else {
        if (phase_one && below_lower(j)) {
          const T r = (d_.lower[j] - x_[j]) / speed;
          cands.push_back({i, r, r, false});
        } else if (d_.has_upper[j] && !above_upper(j)) {
          T r = (d_.upper[j] - x_[j]) / speed;
          T relaxed = r;
          if constexpr (!P::kExact) relaxed = (d_.upper[j] - x_[j] + s_.primal_tol) / speed;
          cands.push_back({i, r, relaxed, true});
        }
      }
    }

    std::optional<T> flip_range;
    if (d_.has_lower[q] && d_.has_upper[q]) flip_range = d_.upper[q] - d_.lower[q];

    if (cands.empty() && !flip_range) return std::nullopt;

    if (s_.harris && !bland) {
      std::optional<T> theta_max;
      for (const auto& c : cands) {
        if (!theta_max || c.relaxed_ratio < *theta_max) theta_max = c.relaxed_ratio;
      }
      if (flip_range && (!theta_max || *flip_range <= *theta_max)) {
        return Step{*flip_range, std::nullopt, false};
      }
      const Candidate* chosen = nullptr;
      double chosen_mag = -1;
      for (const auto& c : cands) {
        if (c.exact_ratio > *theta_max) continue;
        const double mag = P::magnitude(alpha_[c.pos]);
        if (mag > chosen_mag ||
            (mag == chosen_mag && head_[c.pos] < head_[chosen->pos])) {
          chosen = &c;
          chosen_mag = mag;
        }
      }
      T theta = chosen->exact_ratio;
      if (P::sign(theta) < 0) theta = T(0);
      return Step{theta, chosen->pos, chosen->to_upper};
    }

    // Textbook minimum ratio, ties to the lowest variable index.
    const Candidate* chosen = nullptr;
    for (const auto& c : cands) {
      T r = c.exact_ratio;
      if (P::sign(r) < 0) r = T(0);
      if (!chosen) {
        chosen = &c;
        continue;
      }
      T best = chosen->exact_ratio;
      if (P::sign(best) < 0) best = T(0);
      bool better = false;
      if constexpr (P::kExact) {
        better = r < best || (r == best && head_[c.pos] < head_[chosen->pos]);
      } else {
        const double tie = 1e-12 * std::max(1.0, std::fabs(best));
        better = r < best - tie || (std::fabs(r - best) <= tie && head_[c.pos] < head_[chosen->pos]);
      }
      if (better) chosen = &c;
    }
    if (flip_range) {
      if (!chosen) return Step{*flip_range, std::nullopt, false};
      T best = chosen->exact_ratio;
      if (P::sign(best) < 0) best = T(0);
      if (*flip_range <= best) return Step{*flip_range, std::nullopt, false};
    }
    T theta = chosen->exact_ratio;
    if (P::sign(theta) < 0) theta = T(0);
    return Step{theta, chosen->pos, chosen->to_upper};
  }

  void apply(std::size_t q, int direction, const Step& step) {
    const std::size_t m = d_.m;
    if (P::sign(step.theta) != 0) {
      if (direction > 0) {
        x_[q] += step.theta;
      } else {
        x_[q] -= step.theta;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (P::sign(alpha_[i]) == 0) continue;
        if (direction > 0) {
          x_[head_[i]] -= alpha_[i] * step.theta;
        } else {
          x_[head_[i]] += alpha_[i] * step.theta;
        }
      }
    }

    if (!step.leaving_pos) {
      status_[q] = direction > 0 ? BasisStatus::kAtUpper : BasisStatus::kAtLower;
      set_nonbasic_value(q);
      return;
    }

    const std::size_t r = *step.leaving_pos;
    const std::size_t leaving = head_[r];
    status_[leaving] = step.to_upper ? BasisStatus::kAtUpper : BasisStatus::kAtLower;
    if (is_fixed(leaving)) status_[leaving] = BasisStatus::kAtLower;
    set_nonbasic_value(leaving);
    pos_[leaving] = kNotBasic;

    status_[q] = BasisStatus::kBasic;
    head_[r] = q;
    pos_[q] = r;

    const T pivot = alpha_[r];
    for (std::size_t k = 0; k < m; ++k) {
      if (P::sign(binv_[r * m + k]) != 0) binv_[r * m + k] /= pivot;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || P::sign(alpha_[i]) == 0) continue;
      const T factor = alpha_[i];
      for (std::size_t k = 0; k < m; ++k) {
        if (P::sign(binv_[r * m + k]) != 0) binv_[i * m + k] -= factor * binv_[r * m + k];
      }
    }
  }

  // Before declaring a verdict in floating point, re-invert once and
  // recompute the basic solution; returns true to keep iterating.
  bool finish_check(std::size_t& since_refactor, std::size_t& final_checks) {
    if constexpr (P::kExact) {
      return false;
    } else {
      if (since_refactor == 0 || final_checks >= 3) return false;
      ++final_checks;
      refactor();
      since_refactor = 0;
      return true;
    }
  }

  static constexpr std::size_t kNotBasic = static_cast<std::size_t>(-1);

  const KernelData<T>& d_;
  const KernelSettings s_;
  const std::size_t total_;

  Basis status_;
  std::vector<std::size_t> head_;
  std::vector<std::size_t> pos_;
  std::vector<T> x_;
  std::vector<T> binv_;
  std::vector<T> basic_cost_;
  std::vector<T> duals_;
  std::vector<T> alpha_;
  bool phase_one_ = false;
};

}  // namespace wnd::detail
