#include "wnd/mip_bnb.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>
#include <limits>

#include "wnd/errors.hpp"
#include "wnd/lp_exact.hpp"
#include "wnd/lp_fp.hpp"
#include "wnd/tolerance.hpp"

namespace wnd {

std::vector<Rational> Solution::exact_power() const {
  if (power_exact) return *power_exact;
  return from_doubles(power);
}

Rational assignment_revenue(const Instance& inst, const Assignment& asg) {
  Rational total = 0;
  for (const auto& [r, t] : asg.served_pairs()) total += inst.receiver(r).revenue;
  return total;
}

const char* to_string(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal:
      return "optimal";
    case MipStatus::kFeasibleLimit:
      return "feasible_limit";
    case MipStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

namespace {

struct Fixing {
  std::size_t var;
  double value;
};

struct Node {
  std::vector<Fixing> fixings;
  Basis basis;
  double bound = 0;
  std::size_t depth = 0;
  std::size_t order = 0;
};

// Open nodes. Before the first incumbent the deepest (then newest) node is
// taken; afterwards the best bound (then oldest).
class OpenSet {
 public:
  bool empty() const { return nodes_.empty(); }
  void push(Node node) { nodes_.push_back(std::move(node)); }

  Node pop(bool depth_first) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      const Node& a = nodes_[i];
      const Node& b = nodes_[best];
      const bool better = depth_first ? (a.depth > b.depth || (a.depth == b.depth && a.order > b.order))
                                      : (a.bound > b.bound || (a.bound == b.bound && a.order < b.order));
      if (better) best = i;
    }
    Node out = std::move(nodes_[best]);
    nodes_[best] = std::move(nodes_.back());
    nodes_.pop_back();
    return out;
  }

  double max_bound() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& n : nodes_) m = std::max(m, n.bound);
    return m;
  }

 private:
  std::vector<Node> nodes_;
};

class BranchAndBound {
 public:
  BranchAndBound(const MipProblem& mip, const BnbOptions& options)
      : mip_(mip), options_(options), base_(to_fp_model(mip.lp)) {
    layout_ = *mip.layout;
    revenue_.assign(mip.lp.num_variables(), Rational(0));
    for (const auto& [j, c] : mip.lp.objective.coefficients) revenue_[j] = c;
    fp_.eps = options.eps;
    for (std::size_t r = 0; r < layout_.num_receivers; ++r) {
      double best = 0;
      for (std::size_t t = 0; t < layout_.num_transmitters; ++t) {
        best = std::max(best, to_double_nearest(revenue_[layout_.assign_var(r, t)]));
      }
      trivial_bound_ += best;
    }
  }

  MipResult run() {
    const auto start = std::chrono::steady_clock::now();
    MipResult result;
    // The empty assignment with zero power is always feasible.
    result.solution = empty_solution();
    incumbent_value_ = 0;

    OpenSet open;
    std::optional<Node> current = Node{};
    current->bound = std::numeric_limits<double>::infinity();
    bool limit_hit = false;

    while (current || !open.empty()) {
      if (!current) {
        current = open.pop(!found_incumbent_);
      }
      if (current->depth > 0 && prunable(current->bound)) {
        current.reset();
        continue;
      }
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (result.nodes >= options_.node_limit || elapsed >= options_.time_limit) {
        limit_hit = true;
        open.push(std::move(*current));
        current.reset();
        break;
      }
      ++result.nodes;
      Node node = std::move(*current);
      current.reset();

      FpModel model = base_;
      for (const auto& f : node.fixings) {
        model.col_lower[f.var] = f.value;
        model.col_upper[f.var] = f.value;
      }
      auto lp = solve_lp_fp(model, fp_, node.basis.empty() ? nullptr : &node.basis);
      if (lp.status == FpStatus::kInfeasible) continue;
      if (lp.status != FpStatus::kOptimal) {
        // Unbounded cannot occur on a bounded model; iteration limit: give up
        // on this subtree but remember the tree is no longer complete.
        limit_hit = true;
        continue;
      }
      if (node.depth == 0) root_bound_ = lp.objective;
      if (prunable(lp.objective)) continue;

      const auto branch_var = most_fractional(lp.point);
      if (node.depth == 0 && branch_var) {
        rounding_heuristic(lp, result);
        if (prunable(lp.objective)) continue;
      }
      if (!branch_var) {
        auto children = integral_node(node, lp, result);
        for (std::size_t k = 0; k < children.size(); ++k) {
          children[k].order = next_order_++;
          if (k == 0) {
            current = std::move(children[k]);
          } else {
            open.push(std::move(children[k]));
          }
        }
        continue;
      }

      const std::size_t j = *branch_var;
      const double frac = lp.point[j];
      const double preferred = frac >= 0.5 ? 1.0 : 0.0;
      for (double value : {preferred, 1.0 - preferred}) {
        Node child;
        child.fixings = node.fixings;
        child.fixings.push_back({j, value});
        child.basis = lp.basis;
        child.bound = lp.objective;
        child.depth = node.depth + 1;
        child.order = next_order_++;
        if (value == preferred) {
          current = std::move(child);
        } else {
          open.push(std::move(child));
        }
      }
    }

    double open_bound = -std::numeric_limits<double>::infinity();
    if (current) open_bound = std::max(open_bound, current->bound);
    if (!open.empty()) open_bound = std::max(open_bound, open.max_bound());
    const double inc = to_double_nearest(incumbent_value_);
    result.dual_bound = inc;
    if (limit_hit) {
      result.dual_bound = std::max(inc, std::isfinite(open_bound) ? open_bound : root_bound());
    }
    result.status = limit_hit ? MipStatus::kFeasibleLimit : MipStatus::kOptimal;
    return result;
  }

 private:
  double root_bound() const { return root_bound_ ? *root_bound_ : trivial_bound_; }

  bool prunable(double bound) const {
    const double inc = to_double_nearest(incumbent_value_);
    return bound <= inc + 1e-9 * std::max(1.0, std::fabs(inc));
  }

  std::optional<std::size_t> most_fractional(const std::vector<double>& x) const {
    std::optional<std::size_t> best;
    double best_frac = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!mip_.is_binary[j]) continue;
      const double f = std::min(x[j] - std::floor(x[j]), std::ceil(x[j]) - x[j]);
      if (f <= options_.integrality_tol) continue;
      if (!best || f > best_frac) {
        best = j;
        best_frac = f;
      }
    }
    return best;
  }

  Solution empty_solution() const {
    Solution s;
    s.power.assign(layout_.num_transmitters, 0.0);
    s.power_exact = std::vector<Rational>(layout_.num_transmitters, Rational(0));
    s.assignment = Assignment(layout_.num_receivers);
    s.objective_claimed = 0;
    return s;
  }

  Rational revenue_of(const Assignment& asg) const {
    Rational total = 0;
    for (const auto& [r, t] : asg.served_pairs()) total += revenue_[layout_.assign_var(r.value, t.value)];
    return total;
  }

  // Greedy rounding of the root relaxation: receivers in decreasing order of
  // their fractional service, each tried on its two most used transmitters,
  // kept if the partial assignment stays feasible under the incumbent rule.
  void rounding_heuristic(const FpLpResult& root, MipResult& result) {
    const std::size_t nr = layout_.num_receivers;
    const std::size_t nt = layout_.num_transmitters;
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t r = 0; r < nr; ++r) {
      double served = 0;
      for (std::size_t t = 0; t < nt; ++t) served += root.point[layout_.assign_var(r, t)];
      if (served > options_.integrality_tol) order.emplace_back(-served, r);
    }
    std::stable_sort(order.begin(), order.end());

    FpModel model = base_;
    for (std::size_t j = 0; j < model.num_vars; ++j) {
      if (mip_.is_binary[j]) model.col_lower[j] = model.col_upper[j] = 0.0;
    }
    Assignment asg(nr);
    Basis basis;
    std::vector<double> point;
    for (const auto& [neg, r] : order) {
      std::vector<std::size_t> servers(nt);
      for (std::size_t t = 0; t < nt; ++t) servers[t] = t;
      std::stable_sort(servers.begin(), servers.end(), [&](std::size_t a, std::size_t b) {
        return root.point[layout_.assign_var(r, a)] > root.point[layout_.assign_var(r, b)];
      });
      for (std::size_t k = 0; k < std::min<std::size_t>(2, nt); ++k) {
        const std::size_t var = layout_.assign_var(r, servers[k]);
        if (root.point[var] <= options_.integrality_tol) break;
        model.col_lower[var] = model.col_upper[var] = 1.0;
        auto lp = solve_lp_fp(model, fp_, basis.empty() ? nullptr : &basis);
        bool ok = lp.status == FpStatus::kOptimal;
        for (std::size_t i = 0; ok && i < mip_.lp.rows.size(); ++i) {
          ok = is_row_satisfied(mip_.lp.rows[i], lp.point, options_.eps);
        }
        if (ok) {
          asg.assign(ReceiverIndex{r}, TransmitterIndex{servers[k]});
          basis = std::move(lp.basis);
          point = std::move(lp.point);
          break;
        }
        model.col_lower[var] = model.col_upper[var] = 0.0;
      }
    }
    if (point.empty()) return;
    const Rational value = revenue_of(asg);
    if (value <= incumbent_value_) return;

    Solution s;
    if (options_.verification_mode) {
      const auto exact = solve_lp_exact(fix_assignment(mip_, asg));
      if (exact.status != ExactStatus::kFeasible) return;
      s.power = to_doubles(exact.point);
      s.power_exact = exact.point;
    } else {
      s.power.assign(point.begin(), point.begin() + static_cast<std::ptrdiff_t>(layout_.num_transmitters));
    }
    s.assignment = std::move(asg);
    s.objective_claimed = value;
    result.solution = std::move(s);
    incumbent_value_ = value;
    found_incumbent_ = true;
  }

  // Handles an LP-integral node; returns no-good children when the
  // assignment is rejected in verification mode.
  std::vector<Node> integral_node(const Node& node, const FpLpResult& lp, MipResult& result) {
    Assignment asg = assignment_from_binaries(mip_, lp.point);
    const Rational value = revenue_of(asg);
    if (value <= incumbent_value_) return {};

    if (!options_.verification_mode) {
      for (const auto& row : mip_.lp.rows) {
        if (!is_row_satisfied(row, lp.point, options_.eps)) return {};
      }
      Solution s;
      s.power.assign(lp.point.begin(),
                     lp.point.begin() + static_cast<std::ptrdiff_t>(layout_.num_transmitters));
      s.assignment = std::move(asg);
      s.objective_claimed = value;
      result.solution = std::move(s);
      incumbent_value_ = value;
      found_incumbent_ = true;
      return {};
    }

    const LinearProgram fixed = fix_assignment(mip_, asg);
    const auto exact = solve_lp_exact(fixed);
    if (exact.status == ExactStatus::kFeasible) {
      Solution s;
      s.power = to_doubles(exact.point);
      s.power_exact = exact.point;
      s.assignment = std::move(asg);
      s.objective_claimed = value;
      result.solution = std::move(s);
      incumbent_value_ = value;
      found_incumbent_ = true;
      return {};
    }

    // No-good: children x_a1 = 0 | x_a1 = 1, x_a2 = 0 | ...
    std::vector<std::size_t> active;
    for (const auto& [r, t] : asg.served_pairs()) active.push_back(layout_.assign_var(r.value, t.value));
    std::vector<Node> children;
    std::vector<Fixing> prefix = node.fixings;
    for (std::size_t var : active) {
      bool fixed_one = false;
      for (const auto& f : node.fixings) {
        if (f.var == var && f.value == 1.0) fixed_one = true;
      }
      if (!fixed_one) {
        Node child;
        child.fixings = prefix;
        child.fixings.push_back({var, 0.0});
        child.basis = lp.basis;
        child.bound = lp.objective;
        child.depth = node.depth + 1;
        children.push_back(std::move(child));
        prefix.push_back({var, 1.0});
      }
    }
    return children;
  }

  const MipProblem& mip_;
  BnbOptions options_;
  FpModel base_;
  FpOptions fp_;
  SpapLayout layout_;
  std::vector<Rational> revenue_;
  Rational incumbent_value_;
  bool found_incumbent_ = false;
  std::optional<double> root_bound_;
  double trivial_bound_ = 0;
  std::size_t next_order_ = 1;
};

}  // namespace

MipResult solve_spap_bnb(const MipProblem& mip, const BnbOptions& options) {
  if (!mip.layout) throw DomainError("branch-and-bound needs an SPAP model");
  if (!(options.eps > 0)) throw DomainError("tolerance must be positive");
  if (mip.lp.objective.sense != ObjectiveSense::kMaximize) {
    throw DomainError("SPAP objective must be a maximization");
  }
  mip.validate();
  BranchAndBound bnb(mip, options);
  MipResult result = bnb.run();
  auto& prov = result.solution.provenance;
  prov.solver = options.verification_mode ? "bnb-verify" : "bnb";
  prov.eps = options.eps;
  prov.node_limit = options.node_limit;
  prov.time_limit = options.time_limit;
  prov.status = to_string(result.status);
  return result;
}

MipResult brute_force_spap(const Instance& inst, std::size_t max_assignments) {
  const std::size_t nr = inst.num_receivers();
  const std::size_t base = inst.num_transmitters() + 1;
  std::size_t total = 1;
  for (std::size_t r = 0; r < nr; ++r) {
    if (total > max_assignments / base) {
      throw LimitError("brute force refused: more than " + std::to_string(max_assignments) +
                       " assignments");
    }
    total *= base;
  }

  MipResult result;
  result.status = MipStatus::kOptimal;
  result.solution.assignment = Assignment(nr);
  result.solution.power.assign(inst.num_transmitters(), 0.0);
  result.solution.power_exact = std::vector<Rational>(inst.num_transmitters(), Rational(0));
  result.solution.objective_claimed = 0;
  result.solution.provenance.solver = "brute-force";
  result.solution.provenance.status = "optimal";

  // Encoding: digit r (receiver 0 most significant) is 0 for unserved and
  // t + 1 for service by t. Scanned in increasing order; ties keep the first.
  std::vector<std::size_t> digits(nr, 0);
  for (std::size_t code = 0; code < total; ++code) {
    if (code > 0) {
      for (std::size_t k = nr; k-- > 0;) {
        if (++digits[k] < base) break;
        digits[k] = 0;
      }
    }
    Assignment asg(nr);
    Rational revenue = 0;
    for (std::size_t r = 0; r < nr; ++r) {
      if (digits[r] == 0) continue;
      asg.assign(ReceiverIndex{r}, TransmitterIndex{digits[r] - 1});
      revenue += inst.receiver(ReceiverIndex{r}).revenue;
    }
    ++result.nodes;
    if (revenue <= result.solution.objective_claimed) continue;
    const auto exact = solve_lp_exact(build_pap(inst, asg));
    if (exact.status != ExactStatus::kFeasible) continue;
    result.solution.assignment = std::move(asg);
    result.solution.objective_claimed = revenue;
    result.solution.power_exact = exact.point;
    result.solution.power = to_doubles(exact.point);
  }
  result.dual_bound = to_double_nearest(result.solution.objective_claimed);
  return result;
}

}  // namespace wnd
