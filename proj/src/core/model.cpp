#include "wnd/model.hpp"

#include <algorithm>
#include <set>

#include "wnd/errors.hpp"

namespace wnd {

Instance::Instance(std::vector<Transmitter> transmitters, std::vector<Receiver> receivers,
                   std::vector<std::vector<Rational>> fading,
                   std::map<std::string, std::string> meta)
    : transmitters_(std::move(transmitters)),
      receivers_(std::move(receivers)),
      fading_(std::move(fading)),
      meta_(std::move(meta)) {
  if (transmitters_.empty()) throw DomainError("instance has no transmitters");
  // Callers may hand in unreduced fractions.
  for (auto& t : transmitters_) t.p_max.canonicalize();
  for (auto& r : receivers_) {
    r.noise.canonicalize();
    r.delta.canonicalize();
    r.revenue.canonicalize();
  }
  for (auto& row : fading_) {
    for (auto& a : row) a.canonicalize();
  }
  std::set<std::string> ids;
  for (const auto& t : transmitters_) {
    if (!ids.insert(t.id).second) throw DomainError("duplicate transmitter id " + t.id);
  }
  ids.clear();
  for (const auto& r : receivers_) {
    if (!ids.insert(r.id).second) throw DomainError("duplicate receiver id " + r.id);
  }
  for (const auto& t : transmitters_) {
    if (t.p_max <= 0) throw DomainError("transmitter " + t.id + ": p_max must be positive");
  }
  for (const auto& r : receivers_) {
    if (r.noise <= 0) throw DomainError("receiver " + r.id + ": noise must be positive");
    if (r.delta <= 0) throw DomainError("receiver " + r.id + ": delta must be positive");
    if (r.revenue < 0) throw DomainError("receiver " + r.id + ": revenue must be nonnegative");
  }
  if (fading_.size() != receivers_.size()) {
    throw DomainError("fading matrix has " + std::to_string(fading_.size()) +
                      " rows, expected " + std::to_string(receivers_.size()));
  }
  for (std::size_t r = 0; r < fading_.size(); ++r) {
    if (fading_[r].size() != transmitters_.size()) {
      throw DomainError("fading row " + std::to_string(r) + " has " +
                        std::to_string(fading_[r].size()) + " entries, expected " +
                        std::to_string(transmitters_.size()));
    }
    for (const auto& a : fading_[r]) {
      if (a < 0 || a > 1) throw DomainError("fading coefficient outside [0,1]");
    }
  }
}

void Instance::check_receiver(ReceiverIndex r) const {
  if (r.value >= receivers_.size()) {
    throw DomainError("unknown receiver index " + std::to_string(r.value));
  }
}

void Instance::check_transmitter(TransmitterIndex t) const {
  if (t.value >= transmitters_.size()) {
    throw DomainError("unknown transmitter index " + std::to_string(t.value));
  }
}

const Transmitter& Instance::transmitter(TransmitterIndex t) const {
  check_transmitter(t);
  return transmitters_[t.value];
}

const Receiver& Instance::receiver(ReceiverIndex r) const {
  check_receiver(r);
  return receivers_[r.value];
}

const Rational& Instance::fading(ReceiverIndex r, TransmitterIndex t) const {
  check_receiver(r);
  check_transmitter(t);
  return fading_[r.value][t.value];
}

TransmitterIndex Instance::transmitter_index(std::string_view id) const {
  for (std::size_t t = 0; t < transmitters_.size(); ++t) {
    if (transmitters_[t].id == id) return TransmitterIndex{t};
  }
  throw DomainError("unknown transmitter id \"" + std::string(id) + "\"");
}

ReceiverIndex Instance::receiver_index(std::string_view id) const {
  for (std::size_t r = 0; r < receivers_.size(); ++r) {
    if (receivers_[r].id == id) return ReceiverIndex{r};
  }
  throw DomainError("unknown receiver id \"" + std::string(id) + "\"");
}

std::optional<TransmitterIndex> Assignment::server(ReceiverIndex r) const {
  if (r.value >= server_.size()) {
    throw DomainError("assignment has no receiver " + std::to_string(r.value));
  }
  return server_[r.value];
}

void Assignment::assign(ReceiverIndex r, TransmitterIndex t) {
  if (r.value >= server_.size()) {
    throw DomainError("assignment has no receiver " + std::to_string(r.value));
  }
  auto& slot = server_[r.value];
  if (slot && *slot != t) {
    throw DomainError("receiver " + std::to_string(r.value) +
                      " already served by another transmitter");
  }
  slot = t;
}

void Assignment::unassign(ReceiverIndex r) {
  if (r.value >= server_.size()) {
    throw DomainError("assignment has no receiver " + std::to_string(r.value));
  }
  server_[r.value].reset();
}

std::size_t Assignment::served_count() const {
  return static_cast<std::size_t>(
      std::count_if(server_.begin(), server_.end(), [](const auto& s) { return s.has_value(); }));
}

std::vector<std::pair<ReceiverIndex, TransmitterIndex>> Assignment::served_pairs() const {
  std::vector<std::pair<ReceiverIndex, TransmitterIndex>> out;
  for (std::size_t r = 0; r < server_.size(); ++r) {
    if (server_[r]) out.emplace_back(ReceiverIndex{r}, *server_[r]);
  }
  return out;
}

void LinearRow::normalize() {
  std::sort(coefficients.begin(), coefficients.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseTerms merged;
  merged.reserve(coefficients.size());
  for (auto& [index, value] : coefficients) {
    if (!merged.empty() && merged.back().first == index) {
      merged.back().second += value;
    } else {
      merged.emplace_back(index, std::move(value));
    }
  }
  std::erase_if(merged, [](const auto& term) { return sgn(term.second) == 0; });
  coefficients = std::move(merged);
}

Rational LinearRow::activity(std::span<const Rational> x) const {
  Rational sum = 0;
  for (const auto& [index, value] : coefficients) {
    if (index >= x.size()) throw DomainError("point too short for row");
    sum += value * x[index];
  }
  return sum;
}

std::size_t LinearProgram::num_nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : rows) n += row.coefficients.size();
  return n;
}

void LinearProgram::validate() const {
  for (const auto& v : variables) {
    if (v.lower && v.upper && *v.lower > *v.upper) {
      throw DomainError("variable " + v.name + " has lower > upper");
    }
  }
  for (const auto& row : rows) {
    std::size_t prev = 0;
    bool first = true;
    for (const auto& [index, value] : row.coefficients) {
      if (index >= variables.size()) throw DomainError("row references unknown variable");
      if (!first && index <= prev) throw DomainError("row coefficients not normalized");
      if (sgn(value) == 0) throw DomainError("row stores an explicit zero");
      prev = index;
      first = false;
    }
  }
  for (const auto& [index, value] : objective.coefficients) {
    (void)value;
    if (index >= variables.size()) throw DomainError("objective references unknown variable");
  }
}

void MipProblem::validate() const {
  lp.validate();
  if (is_binary.size() != lp.variables.size()) {
    throw DomainError("binary markers do not match variable count");
  }
  for (std::size_t j = 0; j < is_binary.size(); ++j) {
    if (!is_binary[j]) continue;
    const auto& v = lp.variables[j];
    if (!v.lower || !v.upper || *v.lower != 0 || *v.upper != 1) {
      throw DomainError("binary variable " + v.name + " must have bounds [0,1]");
    }
  }
}

ModelDimensions dimensions(const LinearProgram& lp) {
  return {lp.num_variables(), lp.num_rows(), lp.num_nonzeros()};
}

namespace {

void check_power(const Instance& inst, std::span<const Rational> p) {
  if (p.size() != inst.num_transmitters()) {
    throw DomainError("power vector has " + std::to_string(p.size()) + " entries, expected " +
                      std::to_string(inst.num_transmitters()));
  }
}

}  // namespace

Rational noise_plus_interference(const Instance& inst, std::span<const Rational> p,
                                 ReceiverIndex r, TransmitterIndex s) {
  inst.check_receiver(r);
  inst.check_transmitter(s);
  check_power(inst, p);
  const auto& row = inst.fading_matrix()[r.value];
  Rational denom = inst.receivers()[r.value].noise;
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (t != s.value) denom += row[t] * p[t];
  }
  return denom;
}

Rational sir_value(const Instance& inst, std::span<const Rational> p, ReceiverIndex r,
                   TransmitterIndex s) {
  const Rational denom = noise_plus_interference(inst, p, r, s);
  return inst.fading_matrix()[r.value][s.value] * p[s.value] / denom;
}

LinearRow linearized_sir_row(const Instance& inst, ReceiverIndex r, TransmitterIndex s) {
  inst.check_receiver(r);
  inst.check_transmitter(s);
  const auto& rec = inst.receivers()[r.value];
  const auto& a = inst.fading_matrix()[r.value];
  LinearRow row;
  row.sense = Sense::kGreaterEqual;
  row.rhs = rec.delta * rec.noise;
  row.tag = RowTag{RowKind::kSir, r.value, s.value};
  row.coefficients.reserve(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (sgn(a[t]) == 0) continue;
    if (t == s.value) {
      row.coefficients.emplace_back(t, a[t]);
    } else {
      row.coefficients.emplace_back(t, -rec.delta * a[t]);
    }
  }
  return row;
}

namespace {

std::vector<Variable> power_variables(const Instance& inst) {
  std::vector<Variable> vars;
  vars.reserve(inst.num_transmitters());
  for (const auto& t : inst.transmitters()) {
    vars.push_back(Variable{"p_" + t.id, Rational(0), t.p_max});
  }
  return vars;
}

Objective total_power_objective(std::size_t num_transmitters) {
  Objective obj;
  obj.sense = ObjectiveSense::kMinimize;
  for (std::size_t t = 0; t < num_transmitters; ++t) obj.coefficients.emplace_back(t, Rational(1));
  return obj;
}

}  // namespace

LinearProgram build_pap(const Instance& inst, const Assignment& asg) {
  if (asg.num_receivers() != inst.num_receivers()) {
    throw DomainError("assignment size does not match instance");
  }
  LinearProgram lp;
  lp.variables = power_variables(inst);
  for (const auto& [r, s] : asg.served_pairs()) {
    lp.rows.push_back(linearized_sir_row(inst, r, s));
  }
  lp.objective = total_power_objective(inst.num_transmitters());
  return lp;
}

Rational big_m(const Instance& inst, ReceiverIndex r, TransmitterIndex s) {
  inst.check_receiver(r);
  inst.check_transmitter(s);
  const auto& rec = inst.receivers()[r.value];
  const auto& a = inst.fading_matrix()[r.value];
  Rational worst = rec.noise;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (t != s.value) worst += a[t] * inst.transmitters()[t].p_max;
  }
  return rec.delta * worst;
}

MipProblem build_spap(const Instance& inst) {
  const std::size_t nt = inst.num_transmitters();
  const std::size_t nr = inst.num_receivers();
  const SpapLayout layout{nr, nt};

  MipProblem mip;
  mip.layout = layout;
  auto& lp = mip.lp;
  lp.variables = power_variables(inst);
  lp.variables.reserve(nt + nr * nt);
  for (const auto& rec : inst.receivers()) {
    for (const auto& t : inst.transmitters()) {
      lp.variables.push_back(Variable{"x_" + rec.id + "_" + t.id, Rational(0), Rational(1)});
    }
  }
  mip.is_binary.assign(nt + nr * nt, true);
  std::fill_n(mip.is_binary.begin(), nt, false);

  lp.rows.reserve(nr * nt + nr);
  for (std::size_t r = 0; r < nr; ++r) {
    const auto& rec = inst.receivers()[r];
    const auto& a = inst.fading_matrix()[r];
    // Shared pieces: delta*a_rt and the full worst-case interference.
    std::vector<Rational> scaled(nt);
    Rational full_interference = 0;
    for (std::size_t t = 0; t < nt; ++t) {
      scaled[t] = rec.delta * a[t];
      full_interference += scaled[t] * inst.transmitters()[t].p_max;
    }
    const Rational delta_noise = rec.delta * rec.noise;
    for (std::size_t s = 0; s < nt; ++s) {
      const Rational m = delta_noise + full_interference - scaled[s] * inst.transmitters()[s].p_max;
      LinearRow row;
      row.sense = Sense::kGreaterEqual;
      row.tag = RowTag{RowKind::kSir, r, s};
      row.coefficients.reserve(nt + 1);
      for (std::size_t t = 0; t < nt; ++t) {
        if (sgn(a[t]) == 0) continue;
        row.coefficients.emplace_back(t, t == s ? a[t] : Rational(-scaled[t]));
      }
      // a p_s - delta sum a p + M (1 - x_rs) >= delta N
      row.coefficients.emplace_back(layout.assign_var(r, s), -m);
      row.rhs = delta_noise - m;
      lp.rows.push_back(std::move(row));
    }
  }
  for (std::size_t r = 0; r < nr; ++r) {
    LinearRow gub;
    gub.sense = Sense::kLessEqual;
    gub.rhs = 1;
    gub.tag = RowTag{RowKind::kGub, r, 0};
    for (std::size_t t = 0; t < nt; ++t) gub.coefficients.emplace_back(layout.assign_var(r, t), 1);
    lp.rows.push_back(std::move(gub));
  }

  lp.objective.sense = ObjectiveSense::kMaximize;
  for (std::size_t r = 0; r < nr; ++r) {
    const auto& revenue = inst.receivers()[r].revenue;
    if (sgn(revenue) == 0) continue;
    for (std::size_t t = 0; t < nt; ++t) {
      lp.objective.coefficients.emplace_back(layout.assign_var(r, t), revenue);
    }
  }
  return mip;
}

LinearProgram scale_rows(const LinearProgram& lp, const Rational& factor) {
  if (factor <= 0) throw DomainError("scale factor must be positive");
  LinearProgram out = lp;
  if (factor == 1) return out;
  for (auto& row : out.rows) {
    if (!row.tag || row.tag->kind != RowKind::kSir) continue;
    for (auto& term : row.coefficients) term.second *= factor;
    row.rhs *= factor;
  }
  return out;
}

MipProblem scale_rows(const MipProblem& mip, const Rational& factor) {
  MipProblem out = mip;
  out.lp = scale_rows(mip.lp, factor);
  return out;
}

LinearProgram fix_assignment(const MipProblem& mip, const Assignment& asg) {
  const auto& lp = mip.lp;
  if (mip.is_binary.size() != lp.variables.size()) {
    throw DomainError("binary markers do not match variable count");
  }
  if (mip.layout && asg.num_receivers() != mip.layout->num_receivers) {
    throw DomainError("assignment size does not match model");
  }

  std::vector<Rational> fixed_value(lp.variables.size());
  if (mip.layout) {
    for (const auto& [r, t] : asg.served_pairs()) {
      if (t.value >= mip.layout->num_transmitters) {
        throw DomainError("assignment references unknown transmitter");
      }
      fixed_value[mip.layout->assign_var(r.value, t.value)] = 1;
    }
  }

  // Continuous variables keep their relative order.
  std::vector<std::size_t> new_index(lp.variables.size(), SIZE_MAX);
  LinearProgram out;
  for (std::size_t j = 0; j < lp.variables.size(); ++j) {
    if (mip.is_binary[j]) continue;
    new_index[j] = out.variables.size();
    out.variables.push_back(lp.variables[j]);
  }

  for (const auto& row : lp.rows) {
    LinearRow fixed;
    fixed.sense = row.sense;
    fixed.rhs = row.rhs;
    fixed.tag = row.tag;
    bool deactivated = false;
    for (const auto& [index, value] : row.coefficients) {
      if (mip.is_binary[index]) {
        fixed.rhs -= value * fixed_value[index];
        if (row.tag && row.tag->kind == RowKind::kSir && fixed_value[index] == 0) deactivated = true;
      } else {
        fixed.coefficients.emplace_back(new_index[index], value);
      }
    }
    if (deactivated) continue;
    if (fixed.coefficients.empty()) {
      const bool ok = (fixed.sense == Sense::kGreaterEqual && fixed.rhs <= 0) ||
                      (fixed.sense == Sense::kLessEqual && fixed.rhs >= 0) ||
                      (fixed.sense == Sense::kEqual && fixed.rhs == 0);
      if (!ok) throw DomainError("assignment violates a binary-only constraint");
      continue;
    }
    out.rows.push_back(std::move(fixed));
  }

  if (mip.layout) {
    out.objective = total_power_objective(mip.layout->num_transmitters);
  } else {
    out.objective.sense = lp.objective.sense;
    for (const auto& [index, value] : lp.objective.coefficients) {
      if (!mip.is_binary[index]) out.objective.coefficients.emplace_back(new_index[index], value);
    }
  }
  return out;
}

Assignment assignment_from_binaries(const MipProblem& mip, std::span<const double> values) {
  if (!mip.layout) throw DomainError("model has no assignment layout");
  const auto& layout = *mip.layout;
  if (values.size() != mip.lp.variables.size()) {
    throw DomainError("value vector does not match variable count");
  }
  Assignment asg(layout.num_receivers);
  for (std::size_t r = 0; r < layout.num_receivers; ++r) {
    for (std::size_t t = 0; t < layout.num_transmitters; ++t) {
      if (values[layout.assign_var(r, t)] > 0.5) {
        if (asg.is_served(ReceiverIndex{r})) {
          throw DomainError("receiver " + std::to_string(r) +
                            " assigned to more than one transmitter");
        }
        asg.assign(ReceiverIndex{r}, TransmitterIndex{t});
      }
    }
  }
  return asg;
}

}  // namespace wnd
