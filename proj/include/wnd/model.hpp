#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wnd/rational.hpp"

namespace wnd {

struct ReceiverIndex {
  std::size_t value = 0;
  auto operator<=>(const ReceiverIndex&) const = default;
};

struct TransmitterIndex {
  std::size_t value = 0;
  auto operator<=>(const TransmitterIndex&) const = default;
};

struct Transmitter {
  std::string id;
  Rational p_max;  // mW
  friend bool operator==(const Transmitter&, const Transmitter&) = default;
};

struct Receiver {
  std::string id;
  Rational noise;        // mW
  Rational delta;        // linear SIR threshold
  Rational revenue = 1;  // granted when served
  friend bool operator==(const Receiver&, const Receiver&) = default;
};

// Transmitters, receivers and the fading matrix fading[r][t]. Immutable once
// constructed; the constructor enforces positivity of p_max/noise/delta,
// 0 <= fading <= 1 and the |R| x |T| shape.
class Instance {
 public:
  Instance(std::vector<Transmitter> transmitters, std::vector<Receiver> receivers,
           std::vector<std::vector<Rational>> fading,
           std::map<std::string, std::string> meta = {});

  std::size_t num_transmitters() const { return transmitters_.size(); }
  std::size_t num_receivers() const { return receivers_.size(); }

  const Transmitter& transmitter(TransmitterIndex t) const;
  const Receiver& receiver(ReceiverIndex r) const;
  const Rational& fading(ReceiverIndex r, TransmitterIndex t) const;

  const std::vector<Transmitter>& transmitters() const { return transmitters_; }
  const std::vector<Receiver>& receivers() const { return receivers_; }
  const std::vector<std::vector<Rational>>& fading_matrix() const { return fading_; }
  const std::map<std::string, std::string>& meta() const { return meta_; }

  TransmitterIndex transmitter_index(std::string_view id) const;
  ReceiverIndex receiver_index(std::string_view id) const;

  void check_receiver(ReceiverIndex r) const;
  void check_transmitter(TransmitterIndex t) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Transmitter> transmitters_;
  std::vector<Receiver> receivers_;
  std::vector<std::vector<Rational>> fading_;
  std::map<std::string, std::string> meta_;
};

// Partial map receiver -> server. A receiver holds at most one server.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t num_receivers) : server_(num_receivers) {}

  std::size_t num_receivers() const { return server_.size(); }
  std::optional<TransmitterIndex> server(ReceiverIndex r) const;
  bool is_served(ReceiverIndex r) const { return server(r).has_value(); }

  // Throws DomainError if r already has a different server.
  void assign(ReceiverIndex r, TransmitterIndex t);
  void unassign(ReceiverIndex r);

  std::size_t served_count() const;
  std::vector<std::pair<ReceiverIndex, TransmitterIndex>> served_pairs() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::optional<TransmitterIndex>> server_;
};

enum class Sense { kGreaterEqual, kLessEqual, kEqual };

enum class RowKind { kGeneric, kSir, kGub };

struct RowTag {
  RowKind kind = RowKind::kGeneric;
  std::size_t receiver = 0;
  std::size_t transmitter = 0;
  friend bool operator==(const RowTag&, const RowTag&) = default;
};

using SparseTerms = std::vector<std::pair<std::size_t, Rational>>;

struct LinearRow {
  SparseTerms coefficients;  // sorted by index, no duplicates, no zeros
  Sense sense = Sense::kGreaterEqual;
  Rational rhs;
  std::optional<RowTag> tag;

  // Sorts, merges duplicate indices and drops zeros.
  void normalize();

  Rational activity(std::span<const Rational> x) const;

  friend bool operator==(const LinearRow&, const LinearRow&) = default;
};

struct Variable {
  std::string name;
  std::optional<Rational> lower;  // nullopt = -infinity
  std::optional<Rational> upper;  // nullopt = +infinity
  friend bool operator==(const Variable&, const Variable&) = default;
};

enum class ObjectiveSense { kMinimize, kMaximize };

struct Objective {
  SparseTerms coefficients;
  ObjectiveSense sense = ObjectiveSense::kMinimize;
  friend bool operator==(const Objective&, const Objective&) = default;
};

struct LinearProgram {
  std::vector<Variable> variables;
  std::vector<LinearRow> rows;
  Objective objective;

  std::size_t num_variables() const { return variables.size(); }
  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_nonzeros() const;

  // lower <= upper, row indices in range, rows normalized.
  void validate() const;

  friend bool operator==(const LinearProgram&, const LinearProgram&) = default;
};

// Variable layout produced by build_spap: p_t at [0, |T|), x_rt at
// |T| + r*|T| + t.
struct SpapLayout {
  std::size_t num_receivers = 0;
  std::size_t num_transmitters = 0;
  std::size_t power_var(std::size_t t) const { return t; }
  std::size_t assign_var(std::size_t r, std::size_t t) const {
    return num_transmitters + r * num_transmitters + t;
  }
  friend bool operator==(const SpapLayout&, const SpapLayout&) = default;
};

struct MipProblem {
  LinearProgram lp;
  std::vector<bool> is_binary;  // per variable
  std::optional<SpapLayout> layout;

  void validate() const;

  friend bool operator==(const MipProblem&, const MipProblem&) = default;
};

struct ModelDimensions {
  std::size_t variables = 0;
  std::size_t rows = 0;
  std::size_t nonzeros = 0;
  friend bool operator==(const ModelDimensions&, const ModelDimensions&) = default;
};

ModelDimensions dimensions(const LinearProgram& lp);

// a_rs p_s / (N_r + sum_{t != s} a_rt p_t), exact.
Rational sir_value(const Instance& inst, std::span<const Rational> p, ReceiverIndex r,
                   TransmitterIndex s);

// N_r + sum_{t != s} a_rt p_t, the denominator of sir_value.
Rational noise_plus_interference(const Instance& inst, std::span<const Rational> p,
                                 ReceiverIndex r, TransmitterIndex s);

// a_rs p_s - delta_r sum_{t != s} a_rt p_t >= delta_r N_r over the power
// variables (indices 0..|T|-1), tagged kSir (r, s).
LinearRow linearized_sir_row(const Instance& inst, ReceiverIndex r, TransmitterIndex s);

LinearProgram build_pap(const Instance& inst, const Assignment& asg);

// delta_r N_r + delta_r sum_{t != s} a_rt P_max,t: the smallest M for which
// the deactivated row holds everywhere in the power box.
Rational big_m(const Instance& inst, ReceiverIndex r, TransmitterIndex s);

MipProblem build_spap(const Instance& inst);

// Multiplies every kSir-tagged row (coefficients and rhs) by factor.
LinearProgram scale_rows(const LinearProgram& lp, const Rational& factor);
MipProblem scale_rows(const MipProblem& mip, const Rational& factor);

// Substitutes x from asg into an SPAP model and drops the binaries. Active SIR
// rows lose their M term; deactivated SIR rows and GUB rows are dropped.
LinearProgram fix_assignment(const MipProblem& mip, const Assignment& asg);

// Reads an assignment off binary values (rounded at 1/2). Throws DomainError
// when some receiver has more than one active server.
Assignment assignment_from_binaries(const MipProblem& mip, std::span<const double> values);

}  // namespace wnd
