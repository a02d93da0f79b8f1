#include "wnd/instgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "wnd/errors.hpp"

namespace wnd {

void GenParams::validate() const {
  if (receivers == 0 || transmitters == 0) throw DomainError("counts must be positive");
  if (!(area_size > 0)) throw DomainError("area size must be positive");
  if (!(pathloss_exponent > 0)) throw DomainError("path-loss exponent must be positive");
  if (!(shadowing_sigma_db >= 0)) throw DomainError("shadowing sigma must be nonnegative");
  if (!(delta_db >= delta_db_min && delta_db <= delta_db_max)) {
    throw DomainError("delta_db " + std::to_string(delta_db) + " outside [" +
                      std::to_string(delta_db_min) + ", " + std::to_string(delta_db_max) + "]");
  }
  for (double v : {reference_fading_db, noise_dbmw, pmax_dbmw}) {
    if (!std::isfinite(v)) throw DomainError("non-finite generator parameter");
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbmw_to_mw(double dbmw) { return std::pow(10.0, dbmw / 10.0); }

namespace {

// Fixed recipe (not std::uniform_real_distribution, whose output is
// implementation-defined) so instances match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal() {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    double u1 = uniform();
    while (u1 <= 0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(2.0 * std::numbers::pi * u2);
    return radius * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

Placement place(const GenParams& params, Rng& rng) {
  Placement out;
  out.transmitters.resize(params.transmitters);
  out.receivers.resize(params.receivers);
  for (auto& p : out.transmitters) p = {rng.uniform() * params.area_size, rng.uniform() * params.area_size};
  for (auto& p : out.receivers) p = {rng.uniform() * params.area_size, rng.uniform() * params.area_size};
  return out;
}

}  // namespace

Placement generate_placement(const GenParams& params) {
  params.validate();
  Rng rng(params.seed);
  return place(params, rng);
}

Instance generate_instance(const GenParams& params) {
  params.validate();
  Rng rng(params.seed);
  const Placement placement = place(params, rng);
  const auto& tx = placement.transmitters;
  const auto& rx = placement.receivers;

  const Rational pmax = rational_from_double(dbmw_to_mw(params.pmax_dbmw));
  const Rational noise = rational_from_double(dbmw_to_mw(params.noise_dbmw));
  const Rational delta = rational_from_double(db_to_linear(params.delta_db));

  std::vector<Transmitter> transmitters;
  for (std::size_t t = 0; t < params.transmitters; ++t) transmitters.push_back({"t" + std::to_string(t), pmax});
  std::vector<Receiver> receivers;
  for (std::size_t r = 0; r < params.receivers; ++r) {
    receivers.push_back({"r" + std::to_string(r), noise, delta, Rational(1)});
  }

  std::vector<std::vector<Rational>> fading(params.receivers);
  for (std::size_t r = 0; r < params.receivers; ++r) {
    fading[r].reserve(params.transmitters);
    for (std::size_t t = 0; t < params.transmitters; ++t) {
      const double d = std::max(1.0, std::hypot(rx[r].x - tx[t].x, rx[r].y - tx[t].y));
      double db = params.reference_fading_db - 10.0 * params.pathloss_exponent * std::log10(d);
      if (params.shadowing_sigma_db > 0) db += params.shadowing_sigma_db * rng.normal();
      const double a = std::clamp(std::pow(10.0, db / 10.0), 0.0, 1.0);
      fading[r].push_back(rational_from_double(a));
    }
  }

  std::map<std::string, std::string> meta{
      {"seed", std::to_string(params.seed)},
      {"generator", "log-distance"},
      {"area_size", format_rational(rational_from_double(params.area_size))},
      {"pathloss_exponent", format_rational(rational_from_double(params.pathloss_exponent))},
      {"reference_fading_db", format_rational(rational_from_double(params.reference_fading_db))},
      {"noise_dbmw", format_rational(rational_from_double(params.noise_dbmw))},
      {"delta_db", format_rational(rational_from_double(params.delta_db))},
      {"pmax_dbmw", format_rational(rational_from_double(params.pmax_dbmw))},
      {"shadowing_sigma_db", format_rational(rational_from_double(params.shadowing_sigma_db))},
  };
  return Instance(std::move(transmitters), std::move(receivers), std::move(fading), std::move(meta));
}

std::pair<Rational, Rational> fading_range(const Instance& inst) {
  Rational lo, hi;
  bool first = true;
  for (const auto& row : inst.fading_matrix()) {
    for (const auto& a : row) {
      if (sgn(a) == 0) continue;
      if (first || a < lo) lo = a;
      if (first || a > hi) hi = a;
      first = false;
    }
  }
  return {lo, hi};
}

}  // namespace wnd
