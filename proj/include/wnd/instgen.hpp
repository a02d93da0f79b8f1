#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wnd/model.hpp"

namespace wnd {

struct GenParams {
  std::size_t receivers = 100;
  std::size_t transmitters = 8;
  double area_size = 2000;          // m, side of the square
  double pathloss_exponent = 3.5;
  double reference_fading_db = -30;  // at 1 m
  double noise_dbmw = -120;
  double delta_db = 8;
  double pmax_dbmw = 30;
  double shadowing_sigma_db = 0;  // log-normal shadowing, 0 = off
  double delta_db_min = 8;        // accepted range for delta_db
  double delta_db_max = 11;
  std::uint64_t seed = 1;

  // Throws DomainError on nonpositive counts/sizes or delta_db out of range.
  void validate() const;
};

double db_to_linear(double db);
double dbmw_to_mw(double dbmw);

struct Point {
  double x = 0;
  double y = 0;
};

struct Placement {
  std::vector<Point> transmitters;
  std::vector<Point> receivers;
};

// The positions generate_instance uses for these params.
Placement generate_placement(const GenParams& params);

// Uniform placement in the square, log-distance path loss with a 1 m floor,
// optional shadowing; fading clamped to [0, 1] and frozen as the exact value
// of the computed double. Same params => identical instance.
Instance generate_instance(const GenParams& params);

// (smallest nonzero, largest) fading coefficient.
std::pair<Rational, Rational> fading_range(const Instance& inst);

}  // namespace wnd
