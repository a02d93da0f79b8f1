#pragma once

// Shared test inputs built with the library itself (not oracles).

#include <cstdint>

#include "wnd/instgen.hpp"
#include "wnd/model.hpp"

namespace fixtures {

// Receivers added one at a time (id order) with their strongest
// transmitter, kept when the SIR-scaled PAP stays feasible in double
// precision.
wnd::Assignment greedy_assignment(const wnd::Instance& inst);

// Generator settings used for the coverage experiments: 8 dB threshold,
// 30 dBmW, shadowing so the coefficients span more than ten decades.
wnd::GenParams experiment_params(std::size_t receivers, std::size_t transmitters, std::uint64_t seed);

}  // namespace fixtures
