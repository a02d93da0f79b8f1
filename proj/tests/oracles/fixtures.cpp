#include "fixtures.hpp"

#include "wnd/lp_fp.hpp"

namespace fixtures {

wnd::Assignment greedy_assignment(const wnd::Instance& inst) {
  wnd::Assignment asg(inst.num_receivers());
  for (std::size_t r = 0; r < inst.num_receivers(); ++r) {
    std::size_t best = 0;
    for (std::size_t t = 1; t < inst.num_transmitters(); ++t) {
      if (inst.fading_matrix()[r][t] > inst.fading_matrix()[r][best]) best = t;
    }
    asg.assign(wnd::ReceiverIndex{r}, wnd::TransmitterIndex{best});
    const auto lp = wnd::scale_rows(wnd::build_pap(inst, asg), wnd::pow10(12));
    if (wnd::solve_lp_fp(lp, 1e-9, 100000).status != wnd::FpStatus::kOptimal) {
      asg.unassign(wnd::ReceiverIndex{r});
    }
  }
  return asg;
}

wnd::GenParams experiment_params(std::size_t receivers, std::size_t transmitters, std::uint64_t seed) {
  wnd::GenParams p;
  p.receivers = receivers;
  p.transmitters = transmitters;
  p.seed = seed;
  p.delta_db = 8;
  p.pmax_dbmw = 30;
  p.pathloss_exponent = 4;
  p.shadowing_sigma_db = 16;
  return p;
}

}  // namespace fixtures
