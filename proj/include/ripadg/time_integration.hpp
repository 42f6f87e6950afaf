#ifndef RIPADG_TIME_INTEGRATION_HPP_
#define RIPADG_TIME_INTEGRATION_HPP_

#include "ripadg/limiters.hpp"

namespace ripadg {

struct StepControl {
  double cfl = 0.18;
  double t = 0.0;
  double t_final = 1.0;
};

// cfl * min element height / max wave speed, clipped to land on t_final.
double compute_dt(const DGField& U, const Mesh& mesh,
                  const ReferenceBasis& basis, const RipaParams& par,
                  const StepControl& ctl);

struct StepStats {
  double min_h_pp = 0.0;    // smallest depth at the special points after
  double min_eta_pp = 0.0;  // limiting, over all stages of the step
};

// One SSP-RK3 step with TVB, PP (plus bottom correction), and dry fix after
// every stage. The bottom field mutates through the correction.
StepStats ssp_rk3_step(DGField& U, DGField& b, const Mesh& mesh,
                       const ReferenceBasis& basis, const RipaParams& par,
                       const LimiterConfig& lim, double dt);

}  // namespace ripadg

#endif  // RIPADG_TIME_INTEGRATION_HPP_
