#include "ripadg/time_integration.hpp"

#include <algorithm>
#include <cmath>

namespace ripadg {

double compute_dt(const DGField& U, const Mesh& mesh,
                  const ReferenceBasis& basis, const RipaParams& par,
                  const StepControl& ctl) {
  double amax = ripa_global_max_speed(mesh, basis, par, U);
  double remain = ctl.t_final - ctl.t;
  if (amax <= 0.0) return remain;
  double dt = ctl.cfl * mesh.min_element_height() / amax;
  return std::min(dt, remain);
}

namespace {

void apply_stage_limiters(DGField& U, DGField& b, const Mesh& mesh,
                          const ReferenceBasis& basis, const RipaParams& par,
                          const LimiterConfig& lim, StepStats& stats) {
  tvb_limit(U, b, mesh, basis, par, lim);
  DGField before = U;
  pp_scale_component(U, 0, basis, nullptr);
  pp_scale_component(U, U.ncomp - 1, basis, nullptr);
  bottom_correction(b, before, U);
  dry_fix(U, basis, lim.dry_tol);
  stats.min_h_pp = std::min(stats.min_h_pp, min_at_pp(U, 0, basis));
  stats.min_eta_pp =
      std::min(stats.min_eta_pp, min_at_pp(U, U.ncomp - 1, basis));
}

}  // namespace

StepStats ssp_rk3_step(DGField& U, DGField& b, const Mesh& mesh,
                       const ReferenceBasis& basis, const RipaParams& par,
                       const LimiterConfig& lim, double dt) {
  StepStats stats;
  size_t n = U.c.size();
  DGField rhs;
  DGField U0 = U;

  ripa_residual(mesh, basis, par, U, b, rhs);
  DGField U1 = U;
  for (size_t i = 0; i < n; ++i) U1.c[i] += dt * rhs.c[i];
  apply_stage_limiters(U1, b, mesh, basis, par, lim, stats);

  ripa_residual(mesh, basis, par, U1, b, rhs);
  DGField U2 = U1;
  for (size_t i = 0; i < n; ++i)
    U2.c[i] = 0.75 * U0.c[i] + 0.25 * (U1.c[i] + dt * rhs.c[i]);
  apply_stage_limiters(U2, b, mesh, basis, par, lim, stats);

  ripa_residual(mesh, basis, par, U2, b, rhs);
  for (size_t i = 0; i < n; ++i)
    U.c[i] = (1.0 / 3.0) * U0.c[i] + (2.0 / 3.0) * (U2.c[i] + dt * rhs.c[i]);
  apply_stage_limiters(U, b, mesh, basis, par, lim, stats);
  return stats;
}

}  // namespace ripadg
