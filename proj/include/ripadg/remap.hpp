#ifndef RIPADG_REMAP_HPP_
#define RIPADG_REMAP_HPP_

#include "ripadg/field.hpp"

namespace ripadg {

// Pseudo-time transfer plan between two coordinate sets on one topology.
struct RemapPlan {
  MeshBlend blend;
  int nsteps = 1;
  double dsigma = 1.0;
  bool identity = true;
};

// Pseudo-time step from the CFL bound cp * a_min / max|Xdot.n|; cp should be
// below 1/(2k+1).
RemapPlan plan_remap(const Mesh& mesh, std::vector<Vec2> coords_new,
                     const ReferenceBasis& basis, double cp = 0.18);

// Transfer a multi-component field to the new mesh by integrating the frozen
// solution through the deforming geometry; per-component flags select the
// positivity squeeze. Conserves integrals and reproduces constants.
DGField dg_interpolate(const DGField& f, const RemapPlan& plan,
                       const ReferenceBasis& basis,
                       const std::vector<char>& use_pp);

// Ripa bundle: h and eta with positivity, momenta plain, and the bottom as
// interp(h+b) - interp(h) so a flat surface stays flat.
void remap_state(DGField& U, DGField& b, const RemapPlan& plan,
                 const ReferenceBasis& basis);

}  // namespace ripadg

#endif  // RIPADG_REMAP_HPP_
