#ifndef RIPADG_RIPA_HPP_
#define RIPADG_RIPA_HPP_

#include "ripadg/field.hpp"

namespace ripadg {

// Shallow water with temperature. Conserved components:
//   1D: (h, m, eta),  2D: (h, m, w, eta)  with m = hu, w = hv, eta = h*theta.
struct RipaParams {
  double g = 1.0;
  double dry_tol = 1e-6;  // below this depth, velocities are treated as zero
};

inline int ripa_ncomp(int dim) { return dim == 1 ? 3 : 4; }

// Normal flux F(U) . n.
void ripa_flux(int dim, const double* U, double g, double dry_tol, Vec2 n,
               double* out);

// |u.n| + sqrt(g*eta); the largest eigenvalue magnitude of F'(U).n.
double ripa_max_speed(int dim, const double* U, double g, double dry_tol,
                      Vec2 n);

// Plain Lax-Friedrichs flux.
void ripa_lax_friedrichs(int dim, const double* Ui, const double* Ue, double g,
                         double dry_tol, Vec2 n, double alpha, double* out);

// Hydrostatic reconstruction at an edge point: clamp depths against the
// higher bottom and rescale momenta/eta by the depth ratio.
void hydrostatic_reconstruct(int dim, const double* Ui, const double* Ue,
                             double bi, double be, double dry_tol, double* Uis,
                             double* Ues);

// Reconstruction-based flux seen from the interior side:
// LF(Ui*, Ue*) + (F(Ui) - F(Ui*)) . n.  alpha <= 0 means: compute it from the
// four participating states.
void well_balanced_flux(int dim, const double* Ui, const double* Ue, double bi,
                        double be, Vec2 n, double g, double dry_tol,
                        double alpha, double* out);

// Right/left eigenvector matrices (row major ncomp x ncomp) of F'(U).n.
// Falls back to the identity for dry states.
void ripa_eigenvectors(int dim, const double* U, double g, double dry_tol,
                       Vec2 n, std::vector<double>& R, std::vector<double>& L);

// Semi-discrete residual of the well-balanced DG scheme: fills dUdt with
// modal time derivatives. Boundary treatment follows the mesh edge kinds.
void ripa_residual(const Mesh& mesh, const ReferenceBasis& basis,
                   const RipaParams& par, const DGField& U, const DGField& b,
                   DGField& dUdt);

// Max wave speed over all volume and edge trace points; used for the CFL.
double ripa_global_max_speed(const Mesh& mesh, const ReferenceBasis& basis,
                             const RipaParams& par, const DGField& U);

}  // namespace ripadg

#endif  // RIPADG_RIPA_HPP_
