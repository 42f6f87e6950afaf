#ifndef RIPADG_MESH_ADAPT_HPP_
#define RIPADG_MESH_ADAPT_HPP_

#include "ripadg/ripa.hpp"

namespace ripadg {

struct AdaptConfig {
  double delta = 1.0;      // weight of the depth metric in the intersection
  double h_floor = 1e-6;   // depth floor inside the logarithm
  double e_floor = 1e-12;  // energy floor inside the logarithm
  double beta_floor = 1e-12;
  int smooth_sweeps = 2;
  int move_iters = 5;
  double omega = 0.5;  // damping of the node movement
};

// Per-element SPD matrices (scalar in slot (0,0) with (1,1)=1 in 1D) plus the
// regularization produced by the beta equation.
struct MetricField {
  std::vector<Mat2> m;
  double beta = 0.0;
};

// Least-squares quadratic fit of per-element samples over an edge-neighbor
// patch (rings grow until the fit is overdetermined); returns the symmetric
// second-derivative matrix, zero where the patch is rank deficient.
std::vector<Mat2> recover_hessian(const std::vector<double>& vals,
                                  const Mesh& mesh);

// Optimal metric from the regularized absolute Hessian. beta solves
// sum |K| det(beta I + |H|)^(1/3) = 2 sum |K| det(|H|)^(1/3) by bisection
// (floored); 2D entries det(beta I + |H|)^(-1/6) (beta I + |H|), 1D scalar
// (beta + |H|)^(1/5).
MetricField metric_from_hessian(const std::vector<Mat2>& H, const Mesh& mesh,
                                double beta_floor = 1e-12);

// Metric intersection by simultaneous diagonalization: dominate both m1 and
// delta*m2 in the SPD order. Throws on non-SPD input.
Mat2 metric_intersect(const Mat2& m1, const Mat2& m2, double delta);

// Measure-weighted neighbor averaging of the matrix entries.
void smooth_metric(std::vector<Mat2>& m, const Mesh& mesh, int sweeps);

// Monitor built from ln(energy) and ln(depth) Hessians, intersected and
// smoothed; energy = (u^2+v^2)/2 + g*theta*(h+b) from cell averages.
MetricField adaptation_metric(const DGField& U, const DGField& b,
                              const Mesh& mesh, const ReferenceBasis& basis,
                              const RipaParams& par, const AdaptConfig& cfg);

// New vertex coordinates conforming to the metric: damped equidistribution in
// 1D, damped descent of the equidistribution/alignment energy in 2D. Boundary
// vertices stay put; element measures stay positive (backtracking, falling
// back to the input coordinates).
std::vector<Vec2> move_mesh(const Mesh& mesh, const MetricField& metric,
                            const AdaptConfig& cfg);

}  // namespace ripadg

#endif  // RIPADG_MESH_ADAPT_HPP_
