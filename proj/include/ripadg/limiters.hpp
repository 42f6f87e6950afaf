#ifndef RIPADG_LIMITERS_HPP_
#define RIPADG_LIMITERS_HPP_

#include "ripadg/ripa.hpp"

namespace ripadg {

struct LimiterConfig {
  double m_tvb = 0.0;
  double dry_tol = 1e-6;
  bool dry_mode = false;  // troubled-cell detection on h+b, limiting on U
  double nu = 1.5;        // relaxation factor in the 2D minmod argument
};

// Per-element (b*theta) reconstruction: scale b by the ratio of cell averages
// eta/h (zero for dry cells).
DGField reconstruct_btheta(const DGField& h, const DGField& eta,
                           const DGField& b, const ReferenceBasis& basis,
                           double dry_tol);

// Characteristic TVB slope limiter in the balanced variables
// (h+b, m, w, eta+(b*theta)); untroubled elements pass through unchanged.
void tvb_limit(DGField& state, const DGField& b, const Mesh& mesh,
               const ReferenceBasis& basis, const RipaParams& par,
               const LimiterConfig& cfg);

// Linear scaling toward the cell average so depth and eta are nonnegative at
// the special point set; returns the per-element scaling factors.
struct PPResult {
  std::vector<double> lambda_h, lambda_eta;
};
PPResult pp_limit(DGField& state, const ReferenceBasis& basis);

// Scalar building block of the PP limiter acting on one component; returns
// the pre-limit minimum over the special points and optionally the factors.
double pp_scale_component(DGField& f, int comp, const ReferenceBasis& basis,
                          std::vector<double>* lambdas = nullptr);

// Shift the bottom by the change the PP limiter made to the depth so h+b is
// untouched: b <- b - (h_after - h_before).
void bottom_correction(DGField& b, const DGField& h_before,
                       const DGField& h_after);

// Zero the momentum in cells whose average depth is below the dry tolerance.
void dry_fix(DGField& state, const ReferenceBasis& basis, double dry_tol);

// Smallest value of one component over all elements' special points.
double min_at_pp(const DGField& f, int comp, const ReferenceBasis& basis);

}  // namespace ripadg

#endif  // RIPADG_LIMITERS_HPP_
