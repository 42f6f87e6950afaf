#ifndef RIPADG_BASIS_HPP_
#define RIPADG_BASIS_HPP_

#include <vector>

#include "ripadg/smallmat.hpp"

namespace ripadg {

// Quadrature rule in reference coordinates; weights sum to the reference
// element measure.
struct QuadRule {
  std::vector<Vec2> pts;
  std::vector<double> w;
  int degree = 0;  // highest polynomial degree integrated exactly
};

// Orthonormal modal basis on the reference element (interval [-1,1] in 1D, the
// unit right triangle in 2D), with the quadrature tables used throughout.
class ReferenceBasis {
 public:
  int dim = 0;
  int k = 0;
  int nb = 0;
  double ref_measure = 0.0;

  QuadRule vol;                 // element rule
  std::vector<double> edge_s;   // edge points as parameters in [0,1] (2D)
  std::vector<double> edge_w;   // weights summing to 1
  int edge_degree = 0;
  std::vector<Vec2> pp_pts;     // positivity special points G_p (reference)

  // tabulated basis values at the volume points: vol_val[q * nb + j]
  std::vector<double> vol_val;
  std::vector<Vec2> vol_grad;   // reference gradients
  std::vector<double> pp_val;   // pp_val[p * nb + j]

  int n_vol() const { return static_cast<int>(vol.pts.size()); }
  int n_edge() const { return static_cast<int>(edge_s.size()); }
  int n_pp() const { return static_cast<int>(pp_pts.size()); }

  double eval(int j, Vec2 ref) const;
  Vec2 eval_grad(int j, Vec2 ref) const;  // reference gradient
  void eval_all(Vec2 ref, double* out) const;

  static ReferenceBasis make(int dim, int k);

 private:
  // basis coefficients over monomials: coeff_[i * nmono + j]
  std::vector<double> coeff_;
  std::vector<std::array<int, 2>> mono_;
  int nmono_ = 0;
};

// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);
// Gauss-Lobatto nodes on [-1,1] (3..5 points).
std::vector<double> gauss_lobatto(int n);

}  // namespace ripadg

#endif  // RIPADG_BASIS_HPP_
