#ifndef RIPADG_FIELD_HPP_
#define RIPADG_FIELD_HPP_

#include <functional>
#include <vector>

#include "ripadg/basis.hpp"
#include "ripadg/mesh.hpp"

namespace ripadg {

// Modal DG coefficients for ncomp scalar fields over a mesh. Layout:
// c[(elem * ncomp + comp) * nb + mode].
struct DGField {
  int nelem = 0;
  int ncomp = 0;
  int nb = 0;
  std::vector<double> c;

  DGField() = default;
  DGField(int nelem_, int ncomp_, int nb_)
      : nelem(nelem_), ncomp(ncomp_), nb(nb_),
        c(static_cast<size_t>(nelem_) * ncomp_ * nb_, 0.0) {}

  double& at(int e, int comp, int mode) {
    return c[(static_cast<size_t>(e) * ncomp + comp) * nb + mode];
  }
  double at(int e, int comp, int mode) const {
    return c[(static_cast<size_t>(e) * ncomp + comp) * nb + mode];
  }
  const double* modes(int e, int comp) const {
    return &c[(static_cast<size_t>(e) * ncomp + comp) * nb];
  }
  double* modes(int e, int comp) {
    return &c[(static_cast<size_t>(e) * ncomp + comp) * nb];
  }
};

// Evaluate one component at a reference point, given tabulated basis values.
inline double eval_modes(const double* modes, const double* phi, int nb) {
  double v = 0.0;
  for (int j = 0; j < nb; ++j) v += modes[j] * phi[j];
  return v;
}

// L2 projection of f(x) onto the DG space, component by component. f receives
// a physical point and writes ncomp values.
DGField l2_project(const Mesh& mesh, const ReferenceBasis& basis, int ncomp,
                   const std::function<void(Vec2, double*)>& f);

// Interpolation of f(x) at the degree-k reference lattice (endpoints in 1D,
// the barycentric lattice on triangles). Lattice nodes on a shared face are
// common to both elements, so the interpolant has continuous traces wherever
// f itself is continuous.
DGField nodal_project(const Mesh& mesh, const ReferenceBasis& basis, int ncomp,
                      const std::function<void(Vec2, double*)>& f);

// Point value of a component at a reference location inside an element.
double evaluate(const DGField& u, const ReferenceBasis& basis, int elem,
                int comp, Vec2 ref);

// Cell average of a component. Orthonormality makes this the first mode scaled
// by 1/sqrt(|K_ref|).
double cell_average(const DGField& u, const ReferenceBasis& basis, int elem,
                    int comp);

// Integral of a component over the whole mesh.
double integrate(const DGField& u, const Mesh& mesh,
                 const ReferenceBasis& basis, int comp);

// L1/L2/Linf norms of (u - exact) sampled with the volume rule.
struct ErrorNorms {
  double l1 = 0, l2 = 0, linf = 0;
};
ErrorNorms error_norms(const DGField& u, const Mesh& mesh,
                       const ReferenceBasis& basis, int comp,
                       const std::function<double(Vec2)>& exact);

}  // namespace ripadg

#endif  // RIPADG_FIELD_HPP_
