#include "ripadg/field.hpp"

#include <cmath>
#include <utility>

namespace ripadg {

DGField l2_project(const Mesh& mesh, const ReferenceBasis& basis, int ncomp,
                   const std::function<void(Vec2, double*)>& f) {
  DGField u(mesh.n_elements(), ncomp, basis.nb);
  std::vector<double> vals(ncomp);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int q = 0; q < basis.n_vol(); ++q) {
      Vec2 x = mesh.to_physical(e, basis.vol.pts[q]);
      f(x, vals.data());
      double w = basis.vol.w[q];
      for (int comp = 0; comp < ncomp; ++comp) {
        double* m = u.modes(e, comp);
        for (int j = 0; j < basis.nb; ++j)
          m[j] += w * vals[comp] * basis.vol_val[q * basis.nb + j];
      }
    }
  }
  return u;
}

namespace {

// degree-k lattice on the reference element; nodes on a shared face coincide
// between the two neighbours, which is what makes the interpolant continuous
std::vector<Vec2> lattice_nodes(int dim, int degree) {
  std::vector<Vec2> pts;
  if (dim == 1) {
    if (degree == 0) return {Vec2{0.0, 0.0}};
    for (int i = 0; i <= degree; ++i)
      pts.push_back({-1.0 + 2.0 * i / degree, 0.0});
  } else {
    if (degree == 0) return {Vec2{1.0 / 3.0, 1.0 / 3.0}};
    for (int j = 0; j <= degree; ++j)
      for (int i = 0; i + j <= degree; ++i)
        pts.push_back({static_cast<double>(i) / degree,
                       static_cast<double>(j) / degree});
  }
  return pts;
}

// in-place inverse via Gauss-Jordan with partial pivoting; n stays small
void invert_dense(std::vector<double>& a, int n) {
  std::vector<double> inv(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a[col * n + j], a[piv * n + j]);
        std::swap(inv[col * n + j], inv[piv * n + j]);
      }
    double d = a[col * n + col];
    for (int j = 0; j < n; ++j) {
      a[col * n + j] /= d;
      inv[col * n + j] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r * n + col];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a[r * n + j] -= f * a[col * n + j];
        inv[r * n + j] -= f * inv[col * n + j];
      }
    }
  }
  a = std::move(inv);
}

}  // namespace

DGField nodal_project(const Mesh& mesh, const ReferenceBasis& basis, int ncomp,
                      const std::function<void(Vec2, double*)>& f) {
  int nb = basis.nb;
  std::vector<Vec2> nodes = lattice_nodes(mesh.dim, basis.k);
  // modal Vandermonde at the lattice, inverted once and reused everywhere
  std::vector<double> vinv(static_cast<size_t>(nb) * nb);
  for (int i = 0; i < nb; ++i)
    basis.eval_all(nodes[i], &vinv[static_cast<size_t>(i) * nb]);
  invert_dense(vinv, nb);

  DGField u(mesh.n_elements(), ncomp, nb);
  std::vector<double> vals(static_cast<size_t>(nb) * ncomp);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int i = 0; i < nb; ++i)
      f(mesh.to_physical(e, nodes[i]), &vals[static_cast<size_t>(i) * ncomp]);
    for (int comp = 0; comp < ncomp; ++comp) {
      double* m = u.modes(e, comp);
      for (int j = 0; j < nb; ++j) {
        double s = 0.0;
        for (int i = 0; i < nb; ++i)
          s += vinv[static_cast<size_t>(j) * nb + i] * vals[i * ncomp + comp];
        m[j] = s;
      }
    }
  }
  return u;
}

double evaluate(const DGField& u, const ReferenceBasis& basis, int elem,
                int comp, Vec2 ref) {
  const double* m = u.modes(elem, comp);
  double v = 0.0;
  for (int j = 0; j < basis.nb; ++j) v += m[j] * basis.eval(j, ref);
  return v;
}

double cell_average(const DGField& u, const ReferenceBasis& basis, int elem,
                    int comp) {
  // phi_0 = 1/sqrt(|K_ref|), so avg = c_0 * phi_0
  return u.at(elem, comp, 0) / std::sqrt(basis.ref_measure);
}

double integrate(const DGField& u, const Mesh& mesh,
                 const ReferenceBasis& basis, int comp) {
  double s = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e)
    s += cell_average(u, basis, e, comp) * mesh.measure[e];
  return s;
}

ErrorNorms error_norms(const DGField& u, const Mesh& mesh,
                       const ReferenceBasis& basis, int comp,
                       const std::function<double(Vec2)>& exact) {
  ErrorNorms err;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    double scale = mesh.measure[e] / basis.ref_measure;
    const double* m = u.modes(e, comp);
    for (int q = 0; q < basis.n_vol(); ++q) {
      double uh = eval_modes(m, &basis.vol_val[q * basis.nb], basis.nb);
      double d = std::abs(uh - exact(mesh.to_physical(e, basis.vol.pts[q])));
      err.l1 += scale * basis.vol.w[q] * d;
      err.l2 += scale * basis.vol.w[q] * d * d;
      err.linf = std::max(err.linf, d);
    }
  }
  err.l2 = std::sqrt(err.l2);
  return err;
}

}  // namespace ripadg
