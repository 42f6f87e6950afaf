#include "ripadg/remap.hpp"

#include <cmath>
#include <stdexcept>

#include "ripadg/limiters.hpp"

namespace ripadg {

RemapPlan plan_remap(const Mesh& mesh, std::vector<Vec2> coords_new,
                     const ReferenceBasis& basis, double cp) {
  RemapPlan plan;
  plan.blend.topo = &mesh;
  plan.blend.coords_old = mesh.vertices;
  plan.blend.coords_new = std::move(coords_new);
  if (plan.blend.max_displacement() == 0.0) return plan;
  plan.identity = false;

  // max normal mesh speed over the edge points of both end meshes
  double vmax = 0.0;
  Mesh work = mesh;
  double amin = mesh.min_element_height();
  for (int end = 0; end < 2; ++end) {
    work.set_coordinates(plan.blend.at(end == 0 ? 0.0 : 1.0));
    amin = std::min(amin, work.min_element_height());
    for (int ie = 0; ie < work.n_edges(); ++ie) {
      const Edge& ed = work.edges[ie];
      for (int q = 0; q < basis.n_edge(); ++q) {
        Vec2 ref = work.edge_ref_point(ed.left, ed.left_local, basis.edge_s[q]);
        Vec2 xd = plan.blend.velocity(ed.left, ref);
        vmax = std::max(vmax, std::abs(dot(xd, work.edge_normal[ie])));
      }
    }
  }
  if (vmax <= 0.0) {
    plan.identity = true;
    return plan;
  }
  double ds = cp * amin / vmax;
  plan.nsteps = std::max(1, static_cast<int>(std::ceil(1.0 / ds)));
  plan.dsigma = 1.0 / plan.nsteps;
  return plan;
}

namespace {

// modal residual of d/ds int q phi = bd_int(qhat phi vn) - int q (Xdot.grad
// phi), plus the element volume derivative used for the GCL update
void remap_residual(const DGField& c, const Mesh& work, const MeshBlend& blend,
                    const ReferenceBasis& basis, DGField& dQ,
                    std::vector<double>& dV) {
  int nc = c.ncomp;
  int nb = basis.nb;
  dQ = DGField(c.nelem, nc, nb);
  dV.assign(c.nelem, 0.0);

  for (int e = 0; e < c.nelem; ++e) {
    const Mat2 invJT = transpose(work.inv_jac[e]);
    double scale = work.measure[e] / basis.ref_measure;
    for (int q = 0; q < basis.n_vol(); ++q) {
      Vec2 xd = blend.velocity(e, basis.vol.pts[q]);
      double w = scale * basis.vol.w[q];
      const double* phi = &basis.vol_val[q * nb];
      for (int comp = 0; comp < nc; ++comp) {
        double qv = eval_modes(c.modes(e, comp), phi, nb);
        for (int j = 0; j < nb; ++j) {
          Vec2 gphi = invJT * basis.vol_grad[q * nb + j];
          dQ.at(e, comp, j) -= w * qv * dot(xd, gphi);
        }
      }
    }
  }

  std::vector<double> phiL(nb), phiR(nb), qi(nc), qe(nc);
  for (int ie = 0; ie < work.n_edges(); ++ie) {
    const Edge& ed = work.edges[ie];
    Vec2 nrm = work.edge_normal[ie];
    double emeas = work.edge_measure[ie];
    for (int q = 0; q < basis.n_edge(); ++q) {
      double s = basis.edge_s[q];
      double wq = basis.edge_w[q] * emeas;
      Vec2 refL = work.edge_ref_point(ed.left, ed.left_local, s);
      double vn = dot(blend.velocity(ed.left, refL), nrm);
      basis.eval_all(refL, phiL.data());
      for (int comp = 0; comp < nc; ++comp)
        qi[comp] = eval_modes(c.modes(ed.left, comp), phiL.data(), nb);

      int ext = -1;
      Vec2 refR{0, 0};
      if (ed.right != -1) {
        ext = ed.right;
        refR = work.edge_ref_point(ed.right, ed.right_local, s);
      } else if (ed.kind == BoundaryKind::periodic) {
        ext = work.edges[ed.partner].left;
        refR = work.to_reference(ext, work.to_physical(ed.left, refL) + ed.shift);
      }
      if (ext != -1) {
        basis.eval_all(refR, phiR.data());
        for (int comp = 0; comp < nc; ++comp)
          qe[comp] = eval_modes(c.modes(ext, comp), phiR.data(), nb);
      } else {
        qe = qi;
      }

      // an edge with Xdot.n > 0 sweeps into the exterior, so the upwind
      // trace is the exterior one (material moves at -Xdot in the mesh frame)
      dV[ed.left] += wq * vn;
      for (int comp = 0; comp < nc; ++comp) {
        double fn = 0.5 * (vn * (qi[comp] + qe[comp]) +
                           std::abs(vn) * (qe[comp] - qi[comp]));
        for (int j = 0; j < nb; ++j)
          dQ.at(ed.left, comp, j) += wq * fn * phiL[j];
      }
      if (ed.right != -1) {
        dV[ed.right] -= wq * vn;
        for (int comp = 0; comp < nc; ++comp) {
          double fn = 0.5 * (vn * (qi[comp] + qe[comp]) +
                             std::abs(vn) * (qe[comp] - qi[comp]));
          for (int j = 0; j < nb; ++j)
            dQ.at(ed.right, comp, j) -= wq * fn * phiR[j];
        }
      }
    }
  }
}

// coefficients from weighted moments and back
void to_coeff(const DGField& Q, const std::vector<double>& V,
              const ReferenceBasis& basis, DGField& c) {
  c = Q;
  for (int e = 0; e < Q.nelem; ++e) {
    double f = basis.ref_measure / V[e];
    for (int comp = 0; comp < Q.ncomp; ++comp)
      for (int j = 0; j < Q.nb; ++j) c.at(e, comp, j) *= f;
  }
}

void apply_pp(DGField& c, const ReferenceBasis& basis,
              const std::vector<char>& use_pp) {
  for (int comp = 0; comp < c.ncomp; ++comp)
    if (use_pp[comp]) pp_scale_component(c, comp, basis, nullptr);
}

}  // namespace

DGField dg_interpolate(const DGField& f, const RemapPlan& plan,
                       const ReferenceBasis& basis,
                       const std::vector<char>& use_pp) {
  if (plan.identity) return f;
  const Mesh& topo = *plan.blend.topo;
  Mesh work = topo;
  work.set_coordinates(plan.blend.at(0.0));

  std::vector<double> V(f.nelem);
  for (int e = 0; e < f.nelem; ++e) V[e] = work.measure[e];

  DGField c = f;
  DGField Q = f;
  auto sync_Q = [&](const DGField& cc, const std::vector<double>& VV) {
    Q = cc;
    for (int e = 0; e < f.nelem; ++e) {
      double s = VV[e] / basis.ref_measure;
      for (int comp = 0; comp < f.ncomp; ++comp)
        for (int j = 0; j < f.nb; ++j) Q.at(e, comp, j) *= s;
    }
  };
  sync_Q(c, V);

  DGField dQ, Q1, Q2;
  std::vector<double> dV, V1, V2;
  DGField c1 = c, c2 = c;
  for (int step = 0; step < plan.nsteps; ++step) {
    double s0 = step * plan.dsigma;
    double ds = plan.dsigma;

    work.set_coordinates(plan.blend.at(s0));
    remap_residual(c, work, plan.blend, basis, dQ, dV);
    Q1 = Q;
    V1 = V;
    for (size_t i = 0; i < Q.c.size(); ++i) Q1.c[i] += ds * dQ.c[i];
    for (int e = 0; e < f.nelem; ++e) V1[e] += ds * dV[e];
    to_coeff(Q1, V1, basis, c1);
    apply_pp(c1, basis, use_pp);
    // the squeeze keeps cell integrals, so refreshing the moments is exact
    Q1 = c1;
    for (int e = 0; e < f.nelem; ++e) {
      double sc = V1[e] / basis.ref_measure;
      for (int comp = 0; comp < f.ncomp; ++comp)
        for (int j = 0; j < f.nb; ++j) Q1.at(e, comp, j) *= sc;
    }

    work.set_coordinates(plan.blend.at(s0 + ds));
    remap_residual(c1, work, plan.blend, basis, dQ, dV);
    Q2 = Q;
    V2 = V;
    for (size_t i = 0; i < Q.c.size(); ++i)
      Q2.c[i] = 0.75 * Q.c[i] + 0.25 * (Q1.c[i] + ds * dQ.c[i]);
    for (int e = 0; e < f.nelem; ++e)
      V2[e] = 0.75 * V[e] + 0.25 * (V1[e] + ds * dV[e]);
    to_coeff(Q2, V2, basis, c2);
    apply_pp(c2, basis, use_pp);
    for (int e = 0; e < f.nelem; ++e) {
      double sc = V2[e] / basis.ref_measure;
      for (int comp = 0; comp < f.ncomp; ++comp)
        for (int j = 0; j < f.nb; ++j) Q2.at(e, comp, j) = c2.at(e, comp, j) * sc;
    }

    work.set_coordinates(plan.blend.at(s0 + 0.5 * ds));
    remap_residual(c2, work, plan.blend, basis, dQ, dV);
    for (size_t i = 0; i < Q.c.size(); ++i)
      Q.c[i] = (1.0 / 3.0) * Q.c[i] + (2.0 / 3.0) * (Q2.c[i] + ds * dQ.c[i]);
    for (int e = 0; e < f.nelem; ++e)
      V[e] = (1.0 / 3.0) * V[e] + (2.0 / 3.0) * (V2[e] + ds * dV[e]);
    to_coeff(Q, V, basis, c);
    apply_pp(c, basis, use_pp);
    sync_Q(c, V);
  }
  return c;
}

void remap_state(DGField& U, DGField& b, const RemapPlan& plan,
                 const ReferenceBasis& basis) {
  if (plan.identity) return;
  int nc = U.ncomp;
  DGField bundle(U.nelem, nc + 1, U.nb);
  for (int e = 0; e < U.nelem; ++e) {
    for (int comp = 0; comp < nc; ++comp)
      for (int j = 0; j < U.nb; ++j)
        bundle.at(e, comp, j) = U.at(e, comp, j);
    for (int j = 0; j < U.nb; ++j)
      bundle.at(e, nc, j) = U.at(e, 0, j) + b.at(e, 0, j);
  }
  std::vector<char> pp(nc + 1, 0);
  pp[0] = 1;       // depth
  pp[nc - 1] = 1;  // eta
  DGField out = dg_interpolate(bundle, plan, basis, pp);
  for (int e = 0; e < U.nelem; ++e) {
    for (int comp = 0; comp < nc; ++comp)
      for (int j = 0; j < U.nb; ++j) U.at(e, comp, j) = out.at(e, comp, j);
    for (int j = 0; j < U.nb; ++j)
      b.at(e, 0, j) = out.at(e, nc, j) - out.at(e, 0, j);
  }
}

}  // namespace ripadg
