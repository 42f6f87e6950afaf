#include "ripadg/limiters.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ripadg {

namespace {

double minmod(double a, double b, double c) {
  if (a > 0 && b > 0 && c > 0) return std::min(a, std::min(b, c));
  if (a < 0 && b < 0 && c < 0) return std::max(a, std::max(b, c));
  return 0.0;
}

double minmod2(double a, double b) {
  if (a > 0 && b > 0) return std::min(a, b);
  if (a < 0 && b < 0) return std::max(a, b);
  return 0.0;
}

double mm_tvb(double a1, double a2, double a3, double thresh) {
  if (std::abs(a1) <= thresh) return a1;
  return minmod(a1, a2, a3);
}

double mm_tvb2(double a1, double a2, double thresh) {
  if (std::abs(a1) <= thresh) return a1;
  return minmod2(a1, a2);
}

// matrix-vector product for the small characteristic transforms
void matvec(const std::vector<double>& M, const double* x, double* y, int n) {
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += M[i * n + j] * x[j];
    y[i] = s;
  }
}

// element across local face `loc`, following periodic wraps; also reports the
// coordinate shift that moves the neighbor next to `e`
int neighbor_elem(const Mesh& mesh, int e, int loc, Vec2* shift) {
  *shift = {0, 0};
  int nb = mesh.neighbors[e][loc];
  if (nb >= 0) return nb;
  const Edge& ed = mesh.edges[mesh.elem_edges[e][loc]];
  if (ed.kind == BoundaryKind::periodic) {
    *shift = {-ed.shift[0], -ed.shift[1]};
    return mesh.edges[ed.partner].left;
  }
  return -1;
}

}  // namespace

DGField reconstruct_btheta(const DGField& h, const DGField& eta,
                           const DGField& b, const ReferenceBasis& basis,
                           double dry_tol) {
  DGField out(b.nelem, 1, b.nb);
  for (int e = 0; e < b.nelem; ++e) {
    double hbar = cell_average(h, basis, e, 0);
    double r = hbar > dry_tol ? cell_average(eta, basis, e, 0) / hbar : 0.0;
    for (int j = 0; j < b.nb; ++j) out.at(e, 0, j) = r * b.at(e, 0, j);
  }
  return out;
}

void tvb_limit(DGField& state, const DGField& b, const Mesh& mesh,
               const ReferenceBasis& basis, const RipaParams& par,
               const LimiterConfig& cfg) {
  int dim = mesh.dim;
  int nc = state.ncomp;
  int nb = basis.nb;
  int ieta = nc - 1;

  // balanced variables: (h+b, m[, w], eta + (eta_bar/h_bar) b)
  std::vector<double> ratio(state.nelem);
  DGField V = state;
  for (int e = 0; e < state.nelem; ++e) {
    double hbar = cell_average(state, basis, e, 0);
    ratio[e] = hbar > cfg.dry_tol
                   ? cell_average(state, basis, e, ieta) / hbar
                   : 0.0;
    for (int j = 0; j < nb; ++j) {
      V.at(e, 0, j) += b.at(e, 0, j);
      V.at(e, ieta, j) += ratio[e] * b.at(e, 0, j);
    }
  }

  std::vector<std::array<double, 4>> vbar(state.nelem), ubar(state.nelem);
  for (int e = 0; e < state.nelem; ++e)
    for (int c = 0; c < nc; ++c) {
      vbar[e][c] = cell_average(V, basis, e, c);
      ubar[e][c] = cell_average(state, basis, e, c);
    }

  // in dry mode the troubled-cell check runs on the surface h+b while the
  // polynomial modification acts on the conserved variables directly
  DGField& W = cfg.dry_mode ? state : V;
  const std::vector<std::array<double, 4>>* wbar = cfg.dry_mode ? &ubar : &vbar;

  std::vector<double> R, L;
  double tmp[4], chr[4], chp[4], chm[4], dpc[4], dmc[4], sig[4];

  if (dim == 1) {
    double phi1 = basis.eval(1, {1.0, 0.0});
    DGField out = state;
    for (int e = 0; e < state.nelem; ++e) {
      Vec2 sh;
      int l = neighbor_elem(mesh, e, 0, &sh);
      int r = neighbor_elem(mesh, e, 1, &sh);
      if (l < 0 || r < 0) continue;
      double dx = mesh.measure[e];
      double thresh = cfg.m_tvb * dx * dx;

      ripa_eigenvectors(dim, ubar[e].data(), par.g, cfg.dry_tol, {1, 0}, R, L);

      // detection always on the balanced set (dry mode: surface only)
      bool troubled = false;
      int ncheck = cfg.dry_mode ? 1 : nc;
      for (int c = 0; c < nc; ++c) {
        tmp[c] = evaluate(V, basis, e, c, {1, 0}) - vbar[e][c];
        chr[c] = vbar[e][c] - evaluate(V, basis, e, c, {-1, 0});
        dpc[c] = vbar[r][c] - vbar[e][c];
        dmc[c] = vbar[e][c] - vbar[l][c];
      }
      if (cfg.dry_mode) {
        troubled = mm_tvb(tmp[0], dpc[0], dmc[0], thresh) != tmp[0] ||
                   mm_tvb(chr[0], dpc[0], dmc[0], thresh) != chr[0];
        (void)ncheck;
      } else {
        matvec(L, tmp, chp, nc);
        matvec(L, chr, chm, nc);
        matvec(L, dpc, tmp, nc);
        matvec(L, dmc, chr, nc);
        for (int c = 0; c < nc && !troubled; ++c)
          troubled = mm_tvb(chp[c], tmp[c], chr[c], thresh) != chp[c] ||
                     mm_tvb(chm[c], tmp[c], chr[c], thresh) != chm[c];
      }
      if (!troubled) continue;

      // limit the slope of the linear part in characteristic space
      for (int c = 0; c < nc; ++c) {
        sig[c] = W.at(e, c, 1) * phi1;
        dpc[c] = (*wbar)[r][c] - (*wbar)[e][c];
        dmc[c] = (*wbar)[e][c] - (*wbar)[l][c];
      }
      matvec(L, sig, chp, nc);
      matvec(L, dpc, tmp, nc);
      matvec(L, dmc, chr, nc);
      for (int c = 0; c < nc; ++c)
        chm[c] = mm_tvb(chp[c], tmp[c], chr[c], thresh);
      matvec(R, chm, sig, nc);

      for (int c = 0; c < nc; ++c) {
        double mode0 = W.at(e, c, 0);
        double mode1 = sig[c] / phi1;
        if (cfg.dry_mode) {
          out.at(e, c, 0) = mode0;
          out.at(e, c, 1) = mode1;
          for (int j = 2; j < nb; ++j) out.at(e, c, j) = 0.0;
        } else {
          // back out the physical fields from the limited balanced ones
          double bsub = c == 0 ? 1.0 : (c == ieta ? ratio[e] : 0.0);
          out.at(e, c, 0) = mode0 - bsub * b.at(e, 0, 0);
          out.at(e, c, 1) = mode1 - bsub * b.at(e, 0, 1);
          for (int j = 2; j < nb; ++j) out.at(e, c, j) = -bsub * b.at(e, 0, j);
        }
      }
    }
    state = out;
    return;
  }

  // 2D, Cockburn-Shu construction at edge midpoints
  const Vec2 refmid[3] = {{0.5, 0.5}, {0.0, 0.5}, {0.5, 0.0}};
  DGField out = state;
  std::vector<double> phi(nb);
  for (int e = 0; e < state.nelem; ++e) {
    int nbr[3];
    Vec2 nshift[3];
    bool full = true;
    for (int i = 0; i < 3; ++i) {
      nbr[i] = neighbor_elem(mesh, e, i, &nshift[i]);
      if (nbr[i] < 0) full = false;
    }
    if (!full) continue;
    Vec2 x0 = mesh.centroid[e];
    Vec2 xn[3];
    for (int i = 0; i < 3; ++i) xn[i] = mesh.centroid[nbr[i]] + nshift[i];

    double dev[3][4], devmod[3][4];
    bool troubled = false;
    for (int i = 0; i < 3; ++i) {
      Vec2 mi = mesh.to_physical(e, refmid[i]);
      double hK = norm(mi - x0);
      double thresh = cfg.m_tvb * hK * hK;

      // nonnegative expansion of the midpoint direction over two neighbors
      double a1 = 0, a2 = 0;
      int pa = -1, pb = -1;
      for (int p = 0; p < 3 && pa < 0; ++p) {
        int qa = p, qb = (p + 1) % 3;
        Mat2 A{{xn[qa][0] - x0[0], xn[qb][0] - x0[0], xn[qa][1] - x0[1],
                xn[qb][1] - x0[1]}};
        if (std::abs(det(A)) < 1e-14) continue;
        Vec2 al = inverse(A) * (mi - x0);
        if (al[0] >= -1e-12 && al[1] >= -1e-12) {
          a1 = std::max(0.0, al[0]);
          a2 = std::max(0.0, al[1]);
          pa = qa;
          pb = qb;
        }
      }
      if (pa < 0) {
        full = false;
        break;
      }

      basis.eval_all(refmid[i], phi.data());
      int ge = mesh.elem_edges[e][i];
      Vec2 n = mesh.elem_edge_sign[e][i] > 0
                   ? mesh.edge_normal[ge]
                   : Vec2{-mesh.edge_normal[ge][0], -mesh.edge_normal[ge][1]};
      ripa_eigenvectors(dim, ubar[e].data(), par.g, cfg.dry_tol, n, R, L);

      for (int c = 0; c < nc; ++c) {
        tmp[c] = eval_modes(V.modes(e, c), phi.data(), nb) - vbar[e][c];
        dpc[c] = a1 * (vbar[nbr[pa]][c] - vbar[e][c]) +
                 a2 * (vbar[nbr[pb]][c] - vbar[e][c]);
      }
      if (cfg.dry_mode) {
        // detection on the surface alone, modification arguments from U
        double lim = mm_tvb2(tmp[0], cfg.nu * dpc[0], thresh);
        troubled = troubled || lim != tmp[0];
        for (int c = 0; c < nc; ++c) {
          sig[c] = eval_modes(W.modes(e, c), phi.data(), nb) - (*wbar)[e][c];
          dmc[c] = a1 * ((*wbar)[nbr[pa]][c] - (*wbar)[e][c]) +
                   a2 * ((*wbar)[nbr[pb]][c] - (*wbar)[e][c]);
        }
        matvec(L, sig, chp, nc);
        matvec(L, dmc, chm, nc);
        for (int c = 0; c < nc; ++c)
          chr[c] = mm_tvb2(chp[c], cfg.nu * chm[c], thresh);
        matvec(R, chr, devmod[i], nc);
      } else {
        matvec(L, tmp, chp, nc);
        matvec(L, dpc, chm, nc);
        for (int c = 0; c < nc; ++c) {
          chr[c] = mm_tvb2(chp[c], cfg.nu * chm[c], thresh);
          troubled = troubled || chr[c] != chp[c];
        }
        matvec(R, chr, dev[i], nc);
        for (int c = 0; c < nc; ++c) devmod[i][c] = dev[i][c];
      }
    }
    if (!full || !troubled) continue;

    // enforce zero-sum of the midpoint deviations, then rebuild the linear
    for (int c = 0; c < nc; ++c) {
      double pos = 0, neg = 0;
      for (int i = 0; i < 3; ++i) {
        pos += std::max(0.0, devmod[i][c]);
        neg += std::max(0.0, -devmod[i][c]);
      }
      double tp = pos > 0 ? std::min(1.0, neg / pos) : 0.0;
      double tn = neg > 0 ? std::min(1.0, pos / neg) : 0.0;
      for (int i = 0; i < 3; ++i)
        devmod[i][c] = tp * std::max(0.0, devmod[i][c]) -
                       tn * std::max(0.0, -devmod[i][c]);
    }
    for (int c = 0; c < nc; ++c) {
      // p = sum_i (wbar + dev_i) * (1 - 2*lambda_i)
      double m1 = 0, m2 = 0;
      for (int q = 0; q < basis.n_vol(); ++q) {
        Vec2 xi = basis.vol.pts[q];
        double lam[3] = {1.0 - xi[0] - xi[1], xi[0], xi[1]};
        double p = 0;
        for (int i = 0; i < 3; ++i)
          p += ((*wbar)[e][c] + devmod[i][c]) * (1.0 - 2.0 * lam[i]);
        m1 += basis.vol.w[q] * p * basis.vol_val[q * nb + 1];
        m2 += basis.vol.w[q] * p * basis.vol_val[q * nb + 2];
      }
      double mode0 = W.at(e, c, 0);
      if (cfg.dry_mode) {
        out.at(e, c, 0) = mode0;
        out.at(e, c, 1) = m1;
        out.at(e, c, 2) = m2;
        for (int j = 3; j < nb; ++j) out.at(e, c, j) = 0.0;
      } else {
        double bsub = c == 0 ? 1.0 : (c == ieta ? ratio[e] : 0.0);
        out.at(e, c, 0) = mode0 - bsub * b.at(e, 0, 0);
        out.at(e, c, 1) = m1 - bsub * b.at(e, 0, 1);
        out.at(e, c, 2) = m2 - bsub * b.at(e, 0, 2);
        for (int j = 3; j < nb; ++j) out.at(e, c, j) = -bsub * b.at(e, 0, j);
      }
    }
  }
  state = out;
}

double pp_scale_component(DGField& f, int comp, const ReferenceBasis& basis,
                          std::vector<double>* lambdas) {
  double global_min = 0.0;
  if (lambdas) lambdas->assign(f.nelem, 1.0);
  for (int e = 0; e < f.nelem; ++e) {
    double avg = cell_average(f, basis, e, comp);
    if (avg < -1e-13 * std::max(1.0, std::abs(avg)))
      throw std::runtime_error(
          "PP precondition violated; reduce CFL (negative cell average)");
    double mn = avg;
    for (int p = 0; p < basis.n_pp(); ++p) {
      double v = eval_modes(f.modes(e, comp), &basis.pp_val[p * basis.nb],
                            basis.nb);
      mn = std::min(mn, v);
    }
    if (mn < 0.0 && avg - mn > 0.0) {
      double lam = std::max(0.0, avg / (avg - mn));
      for (int j = 1; j < f.nb; ++j) f.at(e, comp, j) *= lam;
      if (lambdas) (*lambdas)[e] = lam;
    }
    global_min = std::min(global_min, mn);
  }
  return global_min;
}

PPResult pp_limit(DGField& state, const ReferenceBasis& basis) {
  PPResult res;
  pp_scale_component(state, 0, basis, &res.lambda_h);
  pp_scale_component(state, state.ncomp - 1, basis, &res.lambda_eta);
  return res;
}

void bottom_correction(DGField& b, const DGField& h_before,
                       const DGField& h_after) {
  for (int e = 0; e < b.nelem; ++e)
    for (int j = 0; j < b.nb; ++j)
      b.at(e, 0, j) -= h_after.at(e, 0, j) - h_before.at(e, 0, j);
}

void dry_fix(DGField& state, const ReferenceBasis& basis, double dry_tol) {
  int nmom = state.ncomp - 2;  // momentum components sit between h and eta
  for (int e = 0; e < state.nelem; ++e) {
    if (cell_average(state, basis, e, 0) < dry_tol)
      for (int c = 1; c <= nmom; ++c)
        for (int j = 0; j < state.nb; ++j) state.at(e, c, j) = 0.0;
  }
}

double min_at_pp(const DGField& f, int comp, const ReferenceBasis& basis) {
  double mn = std::numeric_limits<double>::max();
  for (int e = 0; e < f.nelem; ++e)
    for (int p = 0; p < basis.n_pp(); ++p)
      mn = std::min(mn, eval_modes(f.modes(e, comp),
                                   &basis.pp_val[p * basis.nb], basis.nb));
  return mn;
}

}  // namespace ripadg
