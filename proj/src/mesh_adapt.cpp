#include "ripadg/mesh_adapt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ripadg {

namespace {

// Neighbor across local edge l of element e, with the translation that brings
// the neighbor's points into e's frame (nonzero across periodic edges).
struct Adj {
  int elem = -1;
  Vec2 shift{0, 0};
};

Adj adjacent(const Mesh& mesh, int e, int l) {
  int ge = mesh.elem_edges[e][l];
  if (ge < 0) return {};
  const Edge& ed = mesh.edges[ge];
  if (ed.kind == BoundaryKind::interior)
    return {ed.left == e ? ed.right : ed.left, {0, 0}};
  if (ed.kind == BoundaryKind::periodic)
    return {mesh.edges[ed.partner].left, {-ed.shift[0], -ed.shift[1]}};
  return {};
}

int nlocal(const Mesh& mesh) { return mesh.dim == 1 ? 2 : 3; }

}  // namespace

std::vector<Mat2> recover_hessian(const std::vector<double>& vals,
                                  const Mesh& mesh) {
  int ne = mesh.n_elements();
  int ncoef = mesh.dim == 1 ? 3 : 6;
  std::vector<Mat2> H(ne, Mat2::zero());

  std::vector<int> stamp(ne, -1);
  for (int e0 = 0; e0 < ne; ++e0) {
    // grow edge-neighbor rings until the fit is comfortably overdetermined
    std::vector<std::pair<int, Vec2>> patch{{e0, Vec2{0, 0}}};
    stamp[e0] = e0;
    size_t ring_begin = 0;
    for (int ring = 0; ring < 4 && static_cast<int>(patch.size()) < 2 * ncoef;
         ++ring) {
      size_t ring_end = patch.size();
      for (size_t i = ring_begin; i < ring_end; ++i) {
        auto [pe, psh] = patch[i];
        for (int l = 0; l < nlocal(mesh); ++l) {
          Adj a = adjacent(mesh, pe, l);
          if (a.elem < 0 || stamp[a.elem] == e0) continue;
          stamp[a.elem] = e0;
          patch.emplace_back(a.elem, psh + a.shift);
        }
      }
      ring_begin = ring_end;
    }
    if (static_cast<int>(patch.size()) < ncoef) continue;

    Vec2 x0 = mesh.centroid[e0];
    double rad = 0.0;
    for (auto& [pe, sh] : patch)
      rad = std::max(rad, norm(mesh.centroid[pe] + sh - x0));
    if (rad <= 0.0) continue;

    // normal equations for q ~ a0 + a.dx + quadratic terms in scaled coords
    std::vector<double> A(ncoef * ncoef, 0.0), rhs(ncoef, 0.0), row(ncoef);
    for (auto& [pe, sh] : patch) {
      Vec2 d = mesh.centroid[pe] + sh - x0;
      double dx = d[0] / rad, dy = d[1] / rad;
      row[0] = 1.0;
      row[1] = dx;
      row[2] = dx * dx;
      if (mesh.dim == 2) {
        row[2] = dy;
        row[3] = dx * dx;
        row[4] = dx * dy;
        row[5] = dy * dy;
      }
      for (int i = 0; i < ncoef; ++i) {
        for (int j = 0; j < ncoef; ++j) A[i * ncoef + j] += row[i] * row[j];
        rhs[i] += row[i] * vals[pe];
      }
    }
    if (!solve_dense(ncoef, A, rhs)) continue;
    double s = 1.0 / (rad * rad);
    if (mesh.dim == 1) {
      H[e0](0, 0) = 2.0 * rhs[2] * s;
    } else {
      H[e0] = Mat2{{2.0 * rhs[3] * s, rhs[4] * s, rhs[4] * s, 2.0 * rhs[5] * s}};
    }
  }
  return H;
}

MetricField metric_from_hessian(const std::vector<Mat2>& H, const Mesh& mesh,
                                double beta_floor) {
  int ne = mesh.n_elements();
  std::vector<SymEig2> eig(ne);
  std::vector<std::array<double, 2>> ah(ne);  // absolute eigenvalues
  double target = 0.0;
  for (int e = 0; e < ne; ++e) {
    eig[e] = sym_eig(H[e]);
    if (mesh.dim == 1) {
      // the 1D hessian lives in slot (0,0); sym_eig would sort it away
      ah[e] = {std::abs(H[e](0, 0)), 0.0};
    } else {
      ah[e] = {std::abs(eig[e].lambda[0]), std::abs(eig[e].lambda[1])};
    }
    double d = mesh.dim == 1 ? ah[e][0] : ah[e][0] * ah[e][1];
    target += mesh.measure[e] * std::cbrt(d);
  }
  target *= 2.0;

  auto total = [&](double beta) {
    double s = 0.0;
    for (int e = 0; e < ne; ++e) {
      double d = mesh.dim == 1 ? beta + ah[e][0]
                               : (beta + ah[e][0]) * (beta + ah[e][1]);
      s += mesh.measure[e] * std::cbrt(d);
    }
    return s;
  };

  double lo = 0.0, hi = beta_floor;
  while (total(hi) < target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (total(mid) < target ? lo : hi) = mid;
  }
  double beta = std::max(0.5 * (lo + hi), beta_floor);

  MetricField out;
  out.beta = beta;
  out.m.resize(ne);
  for (int e = 0; e < ne; ++e) {
    if (mesh.dim == 1) {
      out.m[e] = Mat2{{std::pow(beta + ah[e][0], 0.2), 0, 0, 1.0}};
    } else {
      double l0 = beta + ah[e][0], l1 = beta + ah[e][1];
      double scale = std::pow(l0 * l1, -1.0 / 6.0);
      out.m[e] = sym_apply(eig[e], {scale * l0, scale * l1});
    }
  }
  return out;
}

Mat2 metric_intersect(const Mat2& m1, const Mat2& m2, double delta) {
  SymEig2 e1 = sym_eig(m1);
  if (e1.lambda[0] <= 0.0) throw std::invalid_argument("metric not SPD");
  SymEig2 e2 = sym_eig(m2);
  if (e2.lambda[0] <= 0.0) throw std::invalid_argument("metric not SPD");

  Mat2 rt = sym_apply(e1, {std::sqrt(e1.lambda[0]), std::sqrt(e1.lambda[1])});
  Mat2 irt = sym_apply(
      e1, {1.0 / std::sqrt(e1.lambda[0]), 1.0 / std::sqrt(e1.lambda[1])});
  Mat2 a = irt * (delta * m2) * irt;
  a(0, 1) = a(1, 0) = 0.5 * (a(0, 1) + a(1, 0));
  SymEig2 ea = sym_eig(a);
  Mat2 mid = sym_apply(ea, {std::max(1.0, ea.lambda[0]),
                            std::max(1.0, ea.lambda[1])});
  Mat2 r = rt * mid * rt;
  r(0, 1) = r(1, 0) = 0.5 * (r(0, 1) + r(1, 0));
  return r;
}

void smooth_metric(std::vector<Mat2>& m, const Mesh& mesh, int sweeps) {
  int ne = mesh.n_elements();
  std::vector<Mat2> next(ne);
  for (int s = 0; s < sweeps; ++s) {
    for (int e = 0; e < ne; ++e) {
      Mat2 acc = mesh.measure[e] * m[e];
      double wsum = mesh.measure[e];
      for (int l = 0; l < nlocal(mesh); ++l) {
        Adj a = adjacent(mesh, e, l);
        if (a.elem < 0) continue;
        acc = acc + mesh.measure[a.elem] * m[a.elem];
        wsum += mesh.measure[a.elem];
      }
      next[e] = (1.0 / wsum) * acc;
    }
    m.swap(next);
  }
}

MetricField adaptation_metric(const DGField& U, const DGField& b,
                              const Mesh& mesh, const ReferenceBasis& basis,
                              const RipaParams& par, const AdaptConfig& cfg) {
  int ne = mesh.n_elements();
  int nc = U.ncomp;
  std::vector<double> lne(ne), lnh(ne);
  for (int e = 0; e < ne; ++e) {
    double h = cell_average(U, basis, e, 0);
    double eta = cell_average(U, basis, e, nc - 1);
    double bb = cell_average(b, basis, e, 0);
    double u = 0, v = 0, th = 0;
    if (h > par.dry_tol) {
      u = cell_average(U, basis, e, 1) / h;
      if (mesh.dim == 2) v = cell_average(U, basis, e, 2) / h;
      th = eta / h;
    }
    double en = 0.5 * (u * u + v * v) + par.g * th * (h + bb);
    lne[e] = std::log(std::max(en, cfg.e_floor));
    lnh[e] = std::log(std::max(h, cfg.h_floor));
  }
  MetricField me = metric_from_hessian(recover_hessian(lne, mesh), mesh,
                                       cfg.beta_floor);
  MetricField mh = metric_from_hessian(recover_hessian(lnh, mesh), mesh,
                                       cfg.beta_floor);
  MetricField out;
  out.beta = me.beta;
  out.m.resize(ne);
  for (int e = 0; e < ne; ++e)
    out.m[e] = metric_intersect(me.m[e], mh.m[e], cfg.delta);
  smooth_metric(out.m, mesh, cfg.smooth_sweeps);
  return out;
}

namespace {

std::vector<Vec2> move_mesh_1d(const Mesh& mesh, const MetricField& metric,
                               const AdaptConfig& cfg) {
  int nv = mesh.n_vertices();
  int ne = mesh.n_elements();

  std::vector<int> vorder(nv), eorder(ne);
  std::iota(vorder.begin(), vorder.end(), 0);
  std::iota(eorder.begin(), eorder.end(), 0);
  std::sort(vorder.begin(), vorder.end(), [&](int a, int bb) {
    return mesh.vertices[a][0] < mesh.vertices[bb][0];
  });
  std::sort(eorder.begin(), eorder.end(), [&](int a, int bb) {
    return mesh.centroid[a][0] < mesh.centroid[bb][0];
  });

  std::vector<double> x(nv), rho(ne);
  for (int i = 0; i < nv; ++i) x[i] = mesh.vertices[vorder[i]][0];
  for (int j = 0; j < ne; ++j) rho[j] = metric.m[eorder[j]](0, 0);

  std::vector<double> cum(nv), xt(nv);
  for (int it = 0; it < cfg.move_iters; ++it) {
    cum[0] = 0.0;
    for (int j = 0; j < ne; ++j)
      cum[j + 1] = cum[j] + rho[j] * (x[j + 1] - x[j]);
    double total = cum[ne];
    if (total <= 0.0) break;
    int seg = 0;
    xt[0] = x[0];
    xt[nv - 1] = x[nv - 1];
    for (int i = 1; i < nv - 1; ++i) {
      double m = total * i / ne;
      while (seg < ne - 1 && cum[seg + 1] < m) ++seg;
      xt[i] = x[seg] + (m - cum[seg]) / rho[seg];
    }
    for (int i = 1; i < nv - 1; ++i)
      x[i] = (1.0 - cfg.omega) * x[i] + cfg.omega * xt[i];
  }

  std::vector<Vec2> out = mesh.vertices;
  for (int i = 0; i < nv; ++i) out[vorder[i]] = {x[i], 0.0};
  return out;
}

// equidistribution/alignment energy of one triangle (theta = 0.1, p = 3);
// with the mesh topology fixed the minimizer sizes elements like a negative
// power of the metric density that grows with p, so the larger exponent buys
// a visibly sharper concentration. The computational element is equilateral,
// so relabeling vertices composes the map with a rotation and the energy
// stays invariant.
double tri_energy(Vec2 a, Vec2 b, Vec2 c, const Mat2& m, const Mat2& minv,
                  double sqdetm) {
  static const Mat2 equi{{1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0}};
  Mat2 ex{{b[0] - a[0], c[0] - a[0], b[1] - a[1], c[1] - a[1]}};
  double d = det(ex);
  if (d <= 0.0) return 1e300;
  Mat2 jm = equi * inverse(ex);  // position -> equilateral frame
  Mat2 t = jm * minv * transpose(jm);
  double area = 0.5 * d;
  double eq = std::pow(det(equi) / (d * sqdetm), 3.0);
  double al = std::pow(trace(t), 3.0);
  return area * sqdetm * (0.1 * al + 0.8 * 8.0 * eq);
}

std::vector<Vec2> move_mesh_2d(const Mesh& mesh, const MetricField& metric,
                               const AdaptConfig& cfg) {
  int nv = mesh.n_vertices();
  int ne = mesh.n_elements();

  std::vector<char> fixed(nv, 0);
  for (const Edge& ed : mesh.edges)
    if (ed.right == -1)
      for (int vv : ed.v) fixed[vv] = 1;

  std::vector<std::vector<int>> star(nv);
  for (int e = 0; e < ne; ++e)
    for (int l = 0; l < 3; ++l) star[mesh.elements[e][l]].push_back(e);

  std::vector<Mat2> minv(ne);
  std::vector<double> sqdetm(ne);
  for (int e = 0; e < ne; ++e) {
    minv[e] = inverse(metric.m[e]);
    sqdetm[e] = std::sqrt(std::max(det(metric.m[e]), 1e-300));
  }

  std::vector<Vec2> x = mesh.vertices;
  auto elem_energy = [&](int e, const std::vector<Vec2>& xx) {
    auto& el = mesh.elements[e];
    return tri_energy(xx[el[0]], xx[el[1]], xx[el[2]], metric.m[e], minv[e],
                      sqdetm[e]);
  };
  auto patch_energy = [&](int vtx, const std::vector<Vec2>& xx) {
    double s = 0.0;
    for (int e : star[vtx]) s += elem_energy(e, xx);
    return s;
  };

  std::vector<Vec2> grad(nv);
  for (int it = 0; it < cfg.move_iters; ++it) {
    // central-difference gradient with a deadband absorbing round-off
    double tau = 1e300;
    bool any = false;
    for (int vtx = 0; vtx < nv; ++vtx) {
      grad[vtx] = {0, 0};
      if (fixed[vtx] || star[vtx].empty()) continue;
      double hloc = 1e300;
      for (int e : star[vtx]) {
        double hk = std::sqrt(2.0 * mesh.measure[e]);
        hloc = std::min(hloc, hk);
      }
      double fd = 1e-6 * hloc;
      double e0 = patch_energy(vtx, x);
      Vec2 g{0, 0};
      for (int d = 0; d < 2; ++d) {
        Vec2 save = x[vtx];
        x[vtx][d] = save[d] + fd;
        double ep = patch_energy(vtx, x);
        x[vtx][d] = save[d] - fd;
        double em = patch_energy(vtx, x);
        x[vtx] = save;
        g[d] = (ep - em) / (2.0 * fd);
      }
      if (norm(g) * hloc < 1e-8 * e0) continue;
      grad[vtx] = g;
      tau = std::min(tau, 0.25 * cfg.omega * hloc / norm(g));
      any = true;
    }
    if (!any) break;

    double before = 0.0;
    for (int e = 0; e < ne; ++e) before += elem_energy(e, x);
    std::vector<Vec2> trial = x;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      for (int vtx = 0; vtx < nv; ++vtx)
        trial[vtx] = x[vtx] - tau * grad[vtx];
      double after = 0.0;
      for (int e = 0; e < ne && after < 1e290; ++e)
        after += elem_energy(e, trial);
      if (after <= before) {  // tangled meshes score 1e300 and are rejected
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) break;
    x = trial;
  }
  return x;
}

}  // namespace

std::vector<Vec2> move_mesh(const Mesh& mesh, const MetricField& metric,
                            const AdaptConfig& cfg) {
  std::vector<Vec2> out = mesh.dim == 1 ? move_mesh_1d(mesh, metric, cfg)
                                        : move_mesh_2d(mesh, metric, cfg);
  Mesh check = mesh.with_coordinates(out);
  if (check.min_measure() <= 0.0) return mesh.vertices;
  return out;
}

}  // namespace ripadg
