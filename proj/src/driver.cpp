#include "ripadg/driver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "ripadg/mesh_adapt.hpp"
#include "ripadg/remap.hpp"
#include "ripadg/time_integration.hpp"

namespace ripadg {

namespace {

ErrorReport report_from_samples(
    const Mesh& mesh, const ReferenceBasis& basis,
    const std::vector<std::string>& names,
    const std::function<void(int, int, double*)>& diff_at) {
  // diff_at(elem, quad point, out[ncomp]) fills the pointwise deviations
  int nc = static_cast<int>(names.size());
  ErrorReport rep;
  rep.names = names;
  rep.l1.assign(nc, 0.0);
  rep.linf.assign(nc, 0.0);
  std::vector<double> d(nc);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    double scale = mesh.measure[e] / basis.ref_measure;
    for (int q = 0; q < basis.n_vol(); ++q) {
      diff_at(e, q, d.data());
      for (int c = 0; c < nc; ++c) {
        rep.l1[c] += scale * basis.vol.w[q] * std::abs(d[c]);
        rep.linf[c] = std::max(rep.linf[c], std::abs(d[c]));
      }
    }
  }
  return rep;
}

std::vector<std::string> component_names(int dim) {
  return dim == 1 ? std::vector<std::string>{"h", "hu", "htheta"}
                  : std::vector<std::string>{"h", "hu", "hv", "htheta"};
}

void write_snapshot(const RunConfig& cfg, int frame, const Mesh& mesh,
                    const ReferenceBasis& basis, const DGField& U,
                    const DGField& b) {
  std::string stem = cfg.out_dir + "/solution_" + std::to_string(frame);
  if (mesh.dim == 1)
    write_solution_1d(stem + ".txt", mesh, basis, U, b);
  else
    write_solution_vtk(stem + ".vtk", mesh, basis, U, b);
}

}  // namespace

RunResult run(RunConfig cfg) {
  const Problem& p = find_problem(cfg.problem);
  if (cfg.t_final < 0.0) cfg.t_final = p.t_final;
  if (cfg.cfl < 0.0) cfg.cfl = p.cfl;
  if (cfg.m_tvb < 0.0) cfg.m_tvb = p.m_tvb;
  if (cfg.delta < 0.0) cfg.delta = p.delta;
  if (cfg.mesh_mode != "fixed" && cfg.mesh_mode != "moving")
    throw std::invalid_argument("mesh mode must be fixed or moving");

  RunResult r;
  r.cfg = cfg;
  r.mesh = make_problem_mesh(p, cfg.n);
  r.basis = ReferenceBasis::make(p.dim, cfg.degree);
  int nc = ripa_ncomp(p.dim);
  auto bottom1 = [&p](Vec2 x, double* out) { out[0] = p.bottom(x); };
  // interpolate the bottom at the lattice nodes instead of L2-projecting it:
  // the traces then match across faces, so the hydrostatic corrections at the
  // interfaces cancel and the bottom contributes no extra interface error
  r.b = nodal_project(r.mesh, r.basis, 1, bottom1);
  if (p.lake_at_rest) {
    // assemble the rest state from the discrete bottom so that h + b and
    // eta - c_theta * h vanish coefficient by coefficient, not just up to
    // the projection error of two separately projected functions
    r.U = DGField(r.mesh.n_elements(), nc, r.basis.nb);
    double surf0 = p.c_surface * std::sqrt(r.basis.ref_measure);
    for (int e = 0; e < r.mesh.n_elements(); ++e) {
      for (int j = 0; j < r.basis.nb; ++j) {
        double hj = (j == 0 ? surf0 : 0.0) - r.b.at(e, 0, j);
        r.U.at(e, 0, j) = hj;
        r.U.at(e, nc - 1, j) = p.c_theta * hj;
      }
    }
  } else {
    r.U = l2_project(r.mesh, r.basis, nc, p.init);
  }

  RipaParams par;
  LimiterConfig lim;
  lim.m_tvb = cfg.m_tvb;
  lim.dry_tol = par.dry_tol;
  lim.dry_mode = p.dry_mode;
  AdaptConfig acfg;
  acfg.delta = cfg.delta;
  bool moving = cfg.mesh_mode == "moving";
  double total0 = r.mesh.domain_measure;
  r.min_measure = r.mesh.min_measure();

  bool writing = !cfg.out_dir.empty();
  if (writing) {
    std::filesystem::create_directories(cfg.out_dir);
    write_manifest(cfg.out_dir + "/manifest.txt", cfg);
    append_mesh_trajectory(cfg.out_dir + "/mesh_trajectory.txt", r.mesh, 0.0,
                           true);
    write_snapshot(cfg, 0, r.mesh, r.basis, r.U, r.b);
  }
  double frame_dt = cfg.frames > 0 ? cfg.t_final / cfg.frames : 0.0;
  int frame = 1;

  StepControl ctl;
  ctl.cfl = cfg.cfl;
  ctl.t_final = cfg.t_final;
  const double t_eps = 1e-13 * (1.0 + cfg.t_final);
  const int max_steps = 2000000;

  while (ctl.t < cfg.t_final - t_eps && r.steps < max_steps) {
    if (moving && r.steps % cfg.adapt_every == 0) {
      MetricField metric = adaptation_metric(r.U, r.b, r.mesh, r.basis, par,
                                             acfg);
      std::vector<Vec2> coords = move_mesh(r.mesh, metric, acfg);
      RemapPlan plan = plan_remap(r.mesh, coords, r.basis);
      if (!plan.identity) {
        remap_state(r.U, r.b, plan, r.basis);
        r.mesh.set_coordinates(coords);
        r.min_measure = std::min(r.min_measure, r.mesh.min_measure());
        r.measure_drift =
            std::max(r.measure_drift,
                     std::abs(r.mesh.domain_measure - total0) / total0);
      }
    }
    double dt = compute_dt(r.U, r.mesh, r.basis, par, ctl);
    if (!(dt > 0.0)) break;
    StepStats st = ssp_rk3_step(r.U, r.b, r.mesh, r.basis, par, lim, dt);
    r.min_h_pp = std::min(r.min_h_pp, st.min_h_pp);
    r.min_eta_pp = std::min(r.min_eta_pp, st.min_eta_pp);
    ctl.t += dt;
    ++r.steps;
    if (writing && frame_dt > 0.0 && ctl.t >= frame * frame_dt - t_eps &&
        frame <= cfg.frames) {
      append_mesh_trajectory(cfg.out_dir + "/mesh_trajectory.txt", r.mesh,
                             ctl.t, false);
      write_snapshot(cfg, frame, r.mesh, r.basis, r.U, r.b);
      ++frame;
    }
  }
  r.t = ctl.t;

  if (writing) {
    std::string stem = cfg.out_dir + "/solution_final";
    if (r.mesh.dim == 1)
      write_solution_1d(stem + ".txt", r.mesh, r.basis, r.U, r.b);
    else
      write_solution_vtk(stem + ".vtk", r.mesh, r.basis, r.U, r.b);
    ErrorReport rep;
    if (p.lake_at_rest) {
      rep = steady_state_errors(r);
    } else {
      // conservation residuals relative to the projected initial data
      Mesh mesh0 = make_problem_mesh(p, cfg.n);
      DGField U0 = l2_project(mesh0, r.basis, nc, p.init);
      rep.names = component_names(p.dim);
      for (int c = 0; c < nc; ++c) {
        double drift = integrate(r.U, r.mesh, r.basis, c) -
                       integrate(U0, mesh0, r.basis, c);
        rep.names[c] = "mass_" + rep.names[c];
        rep.l1.push_back(std::abs(drift));
        rep.linf.push_back(std::abs(drift));
      }
    }
    write_errors_csv(cfg.out_dir + "/errors.csv", rep);
  }
  return r;
}

ErrorReport steady_state_errors(const RunResult& r) {
  const Problem& p = find_problem(r.cfg.problem);
  if (!p.lake_at_rest)
    throw std::invalid_argument("not a rest-state problem: " + p.id);
  int dim = r.mesh.dim;
  std::vector<std::string> names = dim == 1
      ? std::vector<std::string>{"h+b", "hu", "htheta"}
      : std::vector<std::string>{"h+b", "hu", "hv", "htheta"};
  return report_from_samples(
      r.mesh, r.basis, names, [&](int e, int q, double* d) {
        const double* phi = &r.basis.vol_val[q * r.basis.nb];
        double h = eval_modes(r.U.modes(e, 0), phi, r.basis.nb);
        double bb = eval_modes(r.b.modes(e, 0), phi, r.basis.nb);
        double eta = eval_modes(r.U.modes(e, r.U.ncomp - 1), phi, r.basis.nb);
        d[0] = h + bb - p.c_surface;
        d[1] = eval_modes(r.U.modes(e, 1), phi, r.basis.nb);
        if (dim == 2) d[2] = eval_modes(r.U.modes(e, 2), phi, r.basis.nb);
        d[dim + 1] = eta - p.c_theta * h;
      });
}

ErrorReport errors_vs_exact(
    const RunResult& r, const std::function<void(Vec2, double*)>& exact) {
  int nc = r.U.ncomp;
  std::vector<double> ref(nc);
  return report_from_samples(
      r.mesh, r.basis, component_names(r.mesh.dim), [&](int e, int q, double* d) {
        exact(r.mesh.to_physical(e, r.basis.vol.pts[q]), ref.data());
        const double* phi = &r.basis.vol_val[q * r.basis.nb];
        for (int c = 0; c < nc; ++c)
          d[c] = eval_modes(r.U.modes(e, c), phi, r.basis.nb) - ref[c];
      });
}

int locate_point(const Mesh& mesh, Vec2 x) {
  int best = 0;
  double best_dist = 1e300;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    Vec2 ref = mesh.to_reference(e, x);
    double inside;
    if (mesh.dim == 1) {
      inside = std::max(std::abs(ref[0]) - 1.0, 0.0);
    } else {
      inside = std::max({-ref[0], -ref[1], ref[0] + ref[1] - 1.0, 0.0});
    }
    if (inside == 0.0) return e;
    if (inside < best_dist) {
      best_dist = inside;
      best = e;
    }
  }
  return best;
}

ErrorReport errors_vs_reference(const RunResult& r, const RunResult& ref) {
  int nc = r.U.ncomp;
  return report_from_samples(
      r.mesh, r.basis, component_names(r.mesh.dim), [&](int e, int q, double* d) {
        Vec2 x = r.mesh.to_physical(e, r.basis.vol.pts[q]);
        int re = locate_point(ref.mesh, x);
        Vec2 rref = ref.mesh.to_reference(re, x);
        const double* phi = &r.basis.vol_val[q * r.basis.nb];
        for (int c = 0; c < nc; ++c)
          d[c] = eval_modes(r.U.modes(e, c), phi, r.basis.nb) -
                 evaluate(ref.U, ref.basis, re, c, rref);
      });
}

}  // namespace ripadg
