#include "ripadg/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ripadg {

namespace {

constexpr double kPi = 3.14159265358979323846;

double bump(double x, double amp, double center, double halfwidth) {
  if (x <= center - halfwidth || x >= center + halfwidth) return 0.0;
  return amp * (std::cos(10.0 * kPi * (x - center)) + 1.0);
}

std::vector<Problem> make_registry() {
  std::vector<Problem> reg;

  {
    Problem p;
    p.id = "wb1d-step";
    p.lo = {0, 0};
    p.hi = {1, 0};
    p.lake_at_rest = true;
    p.c_theta = 10.0;
    p.c_surface = 2.0;
    // the state is constant near both ends, so the periodic wrap is exact;
    // extrapolation boundaries slowly pump round-off out of the rest state
    p.bc.x = BoundaryKind::periodic;
    p.bottom = [](Vec2 x) {
      return (x[0] > 0.3 && x[0] < 0.7) ? 1.0 : 0.0;
    };
    reg.push_back(p);
  }
  {
    Problem p;
    p.id = "wb1d-bumps";
    p.lo = {-2, 0};
    p.hi = {2, 0};
    p.lake_at_rest = true;
    p.c_theta = 4.0;
    p.c_surface = 6.0;
    p.bc.x = BoundaryKind::periodic;
    p.bottom = [](Vec2 x) {
      return bump(x[0], 0.85, -0.9, 0.1) + bump(x[0], 1.25, 0.4, 0.1);
    };
    reg.push_back(p);
  }
  {
    Problem p;
    p.id = "accuracy1d";
    p.lo = {0, 0};
    p.hi = {1, 0};
    p.t_final = 0.04;
    // large enough that the minmod threshold M dx^2 clears the curvature of
    // the smooth extrema on every grid in the refinement study
    p.m_tvb = 1.0e4;
    p.bc.x = BoundaryKind::periodic;
    p.bc.period = {1, 0};
    p.bottom = [](Vec2 x) {
      double s = std::sin(kPi * x[0]);
      return s * s;
    };
    p.init = [](Vec2 x, double* u) {
      double h = 5.0 + std::exp(std::sin(2.0 * kPi * x[0]));
      double vel = std::sin(std::cos(2.0 * kPi * x[0])) / h;
      double th = std::sin(2.0 * kPi * x[0]) + 2.0;
      u[0] = h;
      u[1] = h * vel;
      u[2] = h * th;
    };
    reg.push_back(p);
  }
  for (int variant = 0; variant < 2; ++variant) {
    Problem p;
    p.id = variant == 0 ? "perturb1d-surface" : "perturb1d-temp";
    p.lo = {-4, 0};
    p.hi = {2, 0};
    p.t_final = 0.4;
    p.bottom = [](Vec2 x) {
      return bump(x[0], 0.85, -0.9, 0.1) + bump(x[0], 1.25, 0.4, 0.1);
    };
    double eps = 0.01;
    auto bot = p.bottom;
    if (variant == 0) {
      p.init = [bot, eps](Vec2 x, double* u) {
        bool in = x[0] > -1.5 && x[0] < -1.4;
        double h = 6.0 - bot(x) + (in ? eps : 0.0);
        u[0] = h;
        u[1] = 0.0;
        u[2] = 4.0 * h;
      };
    } else {
      p.init = [bot, eps](Vec2 x, double* u) {
        bool in = x[0] > -1.5 && x[0] < -1.4;
        double h = 6.0 - bot(x) + (in ? eps : 0.0);
        double th = in ? 24.0 / (6.0 + eps) : 4.0;
        u[0] = h;
        u[1] = 0.0;
        u[2] = th * h;
      };
    }
    reg.push_back(p);
  }
  {
    Problem p;
    p.id = "dambreak1d";
    p.lo = {-1, 0};
    p.hi = {1, 0};
    p.t_final = 0.14;
    p.bottom = [](Vec2 x) {
      return bump(x[0], 0.5, -0.3, 0.1) + bump(x[0], 0.75, 0.3, 0.1);
    };
    auto bot = p.bottom;
    p.init = [bot](Vec2 x, double* u) {
      double h = (x[0] < 0.0 ? 5.0 : 2.0) - bot(x);
      double th = x[0] < 0.0 ? 3.0 : 5.0;
      u[0] = h;
      u[1] = 0.0;
      u[2] = th * h;
    };
    reg.push_back(p);
  }
  {
    Problem p;
    p.id = "drydam1d";
    p.lo = {-1, 0};
    p.hi = {1, 0};
    p.t_final = 0.3;
    p.cfl = 0.15;
    p.dry_mode = true;
    p.bottom = [](Vec2 x) {
      return bump(x[0], 2.0, -0.3, 0.1) + bump(x[0], 0.5, 0.3, 0.1);
    };
    auto bot = p.bottom;
    p.init = [bot](Vec2 x, double* u) {
      double h = (x[0] < 0.0 ? 5.0 : 1.0) - bot(x);
      h = std::max(h, 0.0);
      double th = x[0] < 0.0 ? 1.0 : 5.0;
      u[0] = h;
      u[1] = 0.0;
      u[2] = th * h;
    };
    reg.push_back(p);
  }
  {
    Problem p;
    p.id = "wb2d";
    p.dim = 2;
    p.lo = {-1, -1};
    p.hi = {1, 1};
    p.t_final = 0.12;
    p.cfl = 0.1;
    p.delta = 1.0;
    p.bc.x = p.bc.y = BoundaryKind::periodic;
    p.bc.period = {2, 2};
    p.lake_at_rest = true;
    p.c_theta = 4.0 / 3.0;
    p.c_surface = 3.0;
    p.bottom = [](Vec2 x) {
      if (x[0] < 0.0)
        return 0.5 * std::exp(-100.0 * ((x[0] + 0.5) * (x[0] + 0.5) +
                                        (x[1] + 0.5) * (x[1] + 0.5)));
      return 0.6 * std::exp(-100.0 * ((x[0] - 0.5) * (x[0] - 0.5) +
                                      (x[1] - 0.5) * (x[1] - 0.5)));
    };
    reg.push_back(p);
  }
  {
    Problem p;
    p.id = "perturb2d";
    p.dim = 2;
    p.lo = {-2, 0};
    p.hi = {2, 1};
    p.t_final = 0.16;
    p.cfl = 0.1;
    // depth monitor off: it locks onto the static bottom hump and spreads the
    // elements there instead of tracking the outgoing wave
    p.delta = 0.0;
    p.bc.x = p.bc.y = BoundaryKind::reflective;
    p.bottom = [](Vec2 x) {
      return 3.0 * std::exp(-5.0 * (x[0] - 0.9) * (x[0] - 0.9) -
                            50.0 * (x[1] - 0.5) * (x[1] - 0.5));
    };
    auto bot = p.bottom;
    double eps = 0.1;
    p.init = [bot, eps](Vec2 x, double* u) {
      bool in = x[0] > 0.05 && x[0] < 0.15;
      double h = 6.0 - bot(x) + (in ? eps : 0.0);
      double th = in ? 24.0 / (6.0 + eps) : 4.0;
      u[0] = h;
      u[1] = 0.0;
      u[2] = 0.0;
      u[3] = th * h;
    };
    reg.push_back(p);
  }

  // rest-state problems initialize from the surface constants
  for (Problem& p : reg) {
    if (!p.lake_at_rest) continue;
    auto bot = p.bottom;
    double c1 = p.c_theta, c2 = p.c_surface;
    int dim = p.dim;
    p.init = [bot, c1, c2, dim](Vec2 x, double* u) {
      double h = c2 - bot(x);
      u[0] = h;
      u[1] = 0.0;
      if (dim == 2) u[2] = 0.0;
      u[dim + 1] = c1 * h;
    };
  }
  return reg;
}

const std::vector<Problem>& registry() {
  static const std::vector<Problem> reg = make_registry();
  return reg;
}

}  // namespace

const Problem& find_problem(const std::string& id) {
  for (const Problem& p : registry())
    if (p.id == id) return p;
  throw std::invalid_argument("unknown problem: " + id);
}

std::vector<std::string> problem_ids() {
  std::vector<std::string> ids;
  for (const Problem& p : registry()) ids.push_back(p.id);
  return ids;
}

Mesh make_problem_mesh(const Problem& p, int n) {
  if (p.dim == 1) return interval_mesh(p.lo[0], p.hi[0], n, p.bc.x);
  if (n % 4 != 0) throw std::invalid_argument("2D N must be 4*nx*ny");
  int quads = n / 4;
  double aspect = (p.hi[0] - p.lo[0]) / (p.hi[1] - p.lo[1]);
  int ny = std::max(1, static_cast<int>(std::lround(std::sqrt(quads / aspect))));
  while (quads % ny != 0) --ny;
  int nx = quads / ny;
  return rect_mesh(p.lo, p.hi, nx, ny, p.bc);
}

}  // namespace ripadg
