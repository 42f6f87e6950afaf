#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "ripadg/ripa.hpp"

using namespace ripadg;

namespace {

// independent transcription of the flux used as an oracle
void flux_oracle_2d(const double* U, double g, Vec2 n, double* out) {
  double h = U[0], hu = U[1], hv = U[2], eta = U[3];
  double u = hu / h, v = hv / h, p = 0.5 * g * eta * h;
  double fx[4] = {hu, hu * u + p, hv * u, eta * u};
  double fy[4] = {hv, hu * v, hv * v + p, eta * v};
  for (int c = 0; c < 4; ++c) out[c] = fx[c] * n[0] + fy[c] * n[1];
}

}  // namespace

TEST_CASE("flux on rest and moving states") {
  double g = 1.0, tol = 1e-6;
  double rest[4] = {2, 0, 0, 20};
  double f[4];
  ripa_flux(2, rest, g, tol, {1, 0}, f);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(20.0).epsilon(1e-14));  // 0.5*1*20*2
  CHECK(f[2] == 0.0);
  CHECK(f[3] == 0.0);

  double U[4] = {1, 1, 0, 1};
  ripa_flux(2, U, g, tol, {1, 0}, f);
  CHECK(f[0] == doctest::Approx(1.0));
  CHECK(f[1] == doctest::Approx(1.5));
  CHECK(f[2] == doctest::Approx(0.0));
  CHECK(f[3] == doctest::Approx(1.0));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> hd(0.5, 2.0), md(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    double R[4] = {hd(rng), md(rng), md(rng), hd(rng)};
    double ang = md(rng);
    Vec2 n{std::cos(ang), std::sin(ang)};
    double a[4], b[4];
    ripa_flux(2, R, g, tol, n, a);
    flux_oracle_2d(R, g, n, b);
    for (int c = 0; c < 4; ++c) CHECK(std::abs(a[c] - b[c]) < 1e-14);
  }
}

TEST_CASE("max wave speed") {
  double g = 1.0, tol = 1e-6;
  double U1[4] = {1, 0, 0, 1};
  CHECK(ripa_max_speed(2, U1, g, tol, {1, 0}) == doctest::Approx(1.0));
  double U2[4] = {1, 1, 0, 1};
  CHECK(ripa_max_speed(2, U2, g, tol, {1, 0}) == doctest::Approx(2.0));

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> hd(0.5, 2.0), md(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    double U[4] = {hd(rng), md(rng), md(rng), hd(rng)};
    Vec2 n{1, 0};
    double u = U[1] / U[0], c = std::sqrt(g * U[3]);
    double brute = std::max({std::abs(u - c), std::abs(u), std::abs(u + c)});
    CHECK(ripa_max_speed(2, U, g, tol, n) == doctest::Approx(brute).epsilon(1e-13));
  }
}

TEST_CASE("Lax-Friedrichs flux") {
  double g = 1.0, tol = 1e-6;
  double U[4] = {1.3, 0.4, -0.2, 2.0};
  double alpha = ripa_max_speed(2, U, g, tol, {0, 1});
  double lf[4], f[4];
  ripa_lax_friedrichs(2, U, U, g, tol, {0, 1}, alpha, lf);
  ripa_flux(2, U, g, tol, {0, 1}, f);
  for (int c = 0; c < 4; ++c) CHECK(std::abs(lf[c] - f[c]) < 1e-14);

  // duplicate-formula check on a random pair
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> hd(0.5, 2.0), md(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    double Ui[4] = {hd(rng), md(rng), md(rng), hd(rng)};
    double Ue[4] = {hd(rng), md(rng), md(rng), hd(rng)};
    Vec2 n{0.6, 0.8};
    double a = std::max(ripa_max_speed(2, Ui, g, tol, n),
                        ripa_max_speed(2, Ue, g, tol, n));
    double got[4], fi[4], fe[4];
    ripa_lax_friedrichs(2, Ui, Ue, g, tol, n, a, got);
    flux_oracle_2d(Ui, g, n, fi);
    flux_oracle_2d(Ue, g, n, fe);
    for (int c = 0; c < 4; ++c) {
      double expect = 0.5 * (fi[c] + fe[c] - a * (Ue[c] - Ui[c]));
      CHECK(std::abs(got[c] - expect) < 1e-14);
    }
  }
}

TEST_CASE("hydrostatic reconstruction") {
  double tol = 1e-6;
  // bottom step: both sides clamp to the same depth-1 state
  double Ui[4] = {2, 0, 0, 20}, Ue[4] = {1, 0, 0, 10};
  double Uis[4], Ues[4];
  hydrostatic_reconstruct(2, Ui, Ue, 0.0, 1.0, tol, Uis, Ues);
  CHECK(Uis[0] == doctest::Approx(1.0));
  CHECK(Uis[1] == 0.0);
  CHECK(Uis[2] == 0.0);
  CHECK(Uis[3] == doctest::Approx(10.0));
  for (int c = 0; c < 4; ++c) CHECK(Uis[c] == doctest::Approx(Ues[c]));

  // equal bottoms: identity
  hydrostatic_reconstruct(2, Ui, Ue, 0.3, 0.3, tol, Uis, Ues);
  for (int c = 0; c < 4; ++c) {
    CHECK(Uis[c] == doctest::Approx(Ui[c]));
    CHECK(Ues[c] == doctest::Approx(Ue[c]));
  }

  // exterior fully below the common bottom: clamps to zero
  double Ulow[4] = {0.5, 0.1, 0.0, 0.5};
  hydrostatic_reconstruct(2, Ui, Ulow, 0.0, -3.0, tol, Uis, Ues);
  CHECK(Ues[0] == 0.0);
  CHECK(Ues[1] == 0.0);
  CHECK(Ues[3] == 0.0);
}

TEST_CASE("well-balanced flux") {
  double g = 1.0, tol = 1e-6;
  // lake-at-rest traces across a bottom jump reduce to the interior flux
  double Ui[4] = {2, 0, 0, 20}, Ue[4] = {1, 0, 0, 10};
  double f[4], fi[4];
  well_balanced_flux(2, Ui, Ue, 0.0, 1.0, {1, 0}, g, tol, -1.0, f);
  ripa_flux(2, Ui, g, tol, {1, 0}, fi);
  for (int c = 0; c < 4; ++c) CHECK(std::abs(f[c] - fi[c]) < 1e-13);

  // flat bottom: plain Lax-Friedrichs
  double Ua[4] = {1.5, 0.3, -0.1, 2.0}, Ub[4] = {1.1, -0.2, 0.4, 1.3};
  double a = std::max(ripa_max_speed(2, Ua, g, tol, {1, 0}),
                      ripa_max_speed(2, Ub, g, tol, {1, 0}));
  double lf[4];
  well_balanced_flux(2, Ua, Ub, 0.2, 0.2, {1, 0}, g, tol, a, f);
  ripa_lax_friedrichs(2, Ua, Ub, g, tol, {1, 0}, a, lf);
  for (int c = 0; c < 4; ++c) CHECK(std::abs(f[c] - lf[c]) < 1e-13);

  // compositional oracle
  double Uis[4], Ues[4], flf[4], fint[4], fints[4];
  hydrostatic_reconstruct(2, Ua, Ub, 0.2, 0.5, tol, Uis, Ues);
  double a2 = std::max({ripa_max_speed(2, Ua, g, tol, {1, 0}),
                        ripa_max_speed(2, Ub, g, tol, {1, 0}),
                        ripa_max_speed(2, Uis, g, tol, {1, 0}),
                        ripa_max_speed(2, Ues, g, tol, {1, 0})});
  well_balanced_flux(2, Ua, Ub, 0.2, 0.5, {1, 0}, g, tol, a2, f);
  ripa_lax_friedrichs(2, Uis, Ues, g, tol, {1, 0}, a2, flf);
  ripa_flux(2, Ua, g, tol, {1, 0}, fint);
  ripa_flux(2, Uis, g, tol, {1, 0}, fints);
  for (int c = 0; c < 4; ++c)
    CHECK(std::abs(f[c] - (flf[c] + fint[c] - fints[c])) < 1e-13);
}

TEST_CASE("eigenvectors diagonalize the flux Jacobian") {
  double g = 1.0, tol = 1e-6;
  for (int dim : {1, 2}) {
    int nc = ripa_ncomp(dim);
    double U1[4] = {1.4, 0.6, 2.1, 0.0};
    double U2[4] = {1.4, 0.6, -0.3, 2.1};
    const double* U = dim == 1 ? U1 : U2;
    Vec2 n = dim == 1 ? Vec2{1, 0} : Vec2{0.6, 0.8};
    std::vector<double> R, L;
    ripa_eigenvectors(dim, U, g, tol, n, R, L);
    // L is the inverse of R
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < nc; ++j) {
        double s = 0.0;
        for (int k = 0; k < nc; ++k) s += L[i * nc + k] * R[k * nc + j];
        CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    // columns of R are eigenvectors of the finite-difference Jacobian
    double eps = 1e-7;
    std::vector<double> A(nc * nc);
    for (int j = 0; j < nc; ++j) {
      double Up[4], Um[4], fp[4], fm[4];
      for (int c = 0; c < nc; ++c) Up[c] = Um[c] = U[c];
      Up[j] += eps;
      Um[j] -= eps;
      ripa_flux(dim, Up, g, tol, n, fp);
      ripa_flux(dim, Um, g, tol, n, fm);
      for (int i = 0; i < nc; ++i) A[i * nc + j] = (fp[i] - fm[i]) / (2 * eps);
    }
    double h = U[0], un = (U[1] * n[0] + (dim == 2 ? U[2] * n[1] : 0.0)) / h;
    double c = std::sqrt(g * U[dim + 1]);
    std::vector<double> lam =
        dim == 1 ? std::vector<double>{un - c, un, un + c}
                 : std::vector<double>{un - c, un, un, un + c};
    for (int j = 0; j < nc; ++j)
      for (int i = 0; i < nc; ++i) {
        double av = 0.0;
        for (int k = 0; k < nc; ++k) av += A[i * nc + k] * R[k * nc + j];
        CHECK(std::abs(av - lam[j] * R[i * nc + j]) < 1e-5);
      }
  }
}

TEST_CASE("dry state falls back to identity eigenvectors") {
  std::vector<double> R, L;
  double U[3] = {1e-9, 0, 1e-9};
  ripa_eigenvectors(1, U, 1.0, 1e-6, {1, 0}, R, L);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(R[i * 3 + j] == (i == j ? 1.0 : 0.0));
}

TEST_CASE("residual vanishes on the lake at rest") {
  RipaParams par;
  // 1D, step bottom inside the domain
  {
    Mesh m = interval_mesh(0.0, 1.0, 10, BoundaryKind::outflow);
    ReferenceBasis b = ReferenceBasis::make(1, 2);
    auto bot = [](Vec2 x) { return (x[0] > 0.3 && x[0] < 0.7) ? 1.0 : 0.0; };
    DGField bf = l2_project(m, b, 1, [&](Vec2 x, double* v) { v[0] = bot(x); });
    DGField U = l2_project(m, b, 3, [&](Vec2 x, double* v) {
      v[0] = 2.0 - bot(x);
      v[1] = 0.0;
      v[2] = 10.0 * v[0];
    });
    DGField dU;
    ripa_residual(m, b, par, U, bf, dU);
    for (double v : dU.c) CHECK(std::abs(v) < 1e-11);
  }
  // 2D with a smooth bump and periodic boundaries
  {
    BoundarySpec bc;
    bc.x = bc.y = BoundaryKind::periodic;
    bc.period = {2, 2};
    Mesh m = rect_mesh({-1, -1}, {1, 1}, 4, 4, bc);
    ReferenceBasis b = ReferenceBasis::make(2, 2);
    auto bot = [](Vec2 x) {
      return 0.5 * std::exp(-30.0 * (x[0] * x[0] + x[1] * x[1]));
    };
    DGField bf = l2_project(m, b, 1, [&](Vec2 x, double* v) { v[0] = bot(x); });
    DGField U = l2_project(m, b, 4, [&](Vec2 x, double* v) {
      v[0] = 3.0 - bot(x);
      v[1] = v[2] = 0.0;
      v[3] = (4.0 / 3.0) * v[0];
    });
    DGField dU;
    ripa_residual(m, b, par, U, bf, dU);
    for (double v : dU.c) CHECK(std::abs(v) < 1e-11);
  }
}

TEST_CASE("constant state on flat bottom is steady") {
  RipaParams par;
  Mesh m = interval_mesh(0.0, 1.0, 6, BoundaryKind::periodic);
  ReferenceBasis b = ReferenceBasis::make(1, 2);
  DGField bf(m.n_elements(), 1, b.nb);
  DGField U = l2_project(m, b, 3, [](Vec2, double* v) {
    v[0] = 1.2;
    v[1] = 0.4;
    v[2] = 2.0;
  });
  DGField dU;
  ripa_residual(m, b, par, U, bf, dU);
  for (double v : dU.c) CHECK(std::abs(v) < 1e-11);
}

TEST_CASE("periodic fluxes conserve the totals") {
  RipaParams par;
  Mesh m = interval_mesh(0.0, 1.0, 8, BoundaryKind::periodic);
  ReferenceBasis b = ReferenceBasis::make(1, 2);
  // piecewise linear bottom with kinks on mesh vertices: the projection has
  // continuous traces, so the hydrostatic corrections cancel exactly
  DGField bf = l2_project(m, b, 1, [](Vec2 x, double* v) {
    v[0] = 0.2 * (0.5 - std::abs(x[0] - 0.5));
  });
  DGField U = l2_project(m, b, 3, [](Vec2 x, double* v) {
    v[0] = 2.0 + 0.3 * std::cos(6.28318530717958648 * x[0]);
    v[1] = 0.2;
    v[2] = 1.5 * v[0];
  });
  DGField dU;
  ripa_residual(m, b, par, U, bf, dU);
  // mass and temperature flux differences telescope (momentum feels the source)
  for (int comp : {0, 2}) {
    double total = 0.0;
    for (int e = 0; e < m.n_elements(); ++e)
      total += cell_average(dU, b, e, comp) * m.measure[e];
    CHECK(std::abs(total) < 1e-13);
  }
}

TEST_CASE("global max speed dominates sampled speeds") {
  RipaParams par;
  Mesh m = interval_mesh(0.0, 1.0, 5, BoundaryKind::outflow);
  ReferenceBasis b = ReferenceBasis::make(1, 2);
  DGField U = l2_project(m, b, 3, [](Vec2 x, double* v) {
    v[0] = 1.0 + x[0];
    v[1] = 0.5 * x[0];
    v[2] = 2.0 * v[0];
  });
  double amax = ripa_global_max_speed(m, b, par, U);
  for (int e = 0; e < m.n_elements(); ++e) {
    double Uc[3];
    for (int c = 0; c < 3; ++c) Uc[c] = evaluate(U, b, e, c, Vec2{0.0, 0.0});
    CHECK(amax + 1e-13 >= ripa_max_speed(1, Uc, par.g, par.dry_tol, {1, 0}));
  }
}
