#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ripadg/mesh_adapt.hpp"

using namespace ripadg;

namespace {

std::vector<double> sample(const Mesh& m, double (*f)(Vec2)) {
  std::vector<double> v(m.n_elements());
  for (int e = 0; e < m.n_elements(); ++e) v[e] = f(m.centroid[e]);
  return v;
}

}  // namespace

TEST_CASE("hessian recovery reproduces quadratics") {
  BoundarySpec bc;
  Mesh m = rect_mesh({0, 0}, {1, 1}, 6, 6, bc);

  auto Hlin = recover_hessian(sample(m, [](Vec2 x) { return 1.0 + 2.0 * x[0] - x[1]; }), m);
  for (const Mat2& h : Hlin)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(h(i, j)) < 1e-8);

  auto Hxx = recover_hessian(sample(m, [](Vec2 x) { return x[0] * x[0]; }), m);
  for (const Mat2& h : Hxx) {
    CHECK(h(0, 0) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(std::abs(h(0, 1)) < 1e-7);
    CHECK(std::abs(h(1, 1)) < 1e-7);
  }

  auto Hq = recover_hessian(
      sample(m, [](Vec2 x) { return x[0] * x[0] + 3.0 * x[0] * x[1] + x[1] * x[1]; }), m);
  for (const Mat2& h : Hq) {
    CHECK(h(0, 0) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(h(0, 1) == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(h(1, 0) == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(h(1, 1) == doctest::Approx(2.0).epsilon(1e-7));
  }

  Mesh m1 = interval_mesh(0.0, 1.0, 12, BoundaryKind::outflow);
  auto H1 = recover_hessian(sample(m1, [](Vec2 x) { return x[0] * x[0]; }), m1);
  for (const Mat2& h : H1) CHECK(h(0, 0) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("beta and the metric have closed forms for a constant hessian") {
  // 2D: |H| = 2I everywhere, so (beta+2)^(2/3) = 2 * 2^(2/3)
  BoundarySpec bc;
  Mesh m = rect_mesh({0, 0}, {1, 1}, 4, 4, bc);
  std::vector<Mat2> H(m.n_elements(), Mat2{{2.0, 0.0, 0.0, 2.0}});
  MetricField mf = metric_from_hessian(H, m);
  double beta_expect = 2.0 * (std::pow(2.0, 1.5) - 1.0);
  CHECK(mf.beta == doctest::Approx(beta_expect).epsilon(1e-10));
  double entry = std::pow(beta_expect + 2.0, 2.0 / 3.0);
  for (const Mat2& mm : mf.m) {
    CHECK(mm(0, 0) == doctest::Approx(entry).epsilon(1e-9));
    CHECK(mm(1, 1) == doctest::Approx(entry).epsilon(1e-9));
    CHECK(std::abs(mm(0, 1)) < 1e-10);
  }
  // plug-back: the beta equation residual vanishes
  double lhs = 0.0, rhs = 0.0;
  for (int e = 0; e < m.n_elements(); ++e) {
    lhs += m.measure[e] * std::cbrt((mf.beta + 2.0) * (mf.beta + 2.0));
    rhs += m.measure[e] * std::cbrt(4.0);
  }
  CHECK(lhs == doctest::Approx(2.0 * rhs).epsilon(1e-10));

  // 1D: |H| = 2, so (beta+2)^(1/3) = 2 * 2^(1/3) gives beta = 14
  Mesh m1 = interval_mesh(0.0, 1.0, 8, BoundaryKind::outflow);
  std::vector<Mat2> H1(m1.n_elements(), Mat2{{2.0, 0.0, 0.0, 0.0}});
  MetricField mf1 = metric_from_hessian(H1, m1);
  CHECK(mf1.beta == doctest::Approx(14.0).epsilon(1e-10));
  for (const Mat2& mm : mf1.m) {
    CHECK(mm(0, 0) == doctest::Approx(std::pow(16.0, 0.2)).epsilon(1e-10));
    CHECK(mm(1, 1) == 1.0);
  }
}

TEST_CASE("metric intersection") {
  Mat2 I{{1, 0, 0, 1}};
  Mat2 D{{4.0, 0.0, 0.0, 0.25}};

  // idempotent on equal arguments
  Mat2 same = metric_intersect(D, D, 1.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(same(i, j) == doctest::Approx(D(i, j)).epsilon(1e-12));

  // diag(4, 1/4) against the identity: componentwise max
  Mat2 r = metric_intersect(D, I, 1.0);
  CHECK(r(0, 0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r(0, 1)) < 1e-12);

  // dominates both arguments in the SPD order
  Mat2 A{{2.0, 0.3, 0.3, 1.0}};
  Mat2 B{{0.5, -0.2, -0.2, 3.0}};
  for (double delta : {0.1, 1.0, 2.5}) {
    Mat2 c = metric_intersect(A, B, delta);
    Mat2 d1 = c + (-1.0) * A;
    Mat2 d2 = c + (-delta) * B;
    CHECK(sym_eig(d1).lambda[0] > -1e-12);
    CHECK(sym_eig(d2).lambda[0] > -1e-12);
  }

  Mat2 neg{{-1.0, 0.0, 0.0, 1.0}};
  CHECK_THROWS(metric_intersect(neg, I, 1.0));
}

TEST_CASE("metric smoothing preserves a constant field") {
  BoundarySpec bc;
  Mesh m = rect_mesh({0, 0}, {1, 1}, 3, 3, bc);
  Mat2 M{{2.0, 0.5, 0.5, 3.0}};
  std::vector<Mat2> field(m.n_elements(), M);
  smooth_metric(field, m, 3);
  for (const Mat2& mm : field)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(mm(i, j) == doctest::Approx(M(i, j)).epsilon(1e-13));
}

TEST_CASE("adaptation metric ignores a global scaling of the state") {
  BoundarySpec bc;
  Mesh m = rect_mesh({0, 0}, {1, 1}, 5, 5, bc);
  ReferenceBasis b = ReferenceBasis::make(2, 2);
  RipaParams par;
  AdaptConfig cfg;
  DGField bf = l2_project(m, b, 1, [](Vec2, double* v) { v[0] = 0.0; });
  auto make_state = [&](double s) {
    return l2_project(m, b, 4, [s](Vec2 x, double* v) {
      v[0] = s * (2.0 + std::exp(-10.0 * ((x[0] - 0.5) * (x[0] - 0.5) +
                                          (x[1] - 0.5) * (x[1] - 0.5))));
      v[1] = v[2] = 0.0;
      v[3] = 1.5 * v[0];
    });
  };
  DGField U1 = make_state(1.0);
  DGField U2 = make_state(10.0);
  MetricField m1 = adaptation_metric(U1, bf, m, b, par, cfg);
  MetricField m2 = adaptation_metric(U2, bf, m, b, par, cfg);
  REQUIRE(m1.m.size() == m2.m.size());
  for (size_t e = 0; e < m1.m.size(); ++e)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(m1.m[e](i, j) == doctest::Approx(m2.m[e](i, j)).epsilon(1e-4));
  // always SPD
  for (const Mat2& mm : m1.m) CHECK(sym_eig(mm).lambda[0] > 0.0);
}

TEST_CASE("a uniform mesh with a flat metric does not move") {
  AdaptConfig cfg;
  cfg.move_iters = 10;

  Mesh m1 = interval_mesh(0.0, 1.0, 8, BoundaryKind::outflow);
  MetricField flat1;
  flat1.m.assign(m1.n_elements(), Mat2{{1.0, 0.0, 0.0, 1.0}});
  std::vector<Vec2> c1 = move_mesh(m1, flat1, cfg);
  for (int i = 0; i < m1.n_vertices(); ++i)
    CHECK(norm(c1[i] - m1.vertices[i]) < 1e-12);

  BoundarySpec bc;
  Mesh m2 = rect_mesh({0, 0}, {1, 1}, 3, 3, bc);
  MetricField flat2;
  flat2.m.assign(m2.n_elements(), Mat2{{1.0, 0.0, 0.0, 1.0}});
  std::vector<Vec2> c2 = move_mesh(m2, flat2, cfg);
  for (int i = 0; i < m2.n_vertices(); ++i)
    CHECK(norm(c2[i] - m2.vertices[i]) < 1e-12);
}

TEST_CASE("1D equidistribution places the two-cell vertex at 4/5") {
  Mesh m = interval_mesh(0.0, 1.0, 2, BoundaryKind::outflow);
  MetricField metric;
  // rho = 1 on (0, 1/2), rho = 4 on (1/2, 1): balance at x = 4/5
  metric.m.resize(2);
  for (int e = 0; e < 2; ++e) {
    double rho = m.centroid[e][0] < 0.5 ? 1.0 : 4.0;
    metric.m[e] = Mat2{{rho, 0.0, 0.0, 1.0}};
  }
  AdaptConfig cfg;
  cfg.move_iters = 200;
  std::vector<Vec2> c = move_mesh(m, metric, cfg);
  for (int i = 0; i < m.n_vertices(); ++i) {
    double x0 = m.vertices[i][0];
    if (x0 == 0.0 || x0 == 1.0) {
      CHECK(c[i][0] == x0);
    } else {
      CHECK(c[i][0] == doctest::Approx(0.8).epsilon(1e-8));
    }
  }
}

TEST_CASE("movement toward a sharp metric keeps the mesh valid") {
  BoundarySpec bc;
  Mesh m = rect_mesh({0, 0}, {1, 1}, 4, 4, bc);
  ReferenceBasis b = ReferenceBasis::make(2, 2);
  RipaParams par;
  AdaptConfig cfg;
  cfg.move_iters = 8;
  DGField bf = l2_project(m, b, 1, [](Vec2, double* v) { v[0] = 0.0; });
  DGField U = l2_project(m, b, 4, [](Vec2 x, double* v) {
    v[0] = 1.0 + 4.0 * std::exp(-80.0 * (x[0] - 0.4) * (x[0] - 0.4));
    v[1] = v[2] = 0.0;
    v[3] = 2.0 * v[0];
  });
  MetricField metric = adaptation_metric(U, bf, m, b, par, cfg);
  std::vector<Vec2> c = move_mesh(m, metric, cfg);
  Mesh moved = m.with_coordinates(c);
  CHECK(moved.min_measure() > 0.0);
  CHECK(moved.domain_measure == doctest::Approx(m.domain_measure).epsilon(1e-12));
  // boundary vertices stay put
  for (const Edge& ed : m.edges)
    if (ed.right == -1)
      for (int vv : ed.v)
        if (vv >= 0) CHECK(norm(c[vv] - m.vertices[vv]) == 0.0);
}
