#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "ripadg/mesh.hpp"

using namespace ripadg;

TEST_CASE("interval mesh basics") {
  Mesh m = interval_mesh(0.0, 1.0, 2, BoundaryKind::outflow);
  CHECK(m.n_elements() == 2);
  CHECK(m.n_vertices() == 3);
  int boundary = 0;
  for (const Edge& e : m.edges)
    if (e.right == -1) ++boundary;
  CHECK(boundary == 2);
  CHECK(m.domain_measure == doctest::Approx(1.0).epsilon(1e-14));

  Mesh m4 = interval_mesh(0.0, 1.0, 4, BoundaryKind::outflow);
  CHECK(m4.min_element_height() == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("two-triangle square") {
  std::vector<Vec2> v{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<std::array<int, 3>> els{{0, 1, 2}, {0, 2, 3}};
  BoundarySpec bc;
  Mesh m = build_mesh(2, v, els, bc);
  int interior = 0, boundary = 0;
  for (const Edge& e : m.edges)
    (e.right == -1 ? boundary : interior)++;
  CHECK(interior == 1);
  CHECK(boundary == 4);
  CHECK(m.domain_measure == doctest::Approx(1.0).epsilon(1e-14));
  // right triangle with unit legs: altitude to the hypotenuse
  CHECK(m.min_element_height() ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-13));
}

TEST_CASE("degenerate element rejected") {
  std::vector<Vec2> v{{0, 0}, {1, 0}, {0, 1}};
  std::vector<std::array<int, 3>> els{{0, 1, 1}};
  BoundarySpec bc;
  CHECK_THROWS(build_mesh(2, v, els, bc));
}

TEST_CASE("mixed element heights") {
  Mesh m = interval_mesh(0.0, 0.3, 1, BoundaryKind::outflow);
  std::vector<Vec2> coords = m.vertices;
  (void)coords;
  std::vector<Vec2> v{{0, 0}, {0.1, 0}, {0.3, 0}};
  std::vector<std::array<int, 3>> els{{0, 1, -1}, {1, 2, -1}};
  BoundarySpec bc;
  Mesh mm = build_mesh(1, v, els, bc);
  CHECK(mm.min_element_height() == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("criss-cross rectangle") {
  BoundarySpec bc;
  Mesh m = rect_mesh({0, 0}, {1, 1}, 2, 2, bc);
  CHECK(m.n_elements() == 16);
  CHECK(m.n_vertices() == 9 + 4);
  CHECK(m.domain_measure == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(m.min_measure() > 0.0);
}

TEST_CASE("reference map round trip and normals") {
  BoundarySpec bc;
  Mesh m = rect_mesh({-1, 0}, {2, 2}, 3, 2, bc);
  for (int e = 0; e < m.n_elements(); e += 3) {
    Vec2 ref{0.21, 0.37};
    Vec2 x = m.to_physical(e, ref);
    Vec2 back = m.to_reference(e, x);
    CHECK(back[0] == doctest::Approx(ref[0]).epsilon(1e-12));
    CHECK(back[1] == doctest::Approx(ref[1]).epsilon(1e-12));
  }
  for (int ie = 0; ie < m.n_edges(); ++ie) {
    const Edge& ed = m.edges[ie];
    CHECK(norm(m.edge_normal[ie]) == doctest::Approx(1.0).epsilon(1e-13));
    if (ed.right != -1) {
      Vec2 d = m.centroid[ed.right] - m.centroid[ed.left];
      CHECK(dot(d, m.edge_normal[ie]) > 0.0);
    }
  }
}

TEST_CASE("edge reference points land on the edge") {
  BoundarySpec bc;
  Mesh m = rect_mesh({0, 0}, {1, 1}, 1, 1, bc);
  for (int ie = 0; ie < m.n_edges(); ++ie) {
    const Edge& ed = m.edges[ie];
    Vec2 a = m.vertices[ed.v[0]], b = m.vertices[ed.v[1]];
    for (double s : {0.0, 0.25, 0.8}) {
      Vec2 expect = a + s * (b - a);
      Vec2 xl = m.to_physical(ed.left, m.edge_ref_point(ed.left, ed.left_local, s));
      CHECK(norm(xl - expect) < 1e-13);
      if (ed.right != -1) {
        Vec2 xr =
            m.to_physical(ed.right, m.edge_ref_point(ed.right, ed.right_local, s));
        CHECK(norm(xr - expect) < 1e-13);
      }
    }
  }
}

TEST_CASE("periodic pairing carries the shift") {
  Mesh m = interval_mesh(0.0, 1.0, 4, BoundaryKind::periodic);
  int paired = 0;
  for (const Edge& ed : m.edges) {
    if (ed.kind != BoundaryKind::periodic) continue;
    ++paired;
    REQUIRE(ed.partner >= 0);
    const Edge& pe = m.edges[ed.partner];
    Vec2 x = m.vertices[ed.v[0]];
    Vec2 px = m.vertices[pe.v[0]];
    CHECK(norm(px - (x + ed.shift)) < 1e-13);
  }
  CHECK(paired == 2);

  BoundarySpec bc;
  bc.x = bc.y = BoundaryKind::periodic;
  bc.period = {1, 1};
  Mesh m2 = rect_mesh({0, 0}, {1, 1}, 2, 2, bc);
  for (const Edge& ed : m2.edges)
    if (ed.right == -1) CHECK(ed.kind == BoundaryKind::periodic);
}

TEST_CASE("blend endpoints and velocity") {
  Mesh m = interval_mesh(0.0, 1.0, 2, BoundaryKind::outflow);
  MeshBlend bl;
  bl.topo = &m;
  bl.coords_old = m.vertices;
  bl.coords_new = m.vertices;
  for (Vec2& v : bl.coords_new) v = v + Vec2{1.0, 0.0};
  auto c0 = bl.at(0.0), c1 = bl.at(1.0), ch = bl.at(0.5);
  for (int i = 0; i < m.n_vertices(); ++i) {
    CHECK(norm(c0[i] - bl.coords_old[i]) == 0.0);
    CHECK(norm(c1[i] - bl.coords_new[i]) == 0.0);
    CHECK(ch[i][0] == doctest::Approx(bl.coords_old[i][0] + 0.5).epsilon(1e-14));
  }
  // constant displacement: velocity (1,0) everywhere
  Vec2 v = bl.velocity(0, Vec2{0.3, 0});
  CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-14));

  // 1D cell with end speeds 0 and 1: midpoint moves at 0.5
  MeshBlend bl2;
  bl2.topo = &m;
  bl2.coords_old = m.vertices;
  bl2.coords_new = m.vertices;
  // element 0 spans vertices at x=0 and x=0.5
  for (int i = 0; i < m.n_vertices(); ++i)
    if (std::abs(m.vertices[i][0] - 0.5) < 1e-14)
      bl2.coords_new[i] = m.vertices[i] + Vec2{1.0, 0.0};
  Vec2 mid = bl2.velocity(0, Vec2{0.0, 0.0});  // reference center
  CHECK(mid[0] == doctest::Approx(0.5).epsilon(1e-13));

  MeshBlend ident;
  ident.topo = &m;
  ident.coords_old = m.vertices;
  ident.coords_new = m.vertices;
  CHECK(ident.max_displacement() == 0.0);
  CHECK(norm(ident.velocity(1, Vec2{0.2, 0})) == 0.0);
}

TEST_CASE("set_coordinates rebuilds geometry") {
  BoundarySpec bc;
  Mesh m = rect_mesh({0, 0}, {1, 1}, 2, 2, bc);
  std::vector<Vec2> coords = m.vertices;
  for (Vec2& v : coords) v = Vec2{2.0 * v[0], 2.0 * v[1]};
  Mesh scaled = m.with_coordinates(coords);
  CHECK(scaled.domain_measure == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(m.domain_measure == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("text round trip") {
  BoundarySpec bc;
  Mesh m = rect_mesh({0, 0}, {2, 1}, 2, 1, bc);
  std::string path = "mesh_roundtrip.txt";
  write_mesh_text(m, path);
  Mesh back = read_mesh_text(path, bc);
  REQUIRE(back.n_vertices() == m.n_vertices());
  REQUIRE(back.n_elements() == m.n_elements());
  for (int i = 0; i < m.n_vertices(); ++i)
    CHECK(norm(back.vertices[i] - m.vertices[i]) < 1e-12);
  std::remove(path.c_str());
}
