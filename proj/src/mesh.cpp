#include "ripadg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

namespace ripadg {

namespace {

std::string elem_str(int e) { return "element " + std::to_string(e); }

}  // namespace

double Mesh::min_element_height() const {
  double h = std::numeric_limits<double>::max();
  for (int e = 0; e < n_elements(); ++e) {
    if (dim == 1) {
      h = std::min(h, measure[e]);
    } else {
      const auto& el = elements[e];
      double lmax = 0.0;
      for (int i = 0; i < 3; ++i)
        lmax = std::max(lmax, norm(vertices[el[(i + 1) % 3]] - vertices[el[(i + 2) % 3]]));
      h = std::min(h, 2.0 * measure[e] / lmax);
    }
  }
  return h;
}

double Mesh::min_measure() const {
  double m = std::numeric_limits<double>::max();
  for (double v : measure) m = std::min(m, v);
  return m;
}

Vec2 Mesh::to_physical(int elem, Vec2 ref) const {
  const auto& el = elements[elem];
  if (dim == 1) {
    double a = vertices[el[0]][0], b = vertices[el[1]][0];
    return {0.5 * (a + b) + 0.5 * ref[0] * (b - a), 0.0};
  }
  Vec2 v0 = vertices[el[0]];
  return v0 + ref[0] * (vertices[el[1]] - v0) + ref[1] * (vertices[el[2]] - v0);
}

Vec2 Mesh::to_reference(int elem, Vec2 phys) const {
  const auto& el = elements[elem];
  if (dim == 1) {
    double a = vertices[el[0]][0], b = vertices[el[1]][0];
    return {(2.0 * phys[0] - (a + b)) / (b - a), 0.0};
  }
  return inv_jac[elem] * (phys - vertices[el[0]]);
}

Vec2 Mesh::edge_ref_point(int elem, int local, double s) const {
  const Edge& ed = edges[elem_edges[elem][local]];
  if (dim == 1) return to_reference(elem, vertices[ed.v[0]]);
  Vec2 p = (1.0 - s) * vertices[ed.v[0]] + s * vertices[ed.v[1]];
  return to_reference(elem, p);
}

void Mesh::set_coordinates(std::span<const Vec2> coords) {
  if (static_cast<int>(coords.size()) != n_vertices())
    throw std::runtime_error("set_coordinates: vertex count mismatch");
  vertices.assign(coords.begin(), coords.end());
  build_geometry();
}

Mesh Mesh::with_coordinates(std::span<const Vec2> coords) const {
  Mesh m = *this;
  m.set_coordinates(coords);
  return m;
}

void Mesh::build_geometry() {
  int ne = n_elements();
  measure.resize(ne);
  centroid.resize(ne);
  jac.resize(ne);
  inv_jac.resize(ne);
  domain_measure = 0.0;
  for (int e = 0; e < ne; ++e) {
    const auto& el = elements[e];
    if (dim == 1) {
      double a = vertices[el[0]][0], b = vertices[el[1]][0];
      measure[e] = b - a;
      centroid[e] = {0.5 * (a + b), 0.0};
      jac[e] = Mat2{{0.5 * (b - a), 0, 0, 1}};
      inv_jac[e] = Mat2{{2.0 / (b - a), 0, 0, 1}};
    } else {
      Vec2 v0 = vertices[el[0]], v1 = vertices[el[1]], v2 = vertices[el[2]];
      Mat2 J{{v1[0] - v0[0], v2[0] - v0[0], v1[1] - v0[1], v2[1] - v0[1]}};
      measure[e] = 0.5 * det(J);
      centroid[e] = (1.0 / 3.0) * (v0 + v1 + v2);
      jac[e] = J;
      inv_jac[e] = measure[e] > 0 ? inverse(J) : Mat2::identity();
    }
    if (!(measure[e] > 0.0))
      throw std::runtime_error("inverted element (non-positive measure): " + elem_str(e));
    domain_measure += measure[e];
  }

  int nedges = n_edges();
  edge_measure.resize(nedges);
  edge_normal.resize(nedges);
  for (int i = 0; i < nedges; ++i) {
    Edge& ed = edges[i];
    if (dim == 1) {
      edge_measure[i] = 1.0;
      double xv = vertices[ed.v[0]][0];
      double sgn = xv > centroid[ed.left][0] ? 1.0 : -1.0;
      edge_normal[i] = {sgn, 0.0};
    } else {
      Vec2 t = vertices[ed.v[1]] - vertices[ed.v[0]];
      double len = norm(t);
      edge_measure[i] = len;
      Vec2 n{t[1] / len, -t[0] / len};
      Vec2 mid = 0.5 * (vertices[ed.v[0]] + vertices[ed.v[1]]);
      if (dot(n, mid - centroid[ed.left]) < 0) n = {-n[0], -n[1]};
      edge_normal[i] = n;
    }
  }
}

Mesh build_mesh(int dim, std::vector<Vec2> vertices,
                std::vector<std::array<int, 3>> elements, const BoundarySpec& bc) {
  if (dim != 1 && dim != 2) throw std::runtime_error("dim must be 1 or 2");
  Mesh m;
  m.dim = dim;
  m.vertices = std::move(vertices);
  m.elements = std::move(elements);

  int nv = m.n_vertices();
  int vpe = m.verts_per_elem();
  for (int e = 0; e < m.n_elements(); ++e) {
    auto& el = m.elements[e];
    for (int i = 0; i < vpe; ++i) {
      if (el[i] < 0 || el[i] >= nv)
        throw std::runtime_error("vertex index out of range in " + elem_str(e));
      for (int j = i + 1; j < vpe; ++j)
        if (el[i] == el[j]) throw std::runtime_error("degenerate element: " + elem_str(e));
    }
    // normalize orientation
    if (dim == 1) {
      if (m.vertices[el[0]][0] > m.vertices[el[1]][0]) std::swap(el[0], el[1]);
    } else {
      Vec2 v0 = m.vertices[el[0]];
      Vec2 a = m.vertices[el[1]] - v0, b = m.vertices[el[2]] - v0;
      if (a[0] * b[1] - a[1] * b[0] < 0) std::swap(el[1], el[2]);
    }
  }

  // face key -> edge id
  std::map<std::array<int, 2>, int> face_map;
  int nloc = dim == 1 ? 2 : 3;
  m.elem_edges.assign(m.n_elements(), {-1, -1, -1});
  m.elem_edge_sign.assign(m.n_elements(), {0, 0, 0});
  m.neighbors.assign(m.n_elements(), {-1, -1, -1});
  for (int e = 0; e < m.n_elements(); ++e) {
    const auto& el = m.elements[e];
    for (int loc = 0; loc < nloc; ++loc) {
      std::array<int, 2> face;
      if (dim == 1) {
        face = {el[loc], -1};
      } else {
        face = {el[(loc + 1) % 3], el[(loc + 2) % 3]};
      }
      std::array<int, 2> key = face;
      if (key[1] >= 0 && key[0] > key[1]) std::swap(key[0], key[1]);
      auto it = face_map.find(key);
      if (it == face_map.end()) {
        Edge ed;
        ed.v = face;
        ed.left = e;
        ed.left_local = loc;
        face_map[key] = static_cast<int>(m.edges.size());
        m.elem_edges[e][loc] = static_cast<int>(m.edges.size());
        m.elem_edge_sign[e][loc] = +1;
        m.edges.push_back(ed);
      } else {
        Edge& ed = m.edges[it->second];
        if (ed.right != -1)
          throw std::runtime_error("edge shared by more than two elements");
        ed.right = e;
        ed.right_local = loc;
        m.elem_edges[e][loc] = it->second;
        m.elem_edge_sign[e][loc] = -1;
        m.neighbors[e][loc] = ed.left;
        m.neighbors[ed.left][ed.left_local] = e;
      }
    }
  }

  m.build_geometry();

  // classify boundary edges by which side of the bounding box they lie on
  Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
  for (const Vec2& v : m.vertices)
    for (int d = 0; d < 2; ++d) {
      lo[d] = std::min(lo[d], v[d]);
      hi[d] = std::max(hi[d], v[d]);
    }
  double tol = 1e-10 * std::max(hi[0] - lo[0], std::max(hi[1] - lo[1], 1.0));
  auto on_side = [&](const Edge& ed, int axis, double val) {
    for (int k = 0; k < (dim == 1 ? 1 : 2); ++k)
      if (std::abs(m.vertices[ed.v[k]][axis] - val) > tol) return false;
    return true;
  };
  std::vector<int> bedges;
  for (int i = 0; i < m.n_edges(); ++i) {
    Edge& ed = m.edges[i];
    if (ed.right != -1) continue;
    bedges.push_back(i);
    if (on_side(ed, 0, lo[0]) || on_side(ed, 0, hi[0]))
      ed.kind = bc.x;
    else if (dim == 2 && (on_side(ed, 1, lo[1]) || on_side(ed, 1, hi[1])))
      ed.kind = bc.y;
    else
      throw std::runtime_error("boundary edge not on bounding box; cannot classify");
  }

  // match periodic pairs by translated midpoints
  Vec2 period{hi[0] - lo[0], hi[1] - lo[1]};
  if (bc.period[0] > 0 || bc.period[1] > 0) period = bc.period;
  for (int i : bedges) {
    Edge& ed = m.edges[i];
    if (ed.kind != BoundaryKind::periodic || ed.partner != -1) continue;
    Vec2 mid = dim == 1 ? m.vertices[ed.v[0]]
                        : 0.5 * (m.vertices[ed.v[0]] + m.vertices[ed.v[1]]);
    int axis = on_side(ed, 0, lo[0]) || on_side(ed, 0, hi[0]) ? 0 : 1;
    Vec2 shift{0, 0};
    shift[axis] = std::abs(mid[axis] - lo[axis]) < tol ? period[axis] : -period[axis];
    Vec2 target = mid + shift;
    int found = -1;
    for (int j : bedges) {
      if (j == i || m.edges[j].kind != BoundaryKind::periodic || m.edges[j].partner != -1)
        continue;
      Vec2 midj = dim == 1 ? m.vertices[m.edges[j].v[0]]
                           : 0.5 * (m.vertices[m.edges[j].v[0]] + m.vertices[m.edges[j].v[1]]);
      if (norm(midj - target) < 1e-8 * std::max(period[0], period[1])) {
        found = j;
        break;
      }
    }
    if (found < 0)
      throw std::runtime_error("unmatched periodic edge " + std::to_string(i));
    if (std::abs(m.edge_measure[i] - m.edge_measure[found]) >
        1e-12 * std::max(1.0, m.edge_measure[i]))
      throw std::runtime_error("periodic edge pair of unequal length");
    ed.partner = found;
    ed.shift = shift;
    m.edges[found].partner = i;
    m.edges[found].shift = {-shift[0], -shift[1]};
  }
  return m;
}

Mesh interval_mesh(double a, double b, int n, BoundaryKind bc) {
  std::vector<Vec2> verts(n + 1);
  for (int i = 0; i <= n; ++i) verts[i] = {a + (b - a) * i / n, 0.0};
  std::vector<std::array<int, 3>> elems(n);
  for (int i = 0; i < n; ++i) elems[i] = {i, i + 1, -1};
  BoundarySpec spec;
  spec.x = bc;
  spec.period = {b - a, 0};
  return build_mesh(1, std::move(verts), std::move(elems), spec);
}

Mesh rect_mesh(Vec2 lo, Vec2 hi, int nx, int ny, const BoundarySpec& bc, RectSplit split) {
  std::vector<Vec2> verts;
  auto gid = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      verts.push_back({lo[0] + (hi[0] - lo[0]) * i / nx, lo[1] + (hi[1] - lo[1]) * j / ny});
  std::vector<std::array<int, 3>> elems;
  if (split == RectSplit::crisscross) {
    int base = static_cast<int>(verts.size());
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        verts.push_back({lo[0] + (hi[0] - lo[0]) * (i + 0.5) / nx,
                         lo[1] + (hi[1] - lo[1]) * (j + 0.5) / ny});
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        int c = base + j * nx + i;
        int v00 = gid(i, j), v10 = gid(i + 1, j), v11 = gid(i + 1, j + 1), v01 = gid(i, j + 1);
        elems.push_back({v00, v10, c});
        elems.push_back({v10, v11, c});
        elems.push_back({v11, v01, c});
        elems.push_back({v01, v00, c});
      }
  } else {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        int v00 = gid(i, j), v10 = gid(i + 1, j), v11 = gid(i + 1, j + 1), v01 = gid(i, j + 1);
        elems.push_back({v00, v10, v11});
        elems.push_back({v00, v11, v01});
      }
  }
  BoundarySpec spec = bc;
  spec.period = {hi[0] - lo[0], hi[1] - lo[1]};
  return build_mesh(2, std::move(verts), std::move(elems), spec);
}

std::vector<Vec2> MeshBlend::at(double sigma) const {
  std::vector<Vec2> out(coords_old.size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = (1.0 - sigma) * coords_old[i] + sigma * coords_new[i];
  return out;
}

Vec2 MeshBlend::velocity(int elem, Vec2 ref) const {
  const auto& el = topo->elements[elem];
  if (topo->dim == 1) {
    double l0 = 0.5 * (1.0 - ref[0]), l1 = 0.5 * (1.0 + ref[0]);
    return l0 * displacement(el[0]) + l1 * displacement(el[1]);
  }
  double l0 = 1.0 - ref[0] - ref[1];
  return l0 * displacement(el[0]) + ref[0] * displacement(el[1]) + ref[1] * displacement(el[2]);
}

double MeshBlend::max_displacement() const {
  double d = 0.0;
  for (size_t i = 0; i < coords_old.size(); ++i) d = std::max(d, norm(displacement(static_cast<int>(i))));
  return d;
}

void write_mesh_text(const Mesh& mesh, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f.precision(17);
  f << mesh.dim << " " << mesh.n_vertices() << " " << mesh.n_elements() << "\n";
  for (const Vec2& v : mesh.vertices) {
    f << v[0];
    if (mesh.dim == 2) f << " " << v[1];
    f << "\n";
  }
  int vpe = mesh.verts_per_elem();
  for (const auto& el : mesh.elements) {
    for (int i = 0; i < vpe; ++i) f << (i ? " " : "") << el[i];
    f << "\n";
  }
}

Mesh read_mesh_text(const std::string& path, const BoundarySpec& bc) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  int dim, nv, ne;
  f >> dim >> nv >> ne;
  std::vector<Vec2> verts(nv, Vec2{0, 0});
  for (int i = 0; i < nv; ++i) {
    f >> verts[i][0];
    if (dim == 2) f >> verts[i][1];
  }
  std::vector<std::array<int, 3>> elems(ne, {-1, -1, -1});
  int vpe = dim == 1 ? 2 : 3;
  for (int e = 0; e < ne; ++e)
    for (int i = 0; i < vpe; ++i) f >> elems[e][i];
  if (!f) throw std::runtime_error("malformed mesh file " + path);
  return build_mesh(dim, std::move(verts), std::move(elems), bc);
}

}  // namespace ripadg
