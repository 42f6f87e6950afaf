#ifndef RIPADG_MESH_HPP_
#define RIPADG_MESH_HPP_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ripadg/smallmat.hpp"

namespace ripadg {

enum class BoundaryKind { interior, periodic, reflective, outflow };

struct BoundarySpec {
  BoundaryKind x = BoundaryKind::outflow;
  BoundaryKind y = BoundaryKind::outflow;
  Vec2 period{0, 0};  // domain extents, used to match periodic edges
};

struct Edge {
  std::array<int, 2> v{-1, -1};  // 1D interfaces carry a single vertex
  int left = -1;                 // canonical normal points from left into right
  int right = -1;                // -1 on boundary edges
  int left_local = -1;           // local edge index within the left element
  int right_local = -1;
  BoundaryKind kind = BoundaryKind::interior;
  int partner = -1;    // periodic partner edge id
  Vec2 shift{0, 0};    // x_partner = x + shift for periodic pairs
};

// Unstructured mesh: 1D segment chains or 2D triangulations. Topology is fixed
// after construction; set_coordinates() rebuilds the geometric caches only and
// is meant for the moving-mesh machinery (same connectivity).
class Mesh {
 public:
  int dim = 0;
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> elements;  // [2] == -1 for segments
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> elem_edges;      // local edge -> global edge
  std::vector<std::array<int, 3>> elem_edge_sign;  // +1: canonical normal is outward
  std::vector<std::array<int, 3>> neighbors;       // -1 across boundary edges

  // geometry caches
  std::vector<double> measure;
  std::vector<Vec2> centroid;
  std::vector<Mat2> jac;      // reference->physical; 1D stores dx/dxi in (0,0)
  std::vector<Mat2> inv_jac;
  std::vector<double> edge_measure;
  std::vector<Vec2> edge_normal;  // canonical unit normal
  double domain_measure = 0.0;

  int n_elements() const { return static_cast<int>(elements.size()); }
  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int verts_per_elem() const { return dim == 1 ? 2 : 3; }

  // Minimum element height: segment length in 1D, smallest altitude in 2D.
  double min_element_height() const;
  double min_measure() const;

  // Map between physical and reference coordinates of an element.
  Vec2 to_physical(int elem, Vec2 ref) const;
  Vec2 to_reference(int elem, Vec2 phys) const;

  // Reference coordinates (within `elem`) of a point on edge `local` at edge
  // parameter s in [0,1] along the canonical vertex order of the global edge.
  Vec2 edge_ref_point(int elem, int local, double s) const;

  void set_coordinates(std::span<const Vec2> coords);
  Mesh with_coordinates(std::span<const Vec2> coords) const;

 private:
  void build_geometry();
  friend Mesh build_mesh(int dim, std::vector<Vec2> vertices,
                         std::vector<std::array<int, 3>> elements,
                         const BoundarySpec& bc);
};

Mesh build_mesh(int dim, std::vector<Vec2> vertices,
                std::vector<std::array<int, 3>> elements, const BoundarySpec& bc);

// Uniform mesh of N segments on (a, b).
Mesh interval_mesh(double a, double b, int n, BoundaryKind bc);

// Structured triangulation of a rectangle: nx * ny quads, each split into four
// triangles around its center vertex ("criss-cross", as in the 2D test meshes)
// or into two by a fixed diagonal.
enum class RectSplit { crisscross, diagonal };
Mesh rect_mesh(Vec2 lo, Vec2 hi, int nx, int ny, const BoundarySpec& bc,
               RectSplit split = RectSplit::crisscross);

// Linear blending between two coordinate sets on identical connectivity.
struct MeshBlend {
  const Mesh* topo = nullptr;
  std::vector<Vec2> coords_old;
  std::vector<Vec2> coords_new;

  std::vector<Vec2> at(double sigma) const;
  Vec2 displacement(int vertex) const {
    return coords_new[vertex] - coords_old[vertex];
  }
  // Mesh deformation velocity at a reference point of an element (barycentric
  // interpolation of the vertex displacements; independent of sigma).
  Vec2 velocity(int elem, Vec2 ref) const;
  double max_displacement() const;
};

// Plain-text mesh import/export: vertex list then element list.
void write_mesh_text(const Mesh& mesh, const std::string& path);
Mesh read_mesh_text(const std::string& path, const BoundarySpec& bc);

}  // namespace ripadg

#endif  // RIPADG_MESH_HPP_
