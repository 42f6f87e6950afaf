#ifndef RIPADG_PROBLEMS_HPP_
#define RIPADG_PROBLEMS_HPP_

#include <functional>
#include <string>

#include "ripadg/mesh.hpp"

namespace ripadg {

// A registered test case: domain, bottom topography, initial data, and the
// solver settings it is normally run with.
struct Problem {
  std::string id;
  int dim = 1;
  Vec2 lo{0, 0}, hi{1, 0};
  BoundarySpec bc;
  double t_final = 1.0;
  double cfl = 0.18;
  double m_tvb = 0.0;
  double delta = 0.1;     // metric intersection weight
  bool dry_mode = false;  // dry-region limiting and momentum cleanup
  bool lake_at_rest = false;
  double c_theta = 0.0;   // constants of the rest state (when applicable)
  double c_surface = 0.0;
  std::function<double(Vec2)> bottom;
  std::function<void(Vec2, double*)> init;  // conserved components
};

const Problem& find_problem(const std::string& id);
std::vector<std::string> problem_ids();

// Uniform starting mesh: N segments in 1D; in 2D, N triangles from a
// criss-cross grid whose aspect follows the domain.
Mesh make_problem_mesh(const Problem& p, int n);

}  // namespace ripadg

#endif  // RIPADG_PROBLEMS_HPP_
