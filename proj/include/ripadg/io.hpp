#ifndef RIPADG_IO_HPP_
#define RIPADG_IO_HPP_

#include <string>
#include <vector>

#include "ripadg/field.hpp"

namespace ripadg {

// Resolved run settings. Negative numeric values mean "use the problem's
// default"; resolution happens inside the driver.
struct RunConfig {
  std::string problem = "wb1d-step";
  int n = 100;
  int degree = 2;
  double t_final = -1.0;
  std::string mesh_mode = "moving";  // fixed | moving
  double cfl = -1.0;
  double m_tvb = -1.0;
  double delta = -1.0;
  int frames = 4;       // snapshot count over the run
  int adapt_every = 1;  // physical steps between mesh adaptations
  std::string out_dir;  // empty: no files written
};

// key = value lines; '#' comments; unknown keys rejected.
RunConfig parse_config_file(const std::string& path);
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value);

// 1D columnar text: x h b h+b hu htheta theta at the element Gauss points.
void write_solution_1d(const std::string& path, const Mesh& mesh,
                       const ReferenceBasis& basis, const DGField& U,
                       const DGField& b);

// Legacy ASCII VTK unstructured grid with cell-averaged fields.
void write_solution_vtk(const std::string& path, const Mesh& mesh,
                        const ReferenceBasis& basis, const DGField& U,
                        const DGField& b);

void append_mesh_trajectory(const std::string& path, const Mesh& mesh,
                            double t, bool truncate);

struct ErrorReport {
  std::vector<std::string> names;
  std::vector<double> l1, linf;
};
void write_errors_csv(const std::string& path, const ErrorReport& report);

// Full resolved configuration, one key = value per line.
void write_manifest(const std::string& path, const RunConfig& cfg);

}  // namespace ripadg

#endif  // RIPADG_IO_HPP_
