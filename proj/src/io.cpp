#include "ripadg/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ripadg {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << std::setprecision(17);
  return f;
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "problem")
    cfg.problem = value;
  else if (key == "N")
    cfg.n = std::stoi(value);
  else if (key == "degree")
    cfg.degree = std::stoi(value);
  else if (key == "tfinal")
    cfg.t_final = std::stod(value);
  else if (key == "mesh")
    cfg.mesh_mode = value;
  else if (key == "cfl")
    cfg.cfl = std::stod(value);
  else if (key == "mtvb")
    cfg.m_tvb = std::stod(value);
  else if (key == "delta")
    cfg.delta = std::stod(value);
  else if (key == "frames")
    cfg.frames = std::stoi(value);
  else if (key == "adapt_every")
    cfg.adapt_every = std::stoi(value);
  else if (key == "out")
    cfg.out_dir = value;
  else
    throw std::invalid_argument("unknown config key: " + key);
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    apply_config_entry(cfg, trim(line.substr(0, eq)),
                       trim(line.substr(eq + 1)));
  }
  return cfg;
}

void write_solution_1d(const std::string& path, const Mesh& mesh,
                       const ReferenceBasis& basis, const DGField& U,
                       const DGField& b) {
  auto f = open_out(path);
  f << "# x h b h+b hu htheta theta\n";
  std::vector<int> order(mesh.n_elements());
  for (int e = 0; e < mesh.n_elements(); ++e) order[e] = e;
  std::sort(order.begin(), order.end(), [&](int a, int bb) {
    return mesh.centroid[a][0] < mesh.centroid[bb][0];
  });
  for (int e : order) {
    for (int q = 0; q < basis.n_vol(); ++q) {
      const double* phi = &basis.vol_val[q * basis.nb];
      double h = eval_modes(U.modes(e, 0), phi, basis.nb);
      double hu = eval_modes(U.modes(e, 1), phi, basis.nb);
      double eta = eval_modes(U.modes(e, 2), phi, basis.nb);
      double bb = eval_modes(b.modes(e, 0), phi, basis.nb);
      double x = mesh.to_physical(e, basis.vol.pts[q])[0];
      f << x << ' ' << h << ' ' << bb << ' ' << h + bb << ' ' << hu << ' '
        << eta << ' ' << (h > 0 ? eta / h : 0.0) << '\n';
    }
  }
}

void write_solution_vtk(const std::string& path, const Mesh& mesh,
                        const ReferenceBasis& basis, const DGField& U,
                        const DGField& b) {
  auto f = open_out(path);
  int ne = mesh.n_elements();
  f << "# vtk DataFile Version 3.0\nripa solution\nASCII\n"
    << "DATASET UNSTRUCTURED_GRID\n";
  f << "POINTS " << mesh.n_vertices() << " double\n";
  for (const Vec2& v : mesh.vertices) f << v[0] << ' ' << v[1] << " 0\n";
  f << "CELLS " << ne << ' ' << 4 * ne << '\n';
  for (const auto& el : mesh.elements)
    f << "3 " << el[0] << ' ' << el[1] << ' ' << el[2] << '\n';
  f << "CELL_TYPES " << ne << '\n';
  for (int e = 0; e < ne; ++e) f << "5\n";
  f << "CELL_DATA " << ne << '\n';
  const char* names[] = {"h", "hu", "hv", "htheta"};
  for (int comp = 0; comp < U.ncomp; ++comp) {
    f << "SCALARS " << names[comp] << " double 1\nLOOKUP_TABLE default\n";
    for (int e = 0; e < ne; ++e) f << cell_average(U, basis, e, comp) << '\n';
  }
  f << "SCALARS b double 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < ne; ++e) f << cell_average(b, basis, e, 0) << '\n';
  f << "SCALARS surface double 1\nLOOKUP_TABLE default\n";
  for (int e = 0; e < ne; ++e)
    f << cell_average(U, basis, e, 0) + cell_average(b, basis, e, 0) << '\n';
}

void append_mesh_trajectory(const std::string& path, const Mesh& mesh,
                            double t, bool truncate) {
  std::ofstream f(path, truncate ? std::ios::trunc : std::ios::app);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << std::setprecision(17) << t;
  std::vector<double> xs;
  for (const Vec2& v : mesh.vertices) xs.push_back(v[0]);
  if (mesh.dim == 1) std::sort(xs.begin(), xs.end());
  for (size_t i = 0; i < xs.size(); ++i) {
    f << ' ' << xs[i];
    if (mesh.dim == 2) f << ' ' << mesh.vertices[i][1];
  }
  f << '\n';
}

void write_errors_csv(const std::string& path, const ErrorReport& report) {
  auto f = open_out(path);
  f << "variable,l1,linf\n";
  for (size_t i = 0; i < report.names.size(); ++i)
    f << report.names[i] << ',' << report.l1[i] << ',' << report.linf[i]
      << '\n';
}

void write_manifest(const std::string& path, const RunConfig& cfg) {
  auto f = open_out(path);
  f << "problem = " << cfg.problem << '\n'
    << "N = " << cfg.n << '\n'
    << "degree = " << cfg.degree << '\n'
    << "tfinal = " << cfg.t_final << '\n'
    << "mesh = " << cfg.mesh_mode << '\n'
    << "cfl = " << cfg.cfl << '\n'
    << "mtvb = " << cfg.m_tvb << '\n'
    << "delta = " << cfg.delta << '\n'
    << "frames = " << cfg.frames << '\n'
    << "adapt_every = " << cfg.adapt_every << '\n'
    << "out = " << cfg.out_dir << '\n';
}

}  // namespace ripadg
