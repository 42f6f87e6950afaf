#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "ripadg/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Well-balanced moving-mesh DG solver for the Ripa model"};

  std::string config_path;
  app.add_option("-c,--config", config_path, "key = value configuration file");

  // flag values start unset so they can override the config file selectively
  std::string problem, mesh_mode, out_dir;
  int n = -1, degree = -1, frames = -1;
  double tfinal = -2.0, cfl = -2.0, mtvb = -2.0;
  app.add_option("--problem", problem, "registered problem id");
  app.add_option("--N", n, "element count");
  app.add_option("--degree", degree, "polynomial degree");
  app.add_option("--tfinal", tfinal, "final time (default: problem's)");
  app.add_option("--mesh", mesh_mode, "fixed or moving")
      ->check(CLI::IsMember({"fixed", "moving"}));
  app.add_option("--cfl", cfl, "CFL number (default: problem's)");
  app.add_option("--mtvb", mtvb, "TVB constant (default: problem's)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--frames", frames, "snapshot count");
  bool list = false;
  app.add_flag("--list", list, "list registered problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list) {
      for (const auto& id : ripadg::problem_ids()) std::printf("%s\n", id.c_str());
      return 0;
    }
    ripadg::RunConfig cfg;
    if (!config_path.empty()) cfg = ripadg::parse_config_file(config_path);
    if (!problem.empty()) cfg.problem = problem;
    if (n >= 0) cfg.n = n;
    if (degree >= 0) cfg.degree = degree;
    if (tfinal > -1.5) cfg.t_final = tfinal;
    if (!mesh_mode.empty()) cfg.mesh_mode = mesh_mode;
    if (cfl > -1.5) cfg.cfl = cfl;
    if (mtvb > -1.5) cfg.m_tvb = mtvb;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (frames >= 0) cfg.frames = frames;

    ripadg::RunResult r = ripadg::run(cfg);
    std::printf("problem=%s N=%d mesh=%s t=%.6g steps=%d min_h=%.3e min_eta=%.3e\n",
                r.cfg.problem.c_str(), r.cfg.n, r.cfg.mesh_mode.c_str(), r.t,
                r.steps, r.min_h_pp, r.min_eta_pp);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "run failed: %s\n", e.what());
    return 1;
  }
}
