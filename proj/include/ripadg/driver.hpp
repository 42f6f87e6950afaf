#ifndef RIPADG_DRIVER_HPP_
#define RIPADG_DRIVER_HPP_

#include "ripadg/io.hpp"
#include "ripadg/problems.hpp"
#include "ripadg/ripa.hpp"

namespace ripadg {

struct RunResult {
  RunConfig cfg;  // with problem defaults resolved
  Mesh mesh;
  ReferenceBasis basis;
  DGField U, b;
  double t = 0.0;
  int steps = 0;
  double min_h_pp = 0.0;    // over all stages of the whole run
  double min_eta_pp = 0.0;
  double min_measure = 1e300;        // over every mesh the run produced
  double measure_drift = 0.0;        // worst relative total-measure change
};

// Project initial data, then loop adapt -> remap -> step until t_final
// (fixed-mesh mode skips the first two). Writes snapshots, trajectory,
// errors.csv, and the manifest when cfg.out_dir is set.
RunResult run(RunConfig cfg);

// Deviation from the lake-at-rest constants, measured against the discrete
// bottom: h+b - C2, momenta, eta - C1 h.
ErrorReport steady_state_errors(const RunResult& r);

// Quadrature L1 and pointwise max against an exact callable writing the
// conserved components.
ErrorReport errors_vs_exact(const RunResult& r,
                            const std::function<void(Vec2, double*)>& exact);

// Same, against a finer run sampled by point location.
ErrorReport errors_vs_reference(const RunResult& r, const RunResult& ref);

// Element index containing x (nearest element as fallback).
int locate_point(const Mesh& mesh, Vec2 x);

}  // namespace ripadg

#endif  // RIPADG_DRIVER_HPP_
