#pragma once

#include <memory>
#include <string>

#include "glauert/config.hpp"
#include "glauert/postprocess.hpp"
#include "glauert/solver.hpp"

namespace glauert {

/// Everything derived from a CaseConfig that does not depend on frequency.
struct CaseSetup {
  CaseConfig config;
  std::shared_ptr<TetMesh> mesh;  // transformed frame
  PGMap map;
  P1VolumeSpace volume;
  SurfaceSpaces surfaces;
  SurfaceP1Form delta;
};

CaseSetup prepare_case(const CaseConfig& config);

/// Ambient state at the given transformed wavenumber.
AmbientState ambient_at(const CaseSetup& setup, double k_hat);
FlowField flow_at(const CaseSetup& setup, const AmbientState& ambient);
IncidentField incident_at(const CaseSetup& setup, double k_hat);

/// Assembles the full coupled system at wavenumber k_hat.
BlockSystem assemble_system(const CaseSetup& setup, double k_hat,
                            Formulation formulation);

/// Assembles both formulations from one set of FEM/BEM blocks.
std::pair<BlockSystem, BlockSystem> assemble_both(const CaseSetup& setup,
                                                  double k_hat);

std::vector<Vec3> fibonacci_sphere(int count, double radius,
                                   const Vec3& center = Vec3::Zero());

struct RunOutcome {
  int exit_code = 0;  // 0 converged, 1 error, 2 non-convergence
  Densities densities;
  SolveReport report;
  std::string summary_json;
  std::vector<std::string> written;
};

/// Full pipeline: mesh -> flow -> assembly -> solve -> postprocess -> files.
RunOutcome run_case(const CaseConfig& config);

/// Conditioning sweep over [fmin, fmax] (Hz); writes sweep.csv in out_dir.
std::vector<SweepRow> run_sweep(const CaseConfig& config, double fmin,
                                double fmax, int steps);

/// Stable-formulation conditioning over the sweep window per eta value;
/// writes eta_sweep.csv (columns eta,k_hat,cond_stab).
std::string run_eta_sweep(const CaseConfig& config,
                          const std::vector<double>& etas, double fmin,
                          double fmax, int steps);

}  // namespace glauert
