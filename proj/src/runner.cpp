#include "glauert/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace glauert {

CaseSetup prepare_case(const CaseConfig& config) {
  CaseSetup setup;
  setup.config = config;
  setup.map = PGMap::from_mach(config.mach * config.flow_axis);

  TetMesh physical;
  if (config.mesh_source == MeshSource::Builtin) {
    BallShellParams params;
    params.inner_semiaxes = config.inner_semiaxes;
    params.outer_radius = config.outer_radius;
    params.subdivisions = config.subdivisions;
    params.layers = config.layers;
    physical = generate_ball_shell(params);
  } else {
    TagNames names;
    names.object = config.object_name;
    names.farfield = config.farfield_name;
    physical = load_gmsh(config.mesh_path, names);
  }
  // The mesh is generated/loaded in physical coordinates and transformed
  // once; everything downstream works in the transformed frame.
  setup.mesh = std::make_shared<TetMesh>(apply_prandtl_glauert(physical, setup.map));
  setup.volume = P1VolumeSpace::build(*setup.mesh);
  setup.surfaces = SurfaceSpaces::build(*setup.mesh);
  setup.delta = assemble_delta_form(setup.surfaces);
  return setup;
}

AmbientState ambient_at(const CaseSetup& setup, double k_hat) {
  const double gamma = setup.map.gamma_infinity;
  const double omega = k_hat * setup.config.c / gamma;
  return AmbientState::make(setup.config.rho, setup.config.c,
                            setup.config.mach * setup.config.flow_axis, omega);
}

FlowField flow_at(const CaseSetup& setup, const AmbientState& ambient) {
  switch (setup.config.flow_kind) {
    case FlowKind::Uniform:
      return FlowField::uniform(ambient);
    case FlowKind::SphereDipole:
      return FlowField::sphere_dipole(setup.config.body_radius,
                                      setup.config.body_center, ambient,
                                      setup.map);
    case FlowKind::Nodal:
      return nodal_flow_from_file(setup.config.flow_path, setup.mesh, ambient);
  }
  throw ConfigError("unreachable flow kind");
}

IncidentField incident_at(const CaseSetup& setup, double k_hat) {
  if (setup.config.incident_kind == IncidentKind::Monopole)
    return IncidentField::monopole(setup.config.incident_position,
                                   setup.config.incident_amplitude, k_hat);
  return IncidentField::plane_wave(setup.config.incident_direction,
                                   setup.config.incident_amplitude, k_hat);
}

namespace {

struct SystemPieces {
  SparseMatrix fem;
  BemBlocks bem;
  IncidentTraces traces;
};

SystemPieces assemble_pieces(const CaseSetup& setup, double k_hat) {
  const AmbientState ambient = ambient_at(setup, k_hat);
  const FlowField flow = flow_at(setup, ambient);

  InteriorFormOptions fem_opts;
  fem_opts.quadrature_degree = setup.config.fem_quadrature_degree;
  fem_opts.threads = setup.config.threads;

  BemOptions bem_opts;
  bem_opts.regular_degree = setup.config.bem_regular_degree;
  bem_opts.near_degree = setup.config.bem_near_degree;
  bem_opts.sauter_points = setup.config.bem_sauter_points;
  bem_opts.threads = setup.config.threads;
  const HelmholtzKernel kernel{Complex(k_hat, 0.0)};

  SystemPieces pieces;
  pieces.fem =
      assemble_interior_form(setup.volume, flow, ambient, setup.map, fem_opts);
  pieces.bem = assemble_bem_blocks(setup.surfaces, kernel, bem_opts);
  pieces.traces = incident_traces(incident_at(setup, k_hat), setup.surfaces);
  return pieces;
}

}  // namespace

BlockSystem assemble_system(const CaseSetup& setup, double k_hat,
                            Formulation formulation) {
  const SystemPieces pieces = assemble_pieces(setup, k_hat);
  if (formulation == Formulation::Unstable)
    return assemble_unstable(pieces.fem, pieces.bem, setup.surfaces,
                             setup.volume, pieces.traces);
  return assemble_stable(pieces.fem, pieces.bem, setup.delta, setup.surfaces,
                         setup.volume, pieces.traces, setup.config.eta);
}

std::pair<BlockSystem, BlockSystem> assemble_both(const CaseSetup& setup,
                                                  double k_hat) {
  const SystemPieces pieces = assemble_pieces(setup, k_hat);
  return {assemble_unstable(pieces.fem, pieces.bem, setup.surfaces,
                            setup.volume, pieces.traces),
          assemble_stable(pieces.fem, pieces.bem, setup.delta, setup.surfaces,
                          setup.volume, pieces.traces, setup.config.eta)};
}

std::vector<Vec3> fibonacci_sphere(int count, double radius, const Vec3& center) {
  std::vector<Vec3> pts;
  pts.reserve(count);
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.push_back(center +
                  radius * Vec3(r * std::cos(phi), r * std::sin(phi), z));
  }
  return pts;
}

namespace {

nlohmann::json config_echo(const CaseConfig& config) {
  nlohmann::json j;
  j["mesh_source"] = config.mesh_source == MeshSource::Builtin ? "builtin" : "file";
  if (!config.mesh_path.empty()) j["mesh_path"] = config.mesh_path;
  j["subdivisions"] = config.subdivisions;
  j["layers"] = config.layers;
  j["outer_radius"] = config.outer_radius;
  j["inner_semiaxes"] = {config.inner_semiaxes.x(), config.inner_semiaxes.y(),
                         config.inner_semiaxes.z()};
  j["rho"] = config.rho;
  j["c"] = config.c;
  j["mach"] = config.mach;
  j["axis"] = {config.flow_axis.x(), config.flow_axis.y(), config.flow_axis.z()};
  j["flow_kind"] = config.flow_kind == FlowKind::Uniform        ? "uniform"
                   : config.flow_kind == FlowKind::SphereDipole ? "sphere_dipole"
                                                                : "nodal";
  j["incident_kind"] =
      config.incident_kind == IncidentKind::Monopole ? "monopole" : "plane_wave";
  j["tol"] = config.tol;
  j["max_iter"] = config.max_iter;
  j["precondition"] = config.precondition;
  return j;
}

}  // namespace

RunOutcome run_case(const CaseConfig& config) {
  RunOutcome outcome;
  const CaseSetup setup = prepare_case(config);
  const double k_hat = config.resolved_k_hat();
  const BlockSystem system = assemble_system(setup, k_hat, config.formulation);

  SolverConfig sc;
  sc.tol = config.tol;
  sc.max_iter = config.max_iter;
  sc.precondition = config.precondition;
  sc.spai_radius = config.spai_radius;
  auto [densities, report] = solve_case(system, setup.surfaces, sc);
  outcome.densities = densities;
  outcome.report = report;

  FieldProbe probe;
  if (config.probe_radius > 0.0) {
    const std::vector<Vec3> pts =
        fibonacci_sphere(config.probe_count, config.probe_radius);
    const IncidentField incident = incident_at(setup, k_hat);
    probe = reconstruct_exterior(densities, setup.surfaces, incident, pts);
    const std::vector<CVec3> grads =
        reconstruct_exterior_gradient(densities, setup.surfaces, incident, pts);
    add_pressure(probe, grads, ambient_at(setup, k_hat));
  }

  nlohmann::json summary;
  summary["k_hat"] = k_hat;
  summary["frequency_hz"] =
      k_hat * config.c / (2.0 * M_PI * setup.map.gamma_infinity);
  summary["formulation"] =
      config.formulation == Formulation::Stable ? "stable" : "unstable";
  summary["eta_re"] = config.eta.real();
  summary["eta_im"] = config.eta.imag();
  summary["iterations"] = report.iterations;
  summary["final_residual"] = report.final_residual;
  summary["converged"] = report.converged;
  summary["p_aux_inf_norm"] =
      densities.p_aux.size() ? densities.p_aux.lpNorm<Eigen::Infinity>() : 0.0;
  if (config.compute_condition)
    summary["condition_number"] = condition_number(system.to_dense());
  summary["mesh"] = nlohmann::json::parse(mesh_summary_json(*setup.mesh));
  summary["config"] = config_echo(config);
  outcome.summary_json = summary.dump(2);

  outcome.written = write_outputs(*setup.mesh, setup.volume, densities, probe,
                                  outcome.summary_json, config.out_dir);
  {
    const std::string path = config.out_dir + "/residuals.csv";
    std::ofstream os(path);
    os << residual_csv(report);
    outcome.written.push_back(path);
  }
  outcome.exit_code = report.converged ? 0 : 2;
  return outcome;
}

std::vector<SweepRow> run_sweep(const CaseConfig& config, double fmin,
                                double fmax, int steps) {
  if (steps < 2) throw ConfigError("sweep needs at least 2 steps");
  if (!(fmin < fmax)) throw ConfigError("sweep needs fmin < fmax");
  const CaseSetup setup = prepare_case(config);
  const double gamma = setup.map.gamma_infinity;
  const double to_khat = gamma * 2.0 * M_PI / config.c;

  std::vector<double> khats(steps);
  for (int i = 0; i < steps; ++i)
    khats[i] = to_khat * (fmin + (fmax - fmin) * i / (steps - 1));

  SolverConfig sc;
  sc.tol = config.tol;
  sc.max_iter = config.max_iter;
  sc.precondition = config.precondition;
  sc.spai_radius = config.spai_radius;

  auto assemble = [&setup](double k) { return assemble_both(setup, k); };
  std::vector<SweepRow> rows =
      sweep_conditioning(assemble, setup.surfaces, khats, 1.0 / to_khat, sc,
                         config.sweep_solves);

  std::filesystem::create_directories(config.out_dir);
  std::ofstream os(config.out_dir + "/sweep.csv");
  if (!os) throw IoError("cannot write sweep.csv in " + config.out_dir);
  os << sweep_csv(rows);
  return rows;
}

std::string run_eta_sweep(const CaseConfig& config,
                          const std::vector<double>& etas, double fmin,
                          double fmax, int steps) {
  if (steps < 2) throw ConfigError("sweep needs at least 2 steps");
  const CaseSetup setup = prepare_case(config);
  const double gamma = setup.map.gamma_infinity;
  const double to_khat = gamma * 2.0 * M_PI / config.c;

  std::ostringstream os;
  os.precision(17);
  os << "eta,k_hat,cond_stab\n";
  for (double eta : etas) {
    CaseSetup local = setup;
    local.config.eta = Complex(eta, 0.0);
    for (int i = 0; i < steps; ++i) {
      const double f = fmin + (fmax - fmin) * i / (steps - 1);
      const double k = to_khat * f;
      const BlockSystem sys = assemble_system(local, k, Formulation::Stable);
      os << eta << ',' << k << ',' << condition_number(sys.to_dense()) << '\n';
    }
  }
  std::filesystem::create_directories(config.out_dir);
  std::ofstream file(config.out_dir + "/eta_sweep.csv");
  if (!file) throw IoError("cannot write eta_sweep.csv in " + config.out_dir);
  file << os.str();
  return os.str();
}

}  // namespace glauert
