#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "glauert/coupling.hpp"
#include "glauert/types.hpp"

namespace glauert {

/// One TOML value: string, number, boolean, or array of numbers/strings.
using TomlValue =
    std::variant<std::string, double, bool, std::vector<double>,
                 std::vector<std::string>>;

/// Flat table of dotted key paths ("section.key" -> value). Covers the
/// subset of TOML used by the case files: [section] headers, key = value,
/// strings, numbers, booleans, arrays, comments.
struct TomlTable {
  std::map<std::string, TomlValue> values;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_number(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_numbers(const std::string& key,
                                  const std::vector<double>& fallback) const;
};

TomlTable parse_toml(const std::string& text);
TomlTable parse_toml_file(const std::string& path);

enum class MeshSource { Builtin, File };
enum class FlowKind { Uniform, SphereDipole, Nodal };
enum class IncidentKind { Monopole, PlaneWave };

/// Validated case description. Construction from a TOML table rejects
/// unknown keys and inconsistent values.
struct CaseConfig {
  // mesh
  MeshSource mesh_source = MeshSource::Builtin;
  std::string mesh_path;
  std::string object_name = "object";
  std::string farfield_name = "farfield";
  Vec3 inner_semiaxes = Vec3(0.5, 0.5, 0.5);
  double outer_radius = 1.0;
  int subdivisions = 1;
  int layers = 2;

  // ambient + frequency
  double rho = 1.0;
  double c = 1.0;
  double mach = 0.0;
  Vec3 flow_axis = Vec3::UnitZ();
  std::optional<double> frequency_hz;  // exactly one of these two
  std::optional<double> k_hat;

  // flow
  FlowKind flow_kind = FlowKind::Uniform;
  double body_radius = 0.5;
  Vec3 body_center = Vec3::Zero();
  std::string flow_path;

  // incident
  IncidentKind incident_kind = IncidentKind::Monopole;
  Vec3 incident_position = Vec3(0, 0, -3.0);
  Vec3 incident_direction = Vec3::UnitZ();
  Complex incident_amplitude{1.0, 0.0};

  // formulation
  Formulation formulation = Formulation::Stable;
  Complex eta{1.0, 0.0};

  // solver
  double tol = 1e-6;
  int max_iter = 2000;
  bool precondition = true;
  int spai_radius = 1;
  int threads = 0;

  // discretization
  int fem_quadrature_degree = 2;
  int bem_regular_degree = 4;
  int bem_near_degree = 6;
  int bem_sauter_points = 4;

  // outputs
  std::string out_dir = "out";
  double probe_radius = 0.0;  // 0: no probes
  int probe_count = 64;
  bool compute_condition = false;

  // sweep
  double sweep_fmin = 0.0;
  double sweep_fmax = 0.0;
  int sweep_steps = 0;
  bool sweep_solves = false;

  static CaseConfig from_table(const TomlTable& table);
  static CaseConfig from_file(const std::string& path);

  /// k_hat resolved from either the explicit value or the frequency.
  double resolved_k_hat() const;
  double gamma_infinity() const;
};

}  // namespace glauert
