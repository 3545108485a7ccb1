#include "glauert/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace glauert {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// strips comments outside of strings
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

TomlValue parse_scalar(const std::string& raw, int lineno) {
  const std::string s = trim(raw);
  if (s.empty()) throw ConfigError("empty value at line " + std::to_string(lineno));
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"')
      throw ConfigError("unterminated string at line " + std::to_string(lineno));
    return s.substr(1, s.size() - 2);
  }
  if (s == "true") return true;
  if (s == "false") return false;
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
      throw ConfigError("malformed number '" + s + "' at line " +
                        std::to_string(lineno));
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse value '" + s + "' at line " +
                      std::to_string(lineno));
  }
}

}  // namespace

TomlTable parse_toml(const std::string& text) {
  TomlTable table;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header at line " +
                          std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("empty section name at line " + std::to_string(lineno));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("empty key at line " + std::to_string(lineno));
    const std::string path = section.empty() ? key : section + "." + key;
    if (table.values.count(path))
      throw ConfigError("duplicate key '" + path + "' at line " +
                        std::to_string(lineno));
    if (!value.empty() && value.front() == '[') {
      if (value.back() != ']')
        throw ConfigError("unterminated array at line " + std::to_string(lineno));
      std::vector<double> nums;
      std::vector<std::string> strs;
      std::string inner = value.substr(1, value.size() - 2);
      std::istringstream items(inner);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        TomlValue v = parse_scalar(item, lineno);
        if (std::holds_alternative<double>(v))
          nums.push_back(std::get<double>(v));
        else if (std::holds_alternative<std::string>(v))
          strs.push_back(std::get<std::string>(v));
        else
          throw ConfigError("unsupported array element at line " +
                            std::to_string(lineno));
      }
      if (!strs.empty() && !nums.empty())
        throw ConfigError("mixed array types at line " + std::to_string(lineno));
      if (!strs.empty())
        table.values[path] = strs;
      else
        table.values[path] = nums;
    } else {
      table.values[path] = parse_scalar(value, lineno);
    }
  }
  return table;
}

TomlTable parse_toml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_toml(ss.str());
}

std::string TomlTable::get_string(const std::string& key,
                                  const std::string& fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  if (!std::holds_alternative<std::string>(it->second))
    throw ConfigError("key '" + key + "' must be a string");
  return std::get<std::string>(it->second);
}

double TomlTable::get_number(const std::string& key, double fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  if (!std::holds_alternative<double>(it->second))
    throw ConfigError("key '" + key + "' must be a number");
  return std::get<double>(it->second);
}

bool TomlTable::get_bool(const std::string& key, bool fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  if (!std::holds_alternative<bool>(it->second))
    throw ConfigError("key '" + key + "' must be a boolean");
  return std::get<bool>(it->second);
}

std::vector<double> TomlTable::get_numbers(
    const std::string& key, const std::vector<double>& fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  if (!std::holds_alternative<std::vector<double>>(it->second))
    throw ConfigError("key '" + key + "' must be a numeric array");
  return std::get<std::vector<double>>(it->second);
}

namespace {

Vec3 get_vec3(const TomlTable& t, const std::string& key, const Vec3& fallback) {
  if (!t.has(key)) return fallback;
  const auto v = t.get_numbers(key, {});
  if (v.size() != 3)
    throw ConfigError("key '" + key + "' must be a 3-component array");
  return Vec3(v[0], v[1], v[2]);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "mesh.source", "mesh.path", "mesh.object_name", "mesh.farfield_name",
      "mesh.inner_semiaxes", "mesh.outer_radius", "mesh.subdivisions",
      "mesh.layers",
      "ambient.rho", "ambient.c", "ambient.mach", "ambient.axis",
      "ambient.frequency_hz", "ambient.k_hat",
      "flow.kind", "flow.body_radius", "flow.body_center", "flow.path",
      "incident.kind", "incident.position", "incident.direction",
      "incident.amplitude_re", "incident.amplitude_im",
      "formulation", "eta_re", "eta_im",
      "solver.tol", "solver.max_iter", "solver.precondition",
      "solver.spai_radius", "solver.threads",
      "fem.quadrature_degree",
      "bem.regular_degree", "bem.near_degree", "bem.sauter_points",
      "output.out_dir", "output.probe_radius", "output.probe_count",
      "output.compute_condition",
      "sweep.fmin", "sweep.fmax", "sweep.steps", "sweep.solves",
  };
  return keys;
}

}  // namespace

CaseConfig CaseConfig::from_table(const TomlTable& table) {
  for (const auto& [key, value] : table.values)
    if (!known_keys().count(key))
      throw ConfigError("unknown config key '" + key + "'");

  CaseConfig c;
  const std::string source = table.get_string("mesh.source", "builtin");
  if (source == "builtin")
    c.mesh_source = MeshSource::Builtin;
  else if (source == "file")
    c.mesh_source = MeshSource::File;
  else
    throw ConfigError("mesh.source must be 'builtin' or 'file'");
  c.mesh_path = table.get_string("mesh.path", "");
  if (c.mesh_source == MeshSource::File && c.mesh_path.empty())
    throw ConfigError("mesh.source = 'file' requires mesh.path");
  c.object_name = table.get_string("mesh.object_name", c.object_name);
  c.farfield_name = table.get_string("mesh.farfield_name", c.farfield_name);
  c.inner_semiaxes = get_vec3(table, "mesh.inner_semiaxes", c.inner_semiaxes);
  c.outer_radius = table.get_number("mesh.outer_radius", c.outer_radius);
  c.subdivisions = static_cast<int>(table.get_number("mesh.subdivisions", 1));
  c.layers = static_cast<int>(table.get_number("mesh.layers", 2));

  c.rho = table.get_number("ambient.rho", c.rho);
  c.c = table.get_number("ambient.c", c.c);
  c.mach = table.get_number("ambient.mach", c.mach);
  if (c.mach < 0.0 || c.mach >= 1.0)
    throw ConfigError("ambient.mach must lie in [0, 1)");
  c.flow_axis = get_vec3(table, "ambient.axis", c.flow_axis);
  if (c.flow_axis.norm() == 0.0) throw ConfigError("ambient.axis must be nonzero");
  c.flow_axis.normalize();
  if (table.has("ambient.frequency_hz"))
    c.frequency_hz = table.get_number("ambient.frequency_hz", 0.0);
  if (table.has("ambient.k_hat"))
    c.k_hat = table.get_number("ambient.k_hat", 0.0);
  if (!c.frequency_hz && !c.k_hat)
    throw ConfigError("one of ambient.frequency_hz or ambient.k_hat is required");
  if (c.frequency_hz && c.k_hat)
    throw ConfigError("ambient.frequency_hz and ambient.k_hat are exclusive");

  const std::string fkind = table.get_string("flow.kind", "uniform");
  if (fkind == "uniform")
    c.flow_kind = FlowKind::Uniform;
  else if (fkind == "sphere_dipole")
    c.flow_kind = FlowKind::SphereDipole;
  else if (fkind == "nodal")
    c.flow_kind = FlowKind::Nodal;
  else
    throw ConfigError("flow.kind must be uniform, sphere_dipole or nodal");
  c.body_radius = table.get_number("flow.body_radius", c.body_radius);
  c.body_center = get_vec3(table, "flow.body_center", c.body_center);
  c.flow_path = table.get_string("flow.path", "");
  if (c.flow_kind == FlowKind::Nodal && c.flow_path.empty())
    throw ConfigError("flow.kind = 'nodal' requires flow.path");

  const std::string ikind = table.get_string("incident.kind", "monopole");
  if (ikind == "monopole")
    c.incident_kind = IncidentKind::Monopole;
  else if (ikind == "plane_wave")
    c.incident_kind = IncidentKind::PlaneWave;
  else
    throw ConfigError("incident.kind must be monopole or plane_wave");
  c.incident_position = get_vec3(table, "incident.position", c.incident_position);
  c.incident_direction =
      get_vec3(table, "incident.direction", c.incident_direction);
  c.incident_amplitude = Complex(table.get_number("incident.amplitude_re", 1.0),
                                 table.get_number("incident.amplitude_im", 0.0));

  const std::string form = table.get_string("formulation", "stable");
  if (form == "stable")
    c.formulation = Formulation::Stable;
  else if (form == "unstable")
    c.formulation = Formulation::Unstable;
  else
    throw ConfigError("formulation must be 'stable' or 'unstable'");
  c.eta = Complex(table.get_number("eta_re", 1.0), table.get_number("eta_im", 0.0));
  if (c.formulation == Formulation::Stable && c.eta.real() == 0.0)
    throw EtaError("the coupling parameter eta must have Re(eta) != 0");

  c.tol = table.get_number("solver.tol", c.tol);
  if (c.tol <= 0.0) throw ConfigError("solver.tol must be positive");
  c.max_iter = static_cast<int>(table.get_number("solver.max_iter", c.max_iter));
  c.precondition = table.get_bool("solver.precondition", c.precondition);
  c.spai_radius =
      static_cast<int>(table.get_number("solver.spai_radius", c.spai_radius));
  c.threads = static_cast<int>(table.get_number("solver.threads", 0));

  c.fem_quadrature_degree =
      static_cast<int>(table.get_number("fem.quadrature_degree", 2));
  c.bem_regular_degree =
      static_cast<int>(table.get_number("bem.regular_degree", 4));
  c.bem_near_degree = static_cast<int>(table.get_number("bem.near_degree", 6));
  c.bem_sauter_points =
      static_cast<int>(table.get_number("bem.sauter_points", 4));

  c.out_dir = table.get_string("output.out_dir", c.out_dir);
  c.probe_radius = table.get_number("output.probe_radius", 0.0);
  c.probe_count = static_cast<int>(table.get_number("output.probe_count", 64));
  c.compute_condition = table.get_bool("output.compute_condition", false);

  c.sweep_fmin = table.get_number("sweep.fmin", 0.0);
  c.sweep_fmax = table.get_number("sweep.fmax", 0.0);
  c.sweep_steps = static_cast<int>(table.get_number("sweep.steps", 0));
  c.sweep_solves = table.get_bool("sweep.solves", false);
  return c;
}

CaseConfig CaseConfig::from_file(const std::string& path) {
  return from_table(parse_toml_file(path));
}

double CaseConfig::gamma_infinity() const {
  return 1.0 / std::sqrt(1.0 - mach * mach);
}

double CaseConfig::resolved_k_hat() const {
  if (k_hat) return *k_hat;
  const double omega = 2.0 * M_PI * *frequency_hz;
  return gamma_infinity() * omega / c;
}

}  // namespace glauert
