#include "glauert/postprocess.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace glauert {

double solid_angle_sum(const SurfaceSpaces& spaces, const Vec3& x) {
  double omega = 0.0;
  for (int f = 0; f < spaces.p0_count(); ++f) {
    const BoundaryFace& face = spaces.face(f);
    const Vec3 a = spaces.mesh->vertices[face.v[0]] - x;
    const Vec3 b = spaces.mesh->vertices[face.v[1]] - x;
    const Vec3 c = spaces.mesh->vertices[face.v[2]] - x;
    const double la = a.norm(), lb = b.norm(), lc = c.norm();
    const double num = a.cross(b).dot(c);
    const double den =
        la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
    omega += 2.0 * std::atan2(num, den);
  }
  return omega;
}

bool is_exterior(const SurfaceSpaces& spaces, const Vec3& x) {
  return std::abs(solid_angle_sum(spaces, x)) < 2.0 * M_PI;
}

namespace {

DenseVector gamma_trace(const Densities& densities, const SurfaceSpaces& spaces) {
  const int r = spaces.p1_count();
  if (densities.phi.size() < r)
    throw DimensionMismatchError("volume solution shorter than the trace block");
  return densities.phi.tail(r);
}

}  // namespace

FieldProbe reconstruct_exterior(const Densities& densities,
                                const SurfaceSpaces& spaces,
                                const IncidentField& incident,
                                const std::vector<Vec3>& points,
                                int quadrature_degree) {
  std::string interior_pts;
  for (size_t i = 0; i < points.size(); ++i)
    if (!is_exterior(spaces, points[i]))
      interior_pts += (interior_pts.empty() ? "" : ", ") + std::to_string(i);
  if (!interior_pts.empty())
    throw InteriorPointError("points inside the coupling surface: [" +
                             interior_pts + "]");

  const DenseVector mu = gamma_trace(densities, spaces);
  HelmholtzKernel kernel{incident.k_hat};
  const std::vector<Complex> layered = evaluate_potentials(
      spaces, densities.lambda, mu, points, kernel, quadrature_degree);

  FieldProbe probe;
  probe.points = points;
  probe.total.resize(points.size());
  probe.scattered.resize(points.size());
  probe.exterior.assign(points.size(), true);
  for (size_t i = 0; i < points.size(); ++i) {
    const Complex finc = incident.value(points[i]);
    probe.scattered[i] = layered[i];
    probe.total[i] = layered[i] + finc;
  }
  return probe;
}

std::vector<CVec3> reconstruct_exterior_gradient(const Densities& densities,
                                                 const SurfaceSpaces& spaces,
                                                 const IncidentField& incident,
                                                 const std::vector<Vec3>& points,
                                                 int quadrature_degree) {
  const DenseVector mu = gamma_trace(densities, spaces);
  HelmholtzKernel kernel{incident.k_hat};
  std::vector<CVec3> grads = evaluate_potentials_gradient(
      spaces, densities.lambda, mu, points, kernel, quadrature_degree);
  for (size_t i = 0; i < points.size(); ++i)
    grads[i] += incident.gradient(points[i]);
  return grads;
}

Complex pressure_from_potential(Complex f, const CVec3& grad_f,
                                const AmbientState& ambient) {
  return ambient.rho_infinity *
         (I_UNIT * ambient.omega * f -
          ambient.c_infinity * cdot(ambient.mach_infinity, grad_f));
}

void add_pressure(FieldProbe& probe, const std::vector<CVec3>& gradients,
                  const AmbientState& ambient) {
  if (gradients.size() != probe.points.size())
    throw DimensionMismatchError("gradient count does not match probe points");
  probe.pressure.resize(probe.points.size());
  for (size_t i = 0; i < probe.points.size(); ++i)
    probe.pressure[i] =
        pressure_from_potential(probe.total[i], gradients[i], ambient);
}

std::vector<std::string> write_outputs(const TetMesh& mesh,
                                       const P1VolumeSpace& space,
                                       const Densities& densities,
                                       const FieldProbe& probe,
                                       const std::string& summary_json,
                                       const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir);
  std::vector<std::string> written;

  {
    const std::string path = out_dir + "/solution.vtk";
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    os.precision(17);
    os << "# vtk DataFile Version 3.0\n"
       << "acoustic potential (transformed frame)\n"
       << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << mesh.vertices.size() << " double\n";
    for (const auto& v : mesh.vertices)
      os << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    os << "CELLS " << mesh.tets.size() << ' ' << 5 * mesh.tets.size() << '\n';
    for (const auto& t : mesh.tets)
      os << "4 " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
    os << "CELL_TYPES " << mesh.tets.size() << '\n';
    for (size_t i = 0; i < mesh.tets.size(); ++i) os << "10\n";
    os << "POINT_DATA " << mesh.vertices.size() << '\n';
    os << "SCALARS re_phi double 1\nLOOKUP_TABLE default\n";
    for (size_t v = 0; v < mesh.vertices.size(); ++v)
      os << densities.phi[space.dof_of_vertex[v]].real() << '\n';
    os << "SCALARS im_phi double 1\nLOOKUP_TABLE default\n";
    for (size_t v = 0; v < mesh.vertices.size(); ++v)
      os << densities.phi[space.dof_of_vertex[v]].imag() << '\n';
    written.push_back(path);
  }

  {
    const std::string path = out_dir + "/probes.csv";
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    os.precision(17);
    os << "x,y,z,re_f,im_f,re_p,im_p\n";
    for (size_t i = 0; i < probe.points.size(); ++i) {
      const Complex p =
          probe.pressure.empty() ? Complex(0, 0) : probe.pressure[i];
      os << probe.points[i].x() << ',' << probe.points[i].y() << ','
         << probe.points[i].z() << ',' << probe.total[i].real() << ','
         << probe.total[i].imag() << ',' << p.real() << ',' << p.imag() << '\n';
    }
    written.push_back(path);
  }

  {
    const std::string path = out_dir + "/summary.json";
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    os << summary_json << '\n';
    written.push_back(path);
  }
  return written;
}

namespace {

void check_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                  const std::string& where, std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const std::string type = schema["type"];
    const bool ok = (type == "object" && doc.is_object()) ||
                    (type == "array" && doc.is_array()) ||
                    (type == "string" && doc.is_string()) ||
                    (type == "number" && doc.is_number()) ||
                    (type == "integer" && doc.is_number_integer()) ||
                    (type == "boolean" && doc.is_boolean()) ||
                    (type == "null" && doc.is_null());
    if (!ok) {
      errors.push_back(where + ": expected " + type);
      return;
    }
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"])
      if (!doc.contains(key.get<std::string>()))
        errors.push_back(where + ": missing required key '" +
                         key.get<std::string>() + "'");
  if (schema.contains("properties") && doc.is_object())
    for (auto it = schema["properties"].begin(); it != schema["properties"].end();
         ++it)
      if (doc.contains(it.key()))
        check_schema(doc[it.key()], it.value(), where + "/" + it.key(), errors);
  if (schema.contains("items") && doc.is_array())
    for (size_t i = 0; i < doc.size(); ++i)
      check_schema(doc[i], schema["items"], where + "[" + std::to_string(i) + "]",
                   errors);
}

}  // namespace

std::vector<std::string> validate_json_schema(const std::string& document_json,
                                              const std::string& schema_json) {
  std::vector<std::string> errors;
  nlohmann::json doc, schema;
  try {
    doc = nlohmann::json::parse(document_json);
  } catch (const std::exception& e) {
    errors.push_back(std::string("document parse error: ") + e.what());
    return errors;
  }
  try {
    schema = nlohmann::json::parse(schema_json);
  } catch (const std::exception& e) {
    errors.push_back(std::string("schema parse error: ") + e.what());
    return errors;
  }
  check_schema(doc, schema, "$", errors);
  return errors;
}

}  // namespace glauert
