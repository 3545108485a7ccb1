#pragma once

#include <string>
#include <vector>

#include "glauert/bem.hpp"
#include "glauert/coupling.hpp"
#include "glauert/flow.hpp"
#include "glauert/incident.hpp"
#include "glauert/solver.hpp"

namespace glauert {

/// Evaluated exterior field samples.
struct FieldProbe {
  std::vector<Vec3> points;
  std::vector<Complex> total;      // f = -S(lambda) + D(g0 Phi) + f_inc
  std::vector<Complex> scattered;  // f - f_inc
  std::vector<Complex> pressure;   // empty until pressure is computed
  std::vector<bool> exterior;      // solid-angle classification
  std::string provenance;
};

/// Sum of signed solid angles of the Gamma_inf triangles seen from x
/// (about 4 pi inside, 0 outside).
double solid_angle_sum(const SurfaceSpaces& spaces, const Vec3& x);
bool is_exterior(const SurfaceSpaces& spaces, const Vec3& x);

/// Representation formula on exterior points. Points inside Gamma_inf raise
/// InteriorPointError; points closer than the local mesh size raise
/// NearSurfaceError (both list the offending indices).
FieldProbe reconstruct_exterior(const Densities& densities,
                                const SurfaceSpaces& spaces,
                                const IncidentField& incident,
                                const std::vector<Vec3>& points,
                                int quadrature_degree = 6);

/// Gradient of the reconstruction (analytic kernel derivatives).
std::vector<CVec3> reconstruct_exterior_gradient(const Densities& densities,
                                                 const SurfaceSpaces& spaces,
                                                 const IncidentField& incident,
                                                 const std::vector<Vec3>& points,
                                                 int quadrature_degree = 6);

/// Linearized Bernoulli relation in the uniform-flow exterior:
/// p = rho_inf (i omega f - c_inf M_inf . grad f).
Complex pressure_from_potential(Complex f, const CVec3& grad_f,
                                const AmbientState& ambient);

void add_pressure(FieldProbe& probe, const std::vector<CVec3>& gradients,
                  const AmbientState& ambient);

/// Writes solution.vtk (legacy ASCII, Re/Im of Phi at mesh points),
/// probes.csv (x,y,z,re_f,im_f,re_p,im_p) and summary.json into out_dir.
/// Returns the paths written.
std::vector<std::string> write_outputs(const TetMesh& mesh,
                                       const P1VolumeSpace& space,
                                       const Densities& densities,
                                       const FieldProbe& probe,
                                       const std::string& summary_json,
                                       const std::string& out_dir);

/// Minimal JSON-schema check (type / required / properties / items);
/// returns human-readable violations, empty when the document conforms.
std::vector<std::string> validate_json_schema(const std::string& document_json,
                                              const std::string& schema_json);

}  // namespace glauert
