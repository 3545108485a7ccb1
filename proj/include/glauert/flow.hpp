#pragma once

#include <memory>
#include <string>
#include <vector>

#include "glauert/mesh.hpp"
#include "glauert/types.hpp"

namespace glauert {

/// Uniform-flow reference state of the exterior domain.
struct AmbientState {
  double rho_infinity = 1.0;   // kg/m^3
  double c_infinity = 1.0;     // m/s
  Vec3 mach_infinity = Vec3::Zero();
  double omega = 1.0;          // rad/s
  double k_infinity = 1.0;     // omega / c_infinity
  double k_hat_infinity = 1.0; // gamma_infinity * k_infinity

  static AmbientState make(double rho, double c, const Vec3& mach, double omega);
};

struct FlowSample {
  double rho;
  double c;
  double k;
  Vec3 mach;
};

/// Background flow sampled at transformed-frame points.
class FlowField {
 public:
  enum class Kind { Uniform, SphereDipole, NodalData };

  Kind kind() const { return kind_; }

  /// Samples (rho0, c0, k0, M0) at a transformed-coordinate point. For
  /// nodal data, `tet_hint` selects the interpolation element when known.
  FlowSample sample(const Vec3& x, int tet_hint = -1) const;

  /// Largest deviation of the nodal Gamma_inf trace from the ambient state
  /// (0 for analytic flows, which match by construction).
  double continuity_deviation() const { return continuity_deviation_; }

  static FlowField uniform(const AmbientState& ambient);
  static FlowField sphere_dipole(double radius, const Vec3& center,
                                 const AmbientState& ambient, const PGMap& map);
  static FlowField nodal(std::shared_ptr<const TetMesh> mesh,
                         std::vector<FlowSample> vertex_samples,
                         const AmbientState& ambient);

 private:
  Kind kind_ = Kind::Uniform;
  AmbientState ambient_;
  PGMap map_;
  double body_radius_ = 0.0;
  Vec3 body_center_ = Vec3::Zero();
  std::shared_ptr<const TetMesh> mesh_;
  std::vector<FlowSample> vertex_samples_;
  double continuity_deviation_ = 0.0;

  FlowSample sample_dipole(const Vec3& x) const;
  FlowSample sample_nodal(const Vec3& x, int tet_hint) const;
};

/// Incompressible potential flow past a sphere: M0 = M_inf plus a dipole
/// correction decaying as (a/s)^3, tangential on the sphere surface.
FlowField sphere_dipole_flow(double radius, const Vec3& center,
                             const AmbientState& ambient, const PGMap& map);

/// Reads per-vertex flow data (CSV `x,y,z,rho,c,Mx,My,Mz`, one row per mesh
/// vertex in vertex order) into a P1-interpolated sampler.
FlowField nodal_flow_from_file(const std::string& path,
                               std::shared_ptr<const TetMesh> mesh,
                               const AmbientState& ambient);

/// Transformed coefficient fields of the interior equation.
struct PGCoefficients {
  double r;     // rho0 / rho_inf
  double q;     // gamma^2 k_inf / k0
  double P;     // M0 . M_inf
  double k;     // local wavenumber k0
  double beta;  // (1+qP)^2 - q^2 |M_inf|^2
  Vec3 V;       // (1+qP) N M0 - q gamma M_inf
  Mat3 Xi;      // N (I - M0 M0^T) N
};

inline constexpr double kSubsonicMargin = 1e-3;

PGCoefficients coefficients_at(const Vec3& x, const FlowField& flow,
                               const AmbientState& ambient, const PGMap& map,
                               int tet_hint = -1);

PGCoefficients coefficients_from_sample(const FlowSample& s,
                                        const AmbientState& ambient,
                                        const PGMap& map);

}  // namespace glauert
