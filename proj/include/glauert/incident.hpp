#pragma once

#include "glauert/surface.hpp"
#include "glauert/types.hpp"

namespace glauert {

/// Analytic incident field in transformed coordinates at wavenumber k_hat.
struct IncidentField {
  enum class Kind { Monopole, PlaneWave };

  Kind kind = Kind::Monopole;
  Complex amplitude{1.0, 0.0};
  double k_hat = 1.0;
  Vec3 position = Vec3::Zero();   // monopole source (transformed frame)
  Vec3 direction = Vec3::UnitZ(); // plane-wave unit direction

  static IncidentField monopole(const Vec3& source, Complex amplitude,
                                double k_hat);
  static IncidentField plane_wave(const Vec3& direction, Complex amplitude,
                                  double k_hat);

  Complex value(const Vec3& x) const;
  CVec3 gradient(const Vec3& x) const;
};

/// Dirichlet and Neumann trace data of the incident field on Gamma_inf,
/// enough to assemble every right-hand-side inner product.
struct IncidentTraces {
  DenseVector gamma0_vertices;   // value at each surface P1 vertex
  DenseVector gamma0_face_mean;  // per-face mean of gamma0 (quadrature)
  DenseVector gamma1_face_mean;  // per-face mean of grad f . n

  /// (gamma1 f_inc, xi_i): tested against surface P1 hats (length r)
  DenseVector rhs_gamma1_p1;
  /// (gamma0 f_inc, psi_i): tested against P0 indicators (length q)
  DenseVector rhs_gamma0_p0;
  /// (gamma1 f_inc, psi_i): tested against P0 indicators (length q)
  DenseVector rhs_gamma1_p0;
};

IncidentTraces incident_traces(const IncidentField& field,
                               const SurfaceSpaces& spaces,
                               int quadrature_degree = 6);

}  // namespace glauert
