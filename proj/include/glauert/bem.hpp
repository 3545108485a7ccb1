#pragma once

#include <vector>

#include "glauert/surface.hpp"
#include "glauert/types.hpp"

namespace glauert {

/// Fundamental solution E(z) = exp(ik|z|) / (4 pi |z|) with derivatives.
struct HelmholtzKernel {
  Complex wavenumber{0.0, 0.0};

  Complex value(const Vec3& z) const;
  CVec3 gradient(const Vec3& z) const;
  Eigen::Matrix3cd hessian(const Vec3& z) const;
};

struct BemOptions {
  int regular_degree = 4;   // triangle rule degree for well-separated pairs
  int near_degree = 6;      // triangle rule degree for close pairs
  double near_ratio = 2.5;  // pairs closer than ratio*max(diam) count as near
  int sauter_points = 4;    // 1D Gauss points per dimension (touching pairs)
  int threads = 0;          // 0: hardware concurrency
};

/// Galerkin matrices of the four boundary integral operators on Gamma_inf,
/// assembled in one sweep over panel pairs (the kernel evaluations are
/// shared). Conventions, with n pointing into the exterior:
///   S  (q x q): <S psi_j, psi_i>       kernel E(y-x)
///   D  (q x r): <D xi_j, psi_i>        kernel n_y . grad E(y-x)
///   Dt (r x q): <Dt psi_j, xi_i>       kernel n_x . grad E(x-y)
///   N  (r x r): <N xi_j, xi_i>         Maue form:
///                E (curl_G xi_j . curl_G xi_i) - k^2 E (n_x.n_y) xi_j xi_i
/// Touching pairs use Sauter-Schwab relative-coordinate rules; the rule for
/// a swapped pair reuses the same points with roles exchanged, which makes
/// S exactly symmetric and Dt the transpose of D up to rounding.
struct BemBlocks {
  DenseMatrix single_layer;
  DenseMatrix double_layer;
  DenseMatrix adjoint_double_layer;
  DenseMatrix hypersingular;
};

BemBlocks assemble_bem_blocks(const SurfaceSpaces& spaces,
                              const HelmholtzKernel& kernel,
                              const BemOptions& options = {});

DenseMatrix assemble_single_layer(const SurfaceSpaces& spaces,
                                  const HelmholtzKernel& kernel,
                                  const BemOptions& options = {});
DenseMatrix assemble_double_layer(const SurfaceSpaces& spaces,
                                  const HelmholtzKernel& kernel,
                                  const BemOptions& options = {});
DenseMatrix assemble_adjoint_double_layer(const SurfaceSpaces& spaces,
                                          const HelmholtzKernel& kernel,
                                          const BemOptions& options = {});
DenseMatrix assemble_hypersingular(const SurfaceSpaces& spaces,
                                   const HelmholtzKernel& kernel,
                                   const BemOptions& options = {});

/// -S(lambda)(x) + D(mu)(x) at points bounded away from the surface by at
/// least the local mesh size; closer points raise NearSurfaceError listing
/// the offending indices.
std::vector<Complex> evaluate_potentials(const SurfaceSpaces& spaces,
                                         const DenseVector& lambda,
                                         const DenseVector& mu,
                                         const std::vector<Vec3>& points,
                                         const HelmholtzKernel& kernel,
                                         int quadrature_degree = 6);

/// Gradient of -S(lambda) + D(mu) (analytic kernel derivatives).
std::vector<CVec3> evaluate_potentials_gradient(const SurfaceSpaces& spaces,
                                                const DenseVector& lambda,
                                                const DenseVector& mu,
                                                const std::vector<Vec3>& points,
                                                const HelmholtzKernel& kernel,
                                                int quadrature_degree = 6);

/// Distance from a point to the closest Gamma_inf triangle, and that
/// triangle's largest edge (the local mesh size used by the near guard).
struct SurfaceDistance {
  double distance;
  double local_size;
};
SurfaceDistance distance_to_surface(const SurfaceSpaces& spaces, const Vec3& x);

/// Gauss-Legendre nodes/weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes,
                       std::vector<double>& weights);

}  // namespace glauert
