#pragma once

#include <vector>

#include "glauert/flow.hpp"
#include "glauert/mesh.hpp"
#include "glauert/types.hpp"

namespace glauert {

/// Symmetric tetrahedron quadrature in barycentric coordinates, weights
/// summing to one (relative measure).
struct TetQuadrature {
  std::vector<Eigen::Vector4d> points;
  std::vector<double> weights;

  /// degree 2 (4 points, default) or degree 5 (14 points).
  static const TetQuadrature& by_degree(int degree);
};

/// Continuous P1 space on the tet mesh. Dofs are mesh vertices, ordered
/// interior first, then the vertices on Gamma_inf (ascending vertex index
/// within each group); the trailing group aligns with the surface P1 space.
struct P1VolumeSpace {
  const TetMesh* mesh = nullptr;
  int dof_count = 0;
  int interior_count = 0;
  int gamma_count = 0;
  std::vector<int> dof_of_vertex;  // vertex -> dof
  std::vector<int> vertex_of_dof;  // dof -> vertex

  static P1VolumeSpace build(const TetMesh& mesh);

  bool is_gamma_dof(int dof) const { return dof >= interior_count; }
};

struct InteriorFormOptions {
  int quadrature_degree = 2;
  bool include_symmetric = true;   // diffusion r Xi and reaction -r k^2 beta
  bool include_convection = true;  // i r k V . (u grad v - v grad u)
  int threads = 0;                 // 0: hardware concurrency
};

/// Galerkin matrix of the interior sesquilinear form on P1 elements,
/// entry (i,j) = V(theta_j, theta_i):
///   int r Xi grad(theta_j).grad(theta_i) - int r k^2 beta theta_j theta_i
///   + i int r k V . (theta_j grad(theta_i) - theta_i grad(theta_j)).
/// Coefficients are sampled at quadrature points. Triplets are accumulated
/// in element order so assembly is reproducible.
SparseMatrix assemble_interior_form(const P1VolumeSpace& space,
                                    const FlowField& flow,
                                    const AmbientState& ambient,
                                    const PGMap& map,
                                    const InteriorFormOptions& options = {});

/// P1 stiffness (grad.grad) and mass matrices, used by tests and the
/// Mach-0 reduction checks.
SparseMatrix assemble_stiffness(const P1VolumeSpace& space);
SparseMatrix assemble_mass(const P1VolumeSpace& space);

}  // namespace glauert
