#pragma once

#include <unordered_map>
#include <vector>

#include "glauert/fem.hpp"
#include "glauert/mesh.hpp"
#include "glauert/types.hpp"

namespace glauert {

/// Symmetric triangle quadrature in barycentric coordinates, weights
/// summing to one.
struct TriQuadrature {
  std::vector<Vec3> points;
  std::vector<double> weights;

  /// degrees 1 (1 pt), 2 (3 pts), 4 (6 pts), 6 (12 pts).
  static const TriQuadrature& by_degree(int degree);
};

/// P0 (faces) and P1 (vertices) spaces on Gamma_inf. The P1 dof order is
/// ascending mesh-vertex index, which matches the trailing block of
/// P1VolumeSpace, so the volume-to-surface trace map is the identity on
/// that block.
struct SurfaceSpaces {
  const TetMesh* mesh = nullptr;
  std::vector<int> faces;         // Gamma_inf indices into mesh->boundary_faces
  std::vector<int> vertex_of_p1;  // surface P1 dof -> mesh vertex
  std::unordered_map<int, int> p1_of_vertex;
  std::vector<std::array<int, 3>> face_p1;  // per face: surface P1 dofs

  int p0_count() const { return static_cast<int>(faces.size()); }
  int p1_count() const { return static_cast<int>(vertex_of_p1.size()); }

  const BoundaryFace& face(int i) const { return mesh->boundary_faces[faces[i]]; }

  static SurfaceSpaces build(const TetMesh& mesh);

  /// Checks that the surface P1 numbering coincides with the Gamma_inf block
  /// of the volume space (throws DimensionMismatchError otherwise).
  void check_trace_compatibility(const P1VolumeSpace& volume) const;
};

/// P0-tested, P1-trial surface mass: entry (i,j) = int_{F_i} xi_j ds
/// (exact: area_i / 3 for each vertex of F_i).
RealSparseMatrix p0_p1_mass(const SurfaceSpaces& spaces);

/// P1-P1 surface mass (exact on flat triangles).
RealSparseMatrix p1_mass(const SurfaceSpaces& spaces);

/// Per-face constant surface gradients of the three P1 hats and the face
/// surface curl (n x grad); both constant on flat triangles.
struct FaceP1Derivatives {
  Vec3 grad[3];
  Vec3 curl[3];
};
FaceP1Derivatives face_p1_derivatives(const SurfaceSpaces& spaces, int face_idx);

}  // namespace glauert
