#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "glauert/types.hpp"

namespace glauert {

enum class SurfaceTag { GammaObject, GammaInfinity };

/// Prandtl-Glauert spatial map: dilation of magnitude gamma_infinity along
/// the flow axis, identity orthogonal to it.
struct PGMap {
  Vec3 mach_infinity = Vec3::Zero();
  double gamma_infinity = 1.0;
  Vec3 dilation_axis = Vec3::UnitZ();  // arbitrary when |M_inf| = 0
  Mat3 matrix_N = Mat3::Identity();
  double c_infinity_coeff = 0.5;

  static PGMap from_mach(const Vec3& mach);

  Vec3 forward(const Vec3& x) const;
  Vec3 inverse(const Vec3& x) const;
};

struct BoundaryFace {
  std::array<int, 3> v;  // ordered so (v1-v0)x(v2-v0) || normal
  SurfaceTag tag = SurfaceTag::GammaObject;
  Vec3 normal = Vec3::Zero();  // unit, away from the owning tet
  double area = 0.0;
  int owner_tet = -1;
};

struct EdgeStats {
  double h_min = 0.0;
  double h_mean = 0.0;
  double h_max = 0.0;
};

struct TetMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> tets;
  std::vector<BoundaryFace> boundary_faces;
  EdgeStats edges;

  double tet_volume(int t) const;
  double total_volume() const;
  Vec3 centroid() const;  // volume-weighted centroid of the tet mesh

  std::vector<int> faces_with_tag(SurfaceTag tag) const;
  double surface_area(SurfaceTag tag) const;
};

/// A triangle read from file carrying a surface tag, before orientation.
struct TaggedTri {
  std::array<int, 3> v;
  SurfaceTag tag;
};

/// Physical-group names recognized by the Gmsh reader (case-insensitive).
struct TagNames {
  std::string object = "object";
  std::string farfield = "farfield";
};

/// Reads a Gmsh ASCII mesh (v2.2 or v4.1): tetrahedra plus tagged boundary
/// triangles. Establishes all TetMesh invariants.
TetMesh load_gmsh(const std::string& path, const TagNames& names = {});

/// Assigns every face incident to exactly one tet, orienting normals away
/// from the owning tet. Tags are matched against `tagged` by vertex set;
/// an extracted boundary face without a recognized tag raises TagError,
/// a tagged triangle that is not a boundary face raises TopologyError.
std::vector<BoundaryFace> extract_boundary(const std::vector<Vec3>& vertices,
                                           const std::vector<std::array<int, 4>>& tets,
                                           const std::vector<TaggedTri>& tagged);

/// Computes edge statistics and runs the conformity checks (positive tet
/// volumes, closed tagged surfaces). Throws TopologyError on violation.
void finalize_mesh(TetMesh& mesh, const std::vector<TaggedTri>& tagged);

/// Vertex map x -> gamma (Mhat.x) Mhat + (x - (Mhat.x) Mhat); connectivity,
/// tags and face orientation are preserved, normals/areas recomputed.
TetMesh apply_prandtl_glauert(const TetMesh& mesh, const PGMap& map);

/// Built-in generator: tetrahedral shell between an inner ellipsoid
/// (tagged object) and an outer sphere (tagged farfield), both triangulated
/// from the same subdivided icosahedron so the acceptance tests need no
/// external mesher.
struct BallShellParams {
  Vec3 inner_semiaxes = Vec3(0.5, 0.5, 0.5);
  double outer_radius = 1.0;
  Vec3 center = Vec3::Zero();
  int subdivisions = 1;  // icosphere level: 20 * 4^n faces per surface
  int layers = 2;        // radial gaps between the two surfaces
};

TetMesh generate_ball_shell(const BallShellParams& params);

/// Unit icosphere triangulation (vertices on the unit sphere).
void icosphere(int subdivisions, std::vector<Vec3>& vertices,
               std::vector<std::array<int, 3>>& faces);

/// Mesh summary as JSON text: vertex/tet/face counts per tag and the
/// smallest/mean/largest edge lengths.
std::string mesh_summary_json(const TetMesh& mesh);

}  // namespace glauert
