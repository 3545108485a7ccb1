#include "glauert/surface.hpp"

#include <algorithm>

namespace glauert {

namespace {

TriQuadrature make_deg1() {
  TriQuadrature q;
  q.points.push_back(Vec3(1.0 / 3, 1.0 / 3, 1.0 / 3));
  q.weights.push_back(1.0);
  return q;
}

void add_perm3(TriQuadrature& q, double a, double b, double w) {
  // permutations of (a, b, 1-a-b); emits 3 or 6 points
  const double c = 1.0 - a - b;
  const double coords[6][3] = {{a, b, c}, {b, c, a}, {c, a, b},
                               {a, c, b}, {c, b, a}, {b, a, c}};
  const int n = (a == b || b == c || a == c) ? 3 : 6;
  for (int i = 0; i < n; ++i) {
    q.points.push_back(Vec3(coords[i][0], coords[i][1], coords[i][2]));
    q.weights.push_back(w);
  }
}

TriQuadrature make_deg2() {
  TriQuadrature q;
  add_perm3(q, 1.0 / 6, 1.0 / 6, 1.0 / 3);
  return q;
}

TriQuadrature make_deg4() {
  TriQuadrature q;
  add_perm3(q, 0.445948490915965, 0.445948490915965, 0.223381589678011);
  add_perm3(q, 0.091576213509771, 0.091576213509771, 0.109951743655322);
  return q;
}

TriQuadrature make_deg6() {
  TriQuadrature q;
  add_perm3(q, 0.063089014491502, 0.063089014491502, 0.050844906370207);
  add_perm3(q, 0.249286745170910, 0.249286745170910, 0.116786275726379);
  add_perm3(q, 0.310352451033785, 0.636502499121399, 0.082851075618374);
  return q;
}

}  // namespace

const TriQuadrature& TriQuadrature::by_degree(int degree) {
  static const TriQuadrature d1 = make_deg1();
  static const TriQuadrature d2 = make_deg2();
  static const TriQuadrature d4 = make_deg4();
  static const TriQuadrature d6 = make_deg6();
  if (degree <= 1) return d1;
  if (degree <= 2) return d2;
  if (degree <= 4) return d4;
  return d6;
}

SurfaceSpaces SurfaceSpaces::build(const TetMesh& mesh) {
  SurfaceSpaces s;
  s.mesh = &mesh;
  std::vector<int> verts;
  for (int f = 0; f < static_cast<int>(mesh.boundary_faces.size()); ++f) {
    if (mesh.boundary_faces[f].tag != SurfaceTag::GammaInfinity) continue;
    s.faces.push_back(f);
    for (int v : mesh.boundary_faces[f].v) verts.push_back(v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  s.vertex_of_p1 = verts;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i)
    s.p1_of_vertex[verts[i]] = i;
  s.face_p1.resize(s.faces.size());
  for (size_t f = 0; f < s.faces.size(); ++f)
    for (int k = 0; k < 3; ++k)
      s.face_p1[f][k] = s.p1_of_vertex.at(mesh.boundary_faces[s.faces[f]].v[k]);
  return s;
}

void SurfaceSpaces::check_trace_compatibility(const P1VolumeSpace& volume) const {
  if (volume.gamma_count != p1_count())
    throw DimensionMismatchError("surface P1 dof count does not match the "
                                 "Gamma_inf block of the volume space");
  for (int g = 0; g < p1_count(); ++g)
    if (volume.vertex_of_dof[volume.interior_count + g] != vertex_of_p1[g])
      throw DimensionMismatchError(
          "surface P1 numbering does not match the volume Gamma_inf block");
}

RealSparseMatrix p0_p1_mass(const SurfaceSpaces& spaces) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(spaces.faces.size() * 3);
  for (int f = 0; f < spaces.p0_count(); ++f) {
    const double a3 = spaces.face(f).area / 3.0;
    for (int k = 0; k < 3; ++k) trip.emplace_back(f, spaces.face_p1[f][k], a3);
  }
  RealSparseMatrix m(spaces.p0_count(), spaces.p1_count());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

RealSparseMatrix p1_mass(const SurfaceSpaces& spaces) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(spaces.faces.size() * 9);
  for (int f = 0; f < spaces.p0_count(); ++f) {
    const double area = spaces.face(f).area;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trip.emplace_back(spaces.face_p1[f][i], spaces.face_p1[f][j],
                          area * (i == j ? 1.0 / 6 : 1.0 / 12));
  }
  RealSparseMatrix m(spaces.p1_count(), spaces.p1_count());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

FaceP1Derivatives face_p1_derivatives(const SurfaceSpaces& spaces, int face_idx) {
  const BoundaryFace& face = spaces.face(face_idx);
  const auto& verts = spaces.mesh->vertices;
  const Vec3& p0 = verts[face.v[0]];
  const Vec3& p1 = verts[face.v[1]];
  const Vec3& p2 = verts[face.v[2]];
  if (face.area <= 0.0) throw DegenerateFaceError("zero-area surface triangle");
  FaceP1Derivatives d;
  // grad of hat_i: (n x opposite_edge) / (2A) with edges oriented so that
  // grad_i points toward vertex i.
  d.grad[0] = face.normal.cross(p2 - p1) / (2.0 * face.area);
  d.grad[1] = face.normal.cross(p0 - p2) / (2.0 * face.area);
  d.grad[2] = face.normal.cross(p1 - p0) / (2.0 * face.area);
  for (int i = 0; i < 3; ++i) d.curl[i] = face.normal.cross(d.grad[i]);
  return d;
}

}  // namespace glauert
