#include "glauert/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace glauert {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double signed_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return (b - a).cross(c - a).dot(d - a) / 6.0;
}

using FaceKey = std::array<int, 3>;

FaceKey face_key(int a, int b, int c) {
  FaceKey k{a, b, c};
  std::sort(k.begin(), k.end());
  return k;
}

struct FaceKeyHash {
  size_t operator()(const FaceKey& k) const {
    size_t h = 1469598103934665603ull;
    for (int v : k) {
      h ^= static_cast<size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Outward-oriented local faces of a positively oriented tet.
constexpr int kTetFaces[4][3] = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};

}  // namespace

PGMap PGMap::from_mach(const Vec3& mach) {
  const double m = mach.norm();
  if (m >= 1.0)
    throw SupersonicError("Prandtl-Glauert map requires |M_inf| < 1, got " +
                          std::to_string(m));
  PGMap map;
  map.mach_infinity = mach;
  const double m2 = m * m;
  map.gamma_infinity = 1.0 / std::sqrt(1.0 - m2);
  // C_inf = (gamma - 1)/M^2 has a removable singularity at M = 0.
  if (m < 1e-4)
    map.c_infinity_coeff = 0.5 + 3.0 * m2 / 8.0 + 15.0 * m2 * m2 / 48.0;
  else
    map.c_infinity_coeff = (map.gamma_infinity - 1.0) / m2;
  map.dilation_axis = (m > 0.0) ? Vec3(mach / m) : Vec3::UnitZ();
  map.matrix_N =
      Mat3::Identity() + map.c_infinity_coeff * (mach * mach.transpose());
  return map;
}

Vec3 PGMap::forward(const Vec3& x) const {
  const double axial = dilation_axis.dot(x);
  return gamma_infinity * axial * dilation_axis + (x - axial * dilation_axis);
}

Vec3 PGMap::inverse(const Vec3& x) const {
  const double axial = dilation_axis.dot(x);
  return axial / gamma_infinity * dilation_axis + (x - axial * dilation_axis);
}

double TetMesh::tet_volume(int t) const {
  const auto& tet = tets[t];
  return signed_volume(vertices[tet[0]], vertices[tet[1]], vertices[tet[2]],
                       vertices[tet[3]]);
}

double TetMesh::total_volume() const {
  double v = 0.0;
  for (int t = 0; t < static_cast<int>(tets.size()); ++t) v += tet_volume(t);
  return v;
}

Vec3 TetMesh::centroid() const {
  Vec3 c = Vec3::Zero();
  double vol = 0.0;
  for (int t = 0; t < static_cast<int>(tets.size()); ++t) {
    const auto& tet = tets[t];
    const Vec3 ct = 0.25 * (vertices[tet[0]] + vertices[tet[1]] +
                            vertices[tet[2]] + vertices[tet[3]]);
    const double v = tet_volume(t);
    c += v * ct;
    vol += v;
  }
  return vol > 0.0 ? Vec3(c / vol) : c;
}

std::vector<int> TetMesh::faces_with_tag(SurfaceTag tag) const {
  std::vector<int> out;
  for (int f = 0; f < static_cast<int>(boundary_faces.size()); ++f)
    if (boundary_faces[f].tag == tag) out.push_back(f);
  return out;
}

double TetMesh::surface_area(SurfaceTag tag) const {
  double a = 0.0;
  for (const auto& f : boundary_faces)
    if (f.tag == tag) a += f.area;
  return a;
}

std::vector<BoundaryFace> extract_boundary(
    const std::vector<Vec3>& vertices, const std::vector<std::array<int, 4>>& tets,
    const std::vector<TaggedTri>& tagged) {
  struct Incidence {
    int count = 0;
    int owner = -1;
    int local = -1;
  };
  std::unordered_map<FaceKey, Incidence, FaceKeyHash> faces;
  faces.reserve(4 * tets.size());
  for (int t = 0; t < static_cast<int>(tets.size()); ++t) {
    for (int lf = 0; lf < 4; ++lf) {
      const FaceKey key = face_key(tets[t][kTetFaces[lf][0]],
                                   tets[t][kTetFaces[lf][1]],
                                   tets[t][kTetFaces[lf][2]]);
      auto& inc = faces[key];
      ++inc.count;
      if (inc.count == 1) {
        inc.owner = t;
        inc.local = lf;
      }
      if (inc.count > 2)
        throw TopologyError("face shared by more than two tetrahedra");
    }
  }

  std::unordered_map<FaceKey, SurfaceTag, FaceKeyHash> tag_of;
  for (const auto& tri : tagged) {
    const FaceKey key = face_key(tri.v[0], tri.v[1], tri.v[2]);
    auto it = faces.find(key);
    if (it == faces.end() || it->second.count != 1)
      throw TopologyError("tagged triangle is not a boundary face of the tet mesh");
    tag_of[key] = tri.tag;
  }

  std::vector<BoundaryFace> out;
  for (int t = 0; t < static_cast<int>(tets.size()); ++t) {
    for (int lf = 0; lf < 4; ++lf) {
      const std::array<int, 3> tri{tets[t][kTetFaces[lf][0]],
                                   tets[t][kTetFaces[lf][1]],
                                   tets[t][kTetFaces[lf][2]]};
      const FaceKey key = face_key(tri[0], tri[1], tri[2]);
      const auto& inc = faces.at(key);
      if (inc.count != 1 || inc.owner != t || inc.local != lf) continue;
      BoundaryFace face;
      face.v = tri;
      face.owner_tet = t;
      const Vec3 e1 = vertices[tri[1]] - vertices[tri[0]];
      const Vec3 e2 = vertices[tri[2]] - vertices[tri[0]];
      const Vec3 nn = e1.cross(e2);
      face.area = 0.5 * nn.norm();
      if (face.area <= 0.0) throw DegenerateFaceError("zero-area boundary face");
      face.normal = nn.normalized();
      auto tag_it = tag_of.find(key);
      if (!tagged.empty()) {
        if (tag_it == tag_of.end())
          throw TagError("boundary face lacks a recognized surface tag");
        face.tag = tag_it->second;
      }
      out.push_back(face);
    }
  }
  return out;
}

void finalize_mesh(TetMesh& mesh, const std::vector<TaggedTri>& tagged) {
  const int nv = static_cast<int>(mesh.vertices.size());
  for (auto& tet : mesh.tets) {
    for (int v : tet)
      if (v < 0 || v >= nv)
        throw TopologyError("tetrahedron references nonexistent vertex " +
                            std::to_string(v));
  }
  for (int t = 0; t < static_cast<int>(mesh.tets.size()); ++t) {
    const double v = mesh.tet_volume(t);
    if (!(v > 0.0))
      throw TopologyError("tetrahedron " + std::to_string(t) +
                          " has non-positive volume " + std::to_string(v));
  }

  mesh.boundary_faces = extract_boundary(mesh.vertices, mesh.tets, tagged);

  // Non-manifold guard; closedness of the tagged surfaces is a property of
  // the shell geometries and is checked by their tests.
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& f : mesh.boundary_faces) {
    for (int e = 0; e < 3; ++e) {
      int a = f.v[e], b = f.v[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_count[{a, b}];
    }
  }
  for (const auto& [key, count] : edge_count)
    if (count > 2) throw TopologyError("non-manifold boundary edge");

  double hmin = std::numeric_limits<double>::max(), hmax = 0.0, hsum = 0.0;
  std::map<std::pair<int, int>, bool> seen;
  long nedges = 0;
  for (const auto& tet : mesh.tets) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        int a = tet[i], b = tet[j];
        if (a > b) std::swap(a, b);
        if (seen.emplace(std::make_pair(a, b), true).second) {
          const double len = (mesh.vertices[a] - mesh.vertices[b]).norm();
          hmin = std::min(hmin, len);
          hmax = std::max(hmax, len);
          hsum += len;
          ++nedges;
        }
      }
  }
  mesh.edges = {nedges ? hmin : 0.0, nedges ? hsum / nedges : 0.0, hmax};
}

TetMesh apply_prandtl_glauert(const TetMesh& mesh, const PGMap& map) {
  TetMesh out = mesh;
  for (auto& v : out.vertices) v = map.forward(v);
  for (auto& f : out.boundary_faces) {
    const Vec3 e1 = out.vertices[f.v[1]] - out.vertices[f.v[0]];
    const Vec3 e2 = out.vertices[f.v[2]] - out.vertices[f.v[0]];
    const Vec3 nn = e1.cross(e2);
    f.area = 0.5 * nn.norm();
    f.normal = nn.normalized();
  }
  std::vector<TaggedTri> dummy;  // stats only; faces already oriented
  double hmin = std::numeric_limits<double>::max(), hmax = 0.0, hsum = 0.0;
  std::map<std::pair<int, int>, bool> seen;
  long nedges = 0;
  for (const auto& tet : out.tets)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        int a = tet[i], b = tet[j];
        if (a > b) std::swap(a, b);
        if (seen.emplace(std::make_pair(a, b), true).second) {
          const double len = (out.vertices[a] - out.vertices[b]).norm();
          hmin = std::min(hmin, len);
          hmax = std::max(hmax, len);
          hsum += len;
          ++nedges;
        }
      }
  out.edges = {nedges ? hmin : 0.0, nedges ? hsum / nedges : 0.0, hmax};
  return out;
}

// ---------------------------------------------------------------------------
// Gmsh ASCII reader (v2.2 and v4.1)

namespace {

struct GmshData {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> tets;
  std::vector<TaggedTri> tagged;
};

std::optional<SurfaceTag> tag_from_name(const std::string& name,
                                        const TagNames& names) {
  const std::string n = lower(name);
  if (n == lower(names.object)) return SurfaceTag::GammaObject;
  if (n == lower(names.farfield)) return SurfaceTag::GammaInfinity;
  return std::nullopt;
}

void parse_v22(std::istream& in, const TagNames& names, GmshData& data) {
  std::unordered_map<long, int> node_index;
  std::unordered_map<int, std::optional<SurfaceTag>> physical_tag;
  bool have_names = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("$PhysicalNames", 0) == 0) {
      long n;
      in >> n;
      have_names = true;
      for (long i = 0; i < n; ++i) {
        int dim, id;
        std::string name;
        in >> dim >> id;
        std::getline(in, name);
        const auto q1 = name.find('"'), q2 = name.rfind('"');
        if (q1 != std::string::npos && q2 > q1)
          name = name.substr(q1 + 1, q2 - q1 - 1);
        physical_tag[id] = tag_from_name(name, names);
      }
    } else if (line.rfind("$Nodes", 0) == 0) {
      long n;
      in >> n;
      if (!in) throw ParseError("malformed $Nodes section");
      for (long i = 0; i < n; ++i) {
        long id;
        double x, y, z;
        in >> id >> x >> y >> z;
        if (!in) throw ParseError("malformed node line");
        node_index[id] = static_cast<int>(data.vertices.size());
        data.vertices.emplace_back(x, y, z);
      }
    } else if (line.rfind("$Elements", 0) == 0) {
      long n;
      in >> n;
      if (!in) throw ParseError("malformed $Elements section");
      for (long i = 0; i < n; ++i) {
        long id;
        int type, ntags;
        in >> id >> type >> ntags;
        if (!in) throw ParseError("malformed element line");
        std::vector<int> tags(ntags);
        for (auto& t : tags) in >> t;
        const int nodes_per = (type == 2) ? 3 : (type == 4) ? 4 : -1;
        if (nodes_per < 0) {  // skip unsupported element types
          std::getline(in, line);
          continue;
        }
        std::array<int, 4> nd{-1, -1, -1, -1};
        for (int k = 0; k < nodes_per; ++k) {
          long raw;
          in >> raw;
          auto it = node_index.find(raw);
          if (it == node_index.end())
            throw TopologyError("element references nonexistent node " +
                                std::to_string(raw));
          nd[k] = it->second;
        }
        if (type == 4) {
          data.tets.push_back({nd[0], nd[1], nd[2], nd[3]});
        } else {
          const int phys = tags.empty() ? 0 : tags[0];
          std::optional<SurfaceTag> tag;
          if (have_names) {
            auto it = physical_tag.find(phys);
            if (it != physical_tag.end()) tag = it->second;
          } else {
            // No names: physical ids 1 and 2 are object and farfield.
            if (phys == 1) tag = SurfaceTag::GammaObject;
            if (phys == 2) tag = SurfaceTag::GammaInfinity;
          }
          if (tag) data.tagged.push_back({{nd[0], nd[1], nd[2]}, *tag});
        }
      }
    }
  }
}

void parse_v41(std::istream& in, const TagNames& names, GmshData& data) {
  std::unordered_map<long, int> node_index;
  std::unordered_map<int, std::optional<SurfaceTag>> physical_tag;
  std::unordered_map<int, int> surface_entity_physical;  // entityTag -> phys id
  bool have_names = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("$PhysicalNames", 0) == 0) {
      long n;
      in >> n;
      have_names = true;
      for (long i = 0; i < n; ++i) {
        int dim, id;
        std::string name;
        in >> dim >> id;
        std::getline(in, name);
        const auto q1 = name.find('"'), q2 = name.rfind('"');
        if (q1 != std::string::npos && q2 > q1)
          name = name.substr(q1 + 1, q2 - q1 - 1);
        physical_tag[id] = tag_from_name(name, names);
      }
    } else if (line.rfind("$Entities", 0) == 0) {
      long npt, ncv, nsf, nvol;
      in >> npt >> ncv >> nsf >> nvol;
      if (!in) throw ParseError("malformed $Entities header");
      for (long i = 0; i < npt; ++i) {
        int tag, nphys;
        double x, y, z;
        in >> tag >> x >> y >> z >> nphys;
        for (int k = 0; k < nphys; ++k) {
          int p;
          in >> p;
        }
      }
      auto skip_bounded = [&](bool record_surface) {
        int tag, nphys, nbound;
        double b[6];
        in >> tag;
        for (double& v : b) in >> v;
        in >> nphys;
        int first_phys = 0;
        for (int k = 0; k < nphys; ++k) {
          int p;
          in >> p;
          if (k == 0) first_phys = p;
        }
        in >> nbound;
        for (int k = 0; k < nbound; ++k) {
          int p;
          in >> p;
        }
        if (record_surface && nphys > 0) surface_entity_physical[tag] = first_phys;
      };
      for (long i = 0; i < ncv; ++i) skip_bounded(false);
      for (long i = 0; i < nsf; ++i) skip_bounded(true);
      for (long i = 0; i < nvol; ++i) skip_bounded(false);
    } else if (line.rfind("$Nodes", 0) == 0) {
      long nblocks, nnodes, mintag, maxtag;
      in >> nblocks >> nnodes >> mintag >> maxtag;
      if (!in) throw ParseError("malformed $Nodes header");
      for (long b = 0; b < nblocks; ++b) {
        int dim, etag, parametric;
        long count;
        in >> dim >> etag >> parametric >> count;
        std::vector<long> ids(count);
        for (auto& id : ids) in >> id;
        for (long k = 0; k < count; ++k) {
          double x, y, z;
          in >> x >> y >> z;
          if (!in) throw ParseError("malformed node coordinates");
          node_index[ids[k]] = static_cast<int>(data.vertices.size());
          data.vertices.emplace_back(x, y, z);
        }
      }
    } else if (line.rfind("$Elements", 0) == 0) {
      long nblocks, nelems, mintag, maxtag;
      in >> nblocks >> nelems >> mintag >> maxtag;
      if (!in) throw ParseError("malformed $Elements header");
      for (long b = 0; b < nblocks; ++b) {
        int dim, etag, type;
        long count;
        in >> dim >> etag >> type >> count;
        const int nodes_per = (type == 2) ? 3 : (type == 4) ? 4 : 0;
        for (long k = 0; k < count; ++k) {
          long id;
          in >> id;
          if (nodes_per == 0) {
            std::getline(in, line);
            continue;
          }
          std::array<int, 4> nd{-1, -1, -1, -1};
          for (int m = 0; m < nodes_per; ++m) {
            long raw;
            in >> raw;
            auto it = node_index.find(raw);
            if (it == node_index.end())
              throw TopologyError("element references nonexistent node " +
                                  std::to_string(raw));
            nd[m] = it->second;
          }
          if (type == 4) {
            data.tets.push_back({nd[0], nd[1], nd[2], nd[3]});
          } else {
            int phys = etag;
            auto se = surface_entity_physical.find(etag);
            if (se != surface_entity_physical.end()) phys = se->second;
            std::optional<SurfaceTag> tag;
            if (have_names) {
              auto it = physical_tag.find(phys);
              if (it != physical_tag.end()) tag = it->second;
            } else {
              if (phys == 1) tag = SurfaceTag::GammaObject;
              if (phys == 2) tag = SurfaceTag::GammaInfinity;
            }
            if (tag) data.tagged.push_back({{nd[0], nd[1], nd[2]}, *tag});
          }
        }
      }
    }
  }
}

}  // namespace

TetMesh load_gmsh(const std::string& path, const TagNames& names) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("$MeshFormat", 0) != 0)
    throw ParseError("not a Gmsh ASCII file (missing $MeshFormat): " + path);
  double version;
  int filetype, datasize;
  in >> version >> filetype >> datasize;
  if (!in) throw ParseError("malformed $MeshFormat header");
  if (filetype != 0) throw ParseError("binary Gmsh files are not supported");
  std::getline(in, line);

  GmshData data;
  if (version >= 4.0)
    parse_v41(in, names, data);
  else if (version >= 2.0)
    parse_v22(in, names, data);
  else
    throw ParseError("unsupported Gmsh format version");

  if (data.tets.empty()) throw ParseError("mesh contains no tetrahedra");

  TetMesh mesh;
  mesh.vertices = std::move(data.vertices);
  mesh.tets = std::move(data.tets);
  // Gmsh does not guarantee tet orientation; fix it before validation.
  for (auto& tet : mesh.tets) {
    for (int v : tet)
      if (v < 0 || v >= static_cast<int>(mesh.vertices.size()))
        throw TopologyError("tetrahedron references nonexistent vertex");
    if (signed_volume(mesh.vertices[tet[0]], mesh.vertices[tet[1]],
                      mesh.vertices[tet[2]], mesh.vertices[tet[3]]) < 0.0)
      std::swap(tet[2], tet[3]);
  }
  finalize_mesh(mesh, data.tagged);
  return mesh;
}

// ---------------------------------------------------------------------------
// Built-in shell generator

void icosphere(int subdivisions, std::vector<Vec3>& vertices,
               std::vector<std::array<int, 3>>& faces) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  vertices = {{-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0},
              {0, -1, t}, {0, 1, t},   {0, -1, -t}, {0, 1, -t},
              {t, 0, -1}, {t, 0, 1},   {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : vertices) v.normalize();
  faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
           {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
           {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
           {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = static_cast<int>(vertices.size());
      vertices.push_back(((vertices[a] + vertices[b]) * 0.5).normalized());
      midpoint[key] = idx;
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(4 * faces.size());
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
}

TetMesh generate_ball_shell(const BallShellParams& params) {
  if (params.layers < 1) throw ConfigError("ball shell needs at least 1 layer");
  std::vector<Vec3> unit_verts;
  std::vector<std::array<int, 3>> unit_faces;
  icosphere(params.subdivisions, unit_verts, unit_faces);
  const int nv = static_cast<int>(unit_verts.size());
  const int L = params.layers;

  TetMesh mesh;
  mesh.vertices.reserve(static_cast<size_t>(nv) * (L + 1) +
                        unit_faces.size() * L);
  for (int l = 0; l <= L; ++l) {
    const double s = static_cast<double>(l) / L;
    for (const Vec3& u : unit_verts) {
      const Vec3 inner(params.inner_semiaxes.x() * u.x(),
                       params.inner_semiaxes.y() * u.y(),
                       params.inner_semiaxes.z() * u.z());
      const Vec3 outer = params.outer_radius * u;
      mesh.vertices.push_back(params.center + (1.0 - s) * inner + s * outer);
    }
  }
  auto vid = [nv](int layer, int u) { return layer * nv + u; };

  // Each radial prism is split around its centroid: 2 cap tets plus 6 tets
  // from the min-id-diagonal split of the three quads. The min-id rule makes
  // the quad split agree between neighboring prisms.
  for (int l = 0; l < L; ++l) {
    for (const auto& f : unit_faces) {
      const int a0 = vid(l, f[0]), a1 = vid(l, f[1]), a2 = vid(l, f[2]);
      const int b0 = vid(l + 1, f[0]), b1 = vid(l + 1, f[1]), b2 = vid(l + 1, f[2]);
      const int c = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back((mesh.vertices[a0] + mesh.vertices[a1] +
                               mesh.vertices[a2] + mesh.vertices[b0] +
                               mesh.vertices[b1] + mesh.vertices[b2]) /
                              6.0);
      auto add_tet = [&](int p, int q, int r) {
        std::array<int, 4> tet{c, p, q, r};
        if (signed_volume(mesh.vertices[tet[0]], mesh.vertices[tet[1]],
                          mesh.vertices[tet[2]], mesh.vertices[tet[3]]) < 0.0)
          std::swap(tet[2], tet[3]);
        mesh.tets.push_back(tet);
      };
      add_tet(a0, a1, a2);
      add_tet(b0, b1, b2);
      const int quads[3][4] = {{a0, a1, b1, b0}, {a1, a2, b2, b1}, {a2, a0, b0, b2}};
      for (const auto& q : quads) {
        const int mn = std::min({q[0], q[1], q[2], q[3]});
        if (mn == q[0] || mn == q[2]) {
          add_tet(q[0], q[1], q[2]);
          add_tet(q[0], q[2], q[3]);
        } else {
          add_tet(q[0], q[1], q[3]);
          add_tet(q[1], q[2], q[3]);
        }
      }
    }
  }

  std::vector<TaggedTri> tagged;
  tagged.reserve(2 * unit_faces.size());
  for (const auto& f : unit_faces) {
    tagged.push_back({{vid(0, f[0]), vid(0, f[1]), vid(0, f[2])},
                      SurfaceTag::GammaObject});
    tagged.push_back({{vid(L, f[0]), vid(L, f[1]), vid(L, f[2])},
                      SurfaceTag::GammaInfinity});
  }
  finalize_mesh(mesh, tagged);
  return mesh;
}

std::string mesh_summary_json(const TetMesh& mesh) {
  nlohmann::json j;
  j["vertices"] = mesh.vertices.size();
  j["tetrahedra"] = mesh.tets.size();
  j["faces_object"] = mesh.faces_with_tag(SurfaceTag::GammaObject).size();
  j["faces_farfield"] = mesh.faces_with_tag(SurfaceTag::GammaInfinity).size();
  j["smallest_edge"] = mesh.edges.h_min;
  j["mean_edge"] = mesh.edges.h_mean;
  j["largest_edge"] = mesh.edges.h_max;
  j["volume"] = mesh.total_volume();
  return j.dump(2);
}

}  // namespace glauert
