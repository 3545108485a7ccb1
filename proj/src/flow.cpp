#include "glauert/flow.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace glauert {

AmbientState AmbientState::make(double rho, double c, const Vec3& mach,
                                double omega) {
  if (mach.norm() >= 1.0)
    throw SupersonicError("ambient Mach number must be subsonic");
  AmbientState a;
  a.rho_infinity = rho;
  a.c_infinity = c;
  a.mach_infinity = mach;
  a.omega = omega;
  a.k_infinity = omega / c;
  a.k_hat_infinity = PGMap::from_mach(mach).gamma_infinity * a.k_infinity;
  return a;
}

FlowField FlowField::uniform(const AmbientState& ambient) {
  FlowField f;
  f.kind_ = Kind::Uniform;
  f.ambient_ = ambient;
  return f;
}

FlowField FlowField::sphere_dipole(double radius, const Vec3& center,
                                   const AmbientState& ambient,
                                   const PGMap& map) {
  if (radius <= 0.0) throw DomainError("dipole body radius must be positive");
  FlowField f;
  f.kind_ = Kind::SphereDipole;
  f.ambient_ = ambient;
  f.map_ = map;
  f.body_radius_ = radius;
  f.body_center_ = center;
  return f;
}

FlowField sphere_dipole_flow(double radius, const Vec3& center,
                             const AmbientState& ambient, const PGMap& map) {
  return FlowField::sphere_dipole(radius, center, ambient, map);
}

FlowField FlowField::nodal(std::shared_ptr<const TetMesh> mesh,
                           std::vector<FlowSample> vertex_samples,
                           const AmbientState& ambient) {
  if (vertex_samples.size() != mesh->vertices.size())
    throw SizeMismatchError("nodal flow row count " +
                            std::to_string(vertex_samples.size()) +
                            " does not match vertex count " +
                            std::to_string(mesh->vertices.size()));
  FlowField f;
  f.kind_ = Kind::NodalData;
  f.ambient_ = ambient;
  f.mesh_ = std::move(mesh);
  f.vertex_samples_ = std::move(vertex_samples);

  // Continuity of (rho, k, M) through Gamma_inf, reported not enforced.
  double dev = 0.0;
  for (const auto& face : f.mesh_->boundary_faces) {
    if (face.tag != SurfaceTag::GammaInfinity) continue;
    for (int v : face.v) {
      const FlowSample& s = f.vertex_samples_[v];
      dev = std::max(dev, std::abs(s.rho - ambient.rho_infinity) /
                              std::max(1.0, std::abs(ambient.rho_infinity)));
      dev = std::max(dev, std::abs(s.k - ambient.k_infinity) /
                              std::max(1.0, std::abs(ambient.k_infinity)));
      dev = std::max(dev, (s.mach - ambient.mach_infinity).norm());
    }
  }
  f.continuity_deviation_ = dev;
  return f;
}

FlowSample FlowField::sample(const Vec3& x, int tet_hint) const {
  switch (kind_) {
    case Kind::Uniform:
      return {ambient_.rho_infinity, ambient_.c_infinity, ambient_.k_infinity,
              ambient_.mach_infinity};
    case Kind::SphereDipole:
      return sample_dipole(x);
    case Kind::NodalData:
      return sample_nodal(x, tet_hint);
  }
  throw DomainError("unreachable flow kind");
}

FlowSample FlowField::sample_dipole(const Vec3& x) const {
  const Vec3 phys = map_.inverse(x);
  const Vec3 s = phys - body_center_;
  const double dist = s.norm();
  // Flat-facet meshes of the ball sample slightly inside the nominal
  // radius; the dipole field continues smoothly there, so only clearly
  // interior points are rejected.
  if (dist < 0.5 * body_radius_)
    throw DomainError("flow sample requested inside the dipole body");
  const Vec3 shat = s / dist;
  const double scale = std::pow(body_radius_ / dist, 3) / 2.0;
  const Vec3& minf = ambient_.mach_infinity;
  const Vec3 mach = minf + scale * (minf - 3.0 * minf.dot(shat) * shat);
  return {ambient_.rho_infinity, ambient_.c_infinity, ambient_.k_infinity, mach};
}

FlowSample FlowField::sample_nodal(const Vec3& x, int tet_hint) const {
  const TetMesh& m = *mesh_;
  auto barycentric = [&](int t, Eigen::Vector4d& bc) {
    const auto& tet = m.tets[t];
    Eigen::Matrix3d A;
    A.col(0) = m.vertices[tet[1]] - m.vertices[tet[0]];
    A.col(1) = m.vertices[tet[2]] - m.vertices[tet[0]];
    A.col(2) = m.vertices[tet[3]] - m.vertices[tet[0]];
    const Vec3 rhs = x - m.vertices[tet[0]];
    const Vec3 lam = A.partialPivLu().solve(rhs);
    bc << 1.0 - lam.sum(), lam[0], lam[1], lam[2];
    return bc.minCoeff() > -1e-10;
  };
  Eigen::Vector4d bc;
  int tet = -1;
  if (tet_hint >= 0 && tet_hint < static_cast<int>(m.tets.size()) &&
      barycentric(tet_hint, bc)) {
    tet = tet_hint;
  } else {
    double best = -std::numeric_limits<double>::max();
    Eigen::Vector4d best_bc;
    for (int t = 0; t < static_cast<int>(m.tets.size()); ++t) {
      Eigen::Vector4d cand;
      barycentric(t, cand);
      if (cand.minCoeff() > best) {
        best = cand.minCoeff();
        best_bc = cand;
        tet = t;
      }
      if (best > -1e-10) break;
    }
    if (best < -1e-6)
      throw DomainError("nodal flow sample outside the mesh");
    bc = best_bc;
  }
  const auto& tv = m.tets[tet];
  FlowSample out{0.0, 0.0, 0.0, Vec3::Zero()};
  for (int i = 0; i < 4; ++i) {
    const FlowSample& s = vertex_samples_[tv[i]];
    out.rho += bc[i] * s.rho;
    out.c += bc[i] * s.c;
    out.k += bc[i] * s.k;
    out.mach += bc[i] * s.mach;
  }
  return out;
}

FlowField nodal_flow_from_file(const std::string& path,
                               std::shared_ptr<const TetMesh> mesh,
                               const AmbientState& ambient) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open nodal flow file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty nodal flow file");
  std::vector<FlowSample> rows;
  rows.reserve(mesh->vertices.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    double vals[8];
    for (int i = 0; i < 8; ++i) {
      if (!std::getline(ls, tok, ','))
        throw ParseError("nodal flow row has fewer than 8 columns: " + line);
      vals[i] = std::stod(tok);
    }
    FlowSample s;
    s.rho = vals[3];
    s.c = vals[4];
    s.k = (s.c != 0.0) ? ambient.omega / s.c : 0.0;
    s.mach = Vec3(vals[5], vals[6], vals[7]);
    rows.push_back(s);
  }
  FlowField f = FlowField::nodal(std::move(mesh), std::move(rows), ambient);
  if (f.continuity_deviation() > 1e-8)
    std::fprintf(stderr,
                 "warning: nodal flow deviates from ambient on the coupling "
                 "surface by %.3e\n",
                 f.continuity_deviation());
  return f;
}

PGCoefficients coefficients_from_sample(const FlowSample& s,
                                        const AmbientState& ambient,
                                        const PGMap& map) {
  const double m0 = s.mach.norm();
  if (m0 >= 1.0 - kSubsonicMargin)
    throw SupersonicError("sampled Mach number " + std::to_string(m0) +
                          " violates the subsonic assumption");
  const double gamma = map.gamma_infinity;
  const double minf2 = ambient.mach_infinity.squaredNorm();
  PGCoefficients c;
  c.r = s.rho / ambient.rho_infinity;
  c.k = s.k;
  if (s.k != 0.0) {
    c.q = gamma * gamma * ambient.k_infinity / s.k;
  } else if (ambient.k_infinity == 0.0) {
    c.q = gamma * gamma;  // k0/k_inf -> 1 limit; makes the k = 0 case exact
  } else {
    throw DomainError("local wavenumber vanishes at nonzero frequency");
  }
  c.P = s.mach.dot(ambient.mach_infinity);
  const double one_qp = 1.0 + c.q * c.P;
  c.beta = one_qp * one_qp - c.q * c.q * minf2;
  c.V = one_qp * (map.matrix_N * s.mach) - c.q * gamma * ambient.mach_infinity;
  const Mat3 O = Mat3::Identity() - s.mach * s.mach.transpose();
  c.Xi = map.matrix_N * O * map.matrix_N;
  return c;
}

PGCoefficients coefficients_at(const Vec3& x, const FlowField& flow,
                               const AmbientState& ambient, const PGMap& map,
                               int tet_hint) {
  return coefficients_from_sample(flow.sample(x, tet_hint), ambient, map);
}

}  // namespace glauert
