#include "glauert/incident.hpp"

#include <cmath>

namespace glauert {

IncidentField IncidentField::monopole(const Vec3& source, Complex amplitude,
                                      double k_hat) {
  IncidentField f;
  f.kind = Kind::Monopole;
  f.position = source;
  f.amplitude = amplitude;
  f.k_hat = k_hat;
  return f;
}

IncidentField IncidentField::plane_wave(const Vec3& direction, Complex amplitude,
                                        double k_hat) {
  IncidentField f;
  f.kind = Kind::PlaneWave;
  f.direction = direction.normalized();
  f.amplitude = amplitude;
  f.k_hat = k_hat;
  return f;
}

Complex IncidentField::value(const Vec3& x) const {
  if (kind == Kind::PlaneWave)
    return amplitude * std::exp(I_UNIT * k_hat * direction.dot(x));
  const double rho = (x - position).norm();
  if (rho < 1e-14)
    throw SingularPointError("incident field evaluated at the monopole source");
  return amplitude * std::exp(I_UNIT * k_hat * rho) / (4.0 * M_PI * rho);
}

CVec3 IncidentField::gradient(const Vec3& x) const {
  if (kind == Kind::PlaneWave)
    return (I_UNIT * k_hat * value(x)) * direction.cast<Complex>();
  const Vec3 z = x - position;
  const double rho = z.norm();
  if (rho < 1e-14)
    throw SingularPointError("incident gradient evaluated at the monopole source");
  const Complex e = amplitude * std::exp(I_UNIT * k_hat * rho) / (4.0 * M_PI * rho);
  return ((I_UNIT * k_hat - 1.0 / rho) * e / rho) * z.cast<Complex>();
}

IncidentTraces incident_traces(const IncidentField& field,
                               const SurfaceSpaces& spaces,
                               int quadrature_degree) {
  const TriQuadrature& quad = TriQuadrature::by_degree(quadrature_degree);
  const int q = spaces.p0_count();
  const int r = spaces.p1_count();
  IncidentTraces tr;
  tr.gamma0_vertices.resize(r);
  for (int i = 0; i < r; ++i)
    tr.gamma0_vertices[i] = field.value(spaces.mesh->vertices[spaces.vertex_of_p1[i]]);
  tr.gamma0_face_mean = DenseVector::Zero(q);
  tr.gamma1_face_mean = DenseVector::Zero(q);
  tr.rhs_gamma1_p1 = DenseVector::Zero(r);
  tr.rhs_gamma0_p0 = DenseVector::Zero(q);
  tr.rhs_gamma1_p0 = DenseVector::Zero(q);
  for (int f = 0; f < q; ++f) {
    const BoundaryFace& face = spaces.face(f);
    const auto& v = spaces.mesh->vertices;
    for (size_t m = 0; m < quad.points.size(); ++m) {
      const Vec3& bc = quad.points[m];
      const Vec3 x = bc[0] * v[face.v[0]] + bc[1] * v[face.v[1]] +
                     bc[2] * v[face.v[2]];
      const double w = quad.weights[m] * face.area;
      const Complex g0 = field.value(x);
      const Complex g1 = cdot(face.normal, field.gradient(x));
      tr.gamma0_face_mean[f] += quad.weights[m] * g0;
      tr.gamma1_face_mean[f] += quad.weights[m] * g1;
      tr.rhs_gamma0_p0[f] += w * g0;
      tr.rhs_gamma1_p0[f] += w * g1;
      for (int k = 0; k < 3; ++k)
        tr.rhs_gamma1_p1[spaces.face_p1[f][k]] += w * g1 * bc[k];
    }
  }
  return tr;
}

}  // namespace glauert
