#include "glauert/regularizer.hpp"

namespace glauert {

SurfaceP1Form assemble_delta_form(const SurfaceSpaces& spaces) {
  std::vector<Eigen::Triplet<double>> ks, ms;
  ks.reserve(spaces.faces.size() * 9);
  ms.reserve(spaces.faces.size() * 9);
  for (int f = 0; f < spaces.p0_count(); ++f) {
    const double area = spaces.face(f).area;
    const FaceP1Derivatives d = face_p1_derivatives(spaces, f);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        ks.emplace_back(spaces.face_p1[f][i], spaces.face_p1[f][j],
                        area * d.grad[j].dot(d.grad[i]));
        ms.emplace_back(spaces.face_p1[f][i], spaces.face_p1[f][j],
                        area * (i == j ? 1.0 / 6 : 1.0 / 12));
      }
    }
  }
  SurfaceP1Form form;
  form.stiffness.resize(spaces.p1_count(), spaces.p1_count());
  form.stiffness.setFromTriplets(ks.begin(), ks.end());
  form.mass.resize(spaces.p1_count(), spaces.p1_count());
  form.mass.setFromTriplets(ms.begin(), ms.end());
  return form;
}

}  // namespace glauert
