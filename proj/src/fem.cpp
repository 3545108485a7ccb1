#include "glauert/fem.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace glauert {

namespace {

void add_points4(TetQuadrature& q, double a, double w) {
  const double d = 1.0 - 3.0 * a;
  q.points.push_back({d, a, a, a});
  q.points.push_back({a, d, a, a});
  q.points.push_back({a, a, d, a});
  q.points.push_back({a, a, a, d});
  q.weights.insert(q.weights.end(), 4, w);
}

void add_points6(TetQuadrature& q, double a, double w) {
  const double b = 0.5 - a;
  const int idx[6][4] = {{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0},
                         {1, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}};
  for (const auto& p : idx) {
    Eigen::Vector4d pt;
    for (int i = 0; i < 4; ++i) pt[i] = p[i] ? b : a;
    q.points.push_back(pt);
  }
  q.weights.insert(q.weights.end(), 6, w);
}

TetQuadrature make_degree2() {
  TetQuadrature q;
  add_points4(q, 0.13819660112501051518, 0.25);
  return q;
}

TetQuadrature make_degree5() {
  TetQuadrature q;
  add_points6(q, 0.045503704125649649492, 6.0 * 7.0910034628469110730e-03);
  add_points4(q, 0.092735250310891226402, 6.0 * 0.012248840519393658257);
  add_points4(q, 0.310885919263300609797, 6.0 * 0.018781320953002641800);
  return q;
}

}  // namespace

const TetQuadrature& TetQuadrature::by_degree(int degree) {
  static const TetQuadrature deg2 = make_degree2();
  static const TetQuadrature deg5 = make_degree5();
  return degree <= 2 ? deg2 : deg5;
}

P1VolumeSpace P1VolumeSpace::build(const TetMesh& mesh) {
  P1VolumeSpace space;
  space.mesh = &mesh;
  const int nv = static_cast<int>(mesh.vertices.size());
  std::vector<bool> on_gamma(nv, false);
  for (const auto& f : mesh.boundary_faces)
    if (f.tag == SurfaceTag::GammaInfinity)
      for (int v : f.v) on_gamma[v] = true;

  space.dof_of_vertex.assign(nv, -1);
  int next = 0;
  for (int v = 0; v < nv; ++v)
    if (!on_gamma[v]) space.dof_of_vertex[v] = next++;
  space.interior_count = next;
  for (int v = 0; v < nv; ++v)
    if (on_gamma[v]) space.dof_of_vertex[v] = next++;
  space.dof_count = next;
  space.gamma_count = next - space.interior_count;
  space.vertex_of_dof.assign(next, -1);
  for (int v = 0; v < nv; ++v) space.vertex_of_dof[space.dof_of_vertex[v]] = v;
  return space;
}

namespace {

struct ElementGeometry {
  Vec3 grad[4];  // constant P1 basis gradients
  double volume;
};

ElementGeometry element_geometry(const TetMesh& mesh, int t) {
  const auto& tet = mesh.tets[t];
  Mat3 J;
  J.col(0) = mesh.vertices[tet[1]] - mesh.vertices[tet[0]];
  J.col(1) = mesh.vertices[tet[2]] - mesh.vertices[tet[0]];
  J.col(2) = mesh.vertices[tet[3]] - mesh.vertices[tet[0]];
  ElementGeometry g;
  g.volume = J.determinant() / 6.0;
  const Mat3 Jit = J.inverse().transpose();
  g.grad[1] = Jit.col(0);
  g.grad[2] = Jit.col(1);
  g.grad[3] = Jit.col(2);
  g.grad[0] = -(g.grad[1] + g.grad[2] + g.grad[3]);
  return g;
}

}  // namespace

SparseMatrix assemble_interior_form(const P1VolumeSpace& space,
                                    const FlowField& flow,
                                    const AmbientState& ambient,
                                    const PGMap& map,
                                    const InteriorFormOptions& options) {
  const TetMesh& mesh = *space.mesh;
  const TetQuadrature& quad = TetQuadrature::by_degree(options.quadrature_degree);
  const int ntets = static_cast<int>(mesh.tets.size());

  std::vector<Eigen::Matrix4cd> element(ntets);
  int nthreads = options.threads > 0
                     ? options.threads
                     : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min(nthreads, ntets));

  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&](int t0, int t1) {
    try {
      for (int t = t0; t < t1; ++t) {
        const ElementGeometry geo = element_geometry(mesh, t);
        const auto& tet = mesh.tets[t];
        Eigen::Matrix4cd ke = Eigen::Matrix4cd::Zero();
        for (size_t m = 0; m < quad.points.size(); ++m) {
          const Eigen::Vector4d& bc = quad.points[m];
          Vec3 x = Vec3::Zero();
          for (int i = 0; i < 4; ++i) x += bc[i] * mesh.vertices[tet[i]];
          const PGCoefficients c = coefficients_at(x, flow, ambient, map, t);
          const double w = quad.weights[m] * geo.volume;
          for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
              Complex val = 0.0;
              if (options.include_symmetric) {
                val += c.r * geo.grad[j].dot(c.Xi * geo.grad[i]);
                val -= c.r * c.k * c.k * c.beta * bc[j] * bc[i];
              }
              if (options.include_convection) {
                val += I_UNIT * c.r * c.k *
                       c.V.dot(bc[j] * geo.grad[i] - bc[i] * geo.grad[j]);
              }
              ke(i, j) += w * val;
            }
          }
        }
        element[t] = ke;
      }
    } catch (...) {
      std::scoped_lock lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  if (nthreads == 1) {
    worker(0, ntets);
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < nthreads; ++k) {
      const int t0 = static_cast<int>(static_cast<long>(ntets) * k / nthreads);
      const int t1 =
          static_cast<int>(static_cast<long>(ntets) * (k + 1) / nthreads);
      pool.emplace_back(worker, t0, t1);
    }
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<size_t>(ntets) * 16);
  for (int t = 0; t < ntets; ++t) {
    const auto& tet = mesh.tets[t];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        triplets.emplace_back(space.dof_of_vertex[tet[i]],
                              space.dof_of_vertex[tet[j]], element[t](i, j));
  }
  SparseMatrix A(space.dof_count, space.dof_count);
  A.setFromTriplets(triplets.begin(), triplets.end());
  return A;
}

SparseMatrix assemble_stiffness(const P1VolumeSpace& space) {
  const TetMesh& mesh = *space.mesh;
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (int t = 0; t < static_cast<int>(mesh.tets.size()); ++t) {
    const ElementGeometry geo = element_geometry(mesh, t);
    const auto& tet = mesh.tets[t];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        triplets.emplace_back(space.dof_of_vertex[tet[i]],
                              space.dof_of_vertex[tet[j]],
                              Complex(geo.volume * geo.grad[j].dot(geo.grad[i])));
  }
  SparseMatrix A(space.dof_count, space.dof_count);
  A.setFromTriplets(triplets.begin(), triplets.end());
  return A;
}

SparseMatrix assemble_mass(const P1VolumeSpace& space) {
  const TetMesh& mesh = *space.mesh;
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (int t = 0; t < static_cast<int>(mesh.tets.size()); ++t) {
    const double vol = mesh.tet_volume(t);
    const auto& tet = mesh.tets[t];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        triplets.emplace_back(space.dof_of_vertex[tet[i]],
                              space.dof_of_vertex[tet[j]],
                              Complex(vol * (i == j ? 0.1 : 0.05)));
  }
  SparseMatrix A(space.dof_count, space.dof_count);
  A.setFromTriplets(triplets.begin(), triplets.end());
  return A;
}

}  // namespace glauert
