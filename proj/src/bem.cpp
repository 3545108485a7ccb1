#include "glauert/bem.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

namespace glauert {

Complex HelmholtzKernel::value(const Vec3& z) const {
  const double rho = z.norm();
  return std::exp(I_UNIT * wavenumber * rho) / (4.0 * M_PI * rho);
}

CVec3 HelmholtzKernel::gradient(const Vec3& z) const {
  const double rho = z.norm();
  const Complex e = std::exp(I_UNIT * wavenumber * rho) / (4.0 * M_PI * rho);
  const Complex dprime = (I_UNIT * wavenumber - 1.0 / rho) * e;
  return (dprime / rho) * z.cast<Complex>();
}

Eigen::Matrix3cd HelmholtzKernel::hessian(const Vec3& z) const {
  const double rho = z.norm();
  const Complex e = std::exp(I_UNIT * wavenumber * rho) / (4.0 * M_PI * rho);
  const Complex ik = I_UNIT * wavenumber;
  const Complex d1 = (ik - 1.0 / rho) * e;
  const Complex d2 = (ik - 1.0 / rho) * d1 + e / (rho * rho);
  const Vec3 zh = z / rho;
  return (d2 - d1 / rho) * (zh * zh.transpose()).cast<Complex>() +
         (d1 / rho) * Eigen::Matrix3cd::Identity();
}

void gauss_legendre_01(int n, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (1.0 - x);
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    const double w = 1.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

namespace {

// --------------------------------------------------------------------------
// Sauter-Schwab relative-coordinate rules on the unit triangle pair,
// for panel pairs sharing 3 (identical), 2 (edge) or 1 (vertex) vertices.
// Points are stored in unit-triangle coordinates (u, v), u,v >= 0, u+v <= 1;
// weights integrate over the product of two unit triangles.

struct PairRule {
  std::vector<double> u1, v1, u2, v2, w;

  void push(double s1, double t1, double s2, double t2, double weight) {
    u1.push_back(s1 - t1);
    v1.push_back(t1);
    u2.push_back(s2 - t2);
    v2.push_back(t2);
    w.push_back(weight);
  }
};

PairRule rule_identical(const std::vector<double>& x, const std::vector<double>& wx) {
  PairRule r;
  const int n = static_cast<int>(x.size());
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i0 = 0; i0 < n; ++i0) {
          const double xi = x[i3], e3 = x[i2], e2 = x[i1], e1 = x[i0];
          const double lw = wx[i3] * wx[i2] * wx[i1] * wx[i0] * xi * xi * xi *
                            e1 * e1 * e2;
          r.push(xi, xi * (1 - e1 + e1 * e2), xi * (1 - e1 * e2 * e3), xi * (1 - e1), lw);
          r.push(xi * (1 - e1 * e2 * e3), xi * (1 - e1), xi, xi * (1 - e1 + e1 * e2), lw);
          r.push(xi, xi * (e1 * (1 - e2 + e2 * e3)), xi * (1 - e1 * e2), xi * (e1 * (1 - e2)), lw);
          r.push(xi * (1 - e1 * e2), xi * (e1 * (1 - e2)), xi, xi * (e1 * (1 - e2 + e2 * e3)), lw);
          r.push(xi * (1 - e1 * e2 * e3), xi * (e1 * (1 - e2 * e3)), xi, xi * (e1 * (1 - e2)), lw);
          r.push(xi, xi * (e1 * (1 - e2)), xi * (1 - e1 * e2 * e3), xi * (e1 * (1 - e2 * e3)), lw);
        }
  return r;
}

PairRule rule_edge(const std::vector<double>& x, const std::vector<double>& wx) {
  PairRule r;
  const int n = static_cast<int>(x.size());
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i0 = 0; i0 < n; ++i0) {
          const double xi = x[i3], e3 = x[i2], e2 = x[i1], e1 = x[i0];
          const double base = wx[i3] * wx[i2] * wx[i1] * wx[i0] * xi * xi * xi * e1 * e1;
          const double lw = base * e2;
          r.push(xi, xi * e1 * e3, xi * (1 - e1 * e2), xi * e1 * (1 - e2), base);
          r.push(xi, xi * e1, xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3), lw);
          r.push(xi * (1 - e1 * e2), xi * e1 * (1 - e2), xi, xi * e1 * e2 * e3, lw);
          r.push(xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3), xi, xi * e1, lw);
          r.push(xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), xi, xi * e1 * e2, lw);
        }
  return r;
}

PairRule rule_vertex(const std::vector<double>& x, const std::vector<double>& wx) {
  PairRule r;
  const int n = static_cast<int>(x.size());
  for (int i3 = 0; i3 < n; ++i3)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i0 = 0; i0 < n; ++i0) {
          const double xi = x[i3], e3 = x[i2], e2 = x[i1], e1 = x[i0];
          const double lw = wx[i3] * wx[i2] * wx[i1] * wx[i0] * xi * xi * xi * e2;
          r.push(xi, xi * e1, xi * e2, xi * e2 * e3, lw);
          r.push(xi * e2, xi * e2 * e3, xi, xi * e1, lw);
        }
  return r;
}

struct PanelGeometry {
  Vec3 p[3];
  int vert[3];   // global mesh vertex ids
  int dof[3];    // surface P1 dofs
  Vec3 normal;
  Vec3 centroid;
  Vec3 curl[3];
  double area;
  double diameter;
};

std::vector<PanelGeometry> panel_geometry(const SurfaceSpaces& spaces) {
  std::vector<PanelGeometry> panels(spaces.p0_count());
  for (int f = 0; f < spaces.p0_count(); ++f) {
    const BoundaryFace& face = spaces.face(f);
    PanelGeometry& g = panels[f];
    for (int k = 0; k < 3; ++k) {
      g.vert[k] = face.v[k];
      g.dof[k] = spaces.face_p1[f][k];
      g.p[k] = spaces.mesh->vertices[face.v[k]];
    }
    g.normal = face.normal;
    g.area = face.area;
    g.centroid = (g.p[0] + g.p[1] + g.p[2]) / 3.0;
    g.diameter = std::max({(g.p[1] - g.p[0]).norm(), (g.p[2] - g.p[1]).norm(),
                           (g.p[0] - g.p[2]).norm()});
    const FaceP1Derivatives d = face_p1_derivatives(spaces, f);
    for (int k = 0; k < 3; ++k) g.curl[k] = d.curl[k];
  }
  return panels;
}

// Shared vertices are moved to the front of both permutations, matched in
// the same order, as the relative-coordinate rules require.
int match_panels(const PanelGeometry& a, const PanelGeometry& b, int perm1[3],
                 int perm2[3]) {
  int shared = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (a.vert[i] == b.vert[j]) {
        perm1[shared] = i;
        perm2[shared] = j;
        ++shared;
        break;
      }
  auto fill = [shared](int* perm) {
    int next = shared;
    for (int i = 0; i < 3 && next < 3; ++i) {
      bool used = false;
      for (int k = 0; k < shared; ++k)
        if (perm[k] == i) used = true;
      if (!used) perm[next++] = i;
    }
  };
  fill(perm1);
  fill(perm2);
  return shared;
}

struct Accumulator {
  DenseMatrix* S;   // may be null (skipped rows)
  DenseMatrix* D;
  DenseMatrix* Dt;
  DenseMatrix* N;
  Complex k2;
};

// One quadrature point pair: x on panel a, y on panel b; hx/hy are the P1
// hat values in the panels' original local numbering.
inline void accumulate_point(const Accumulator& acc, int a, int b,
                             const PanelGeometry& ga, const PanelGeometry& gb,
                             const Vec3& x, const double hx[3], const Vec3& y,
                             const double hy[3], double w,
                             const HelmholtzKernel& kernel, bool mirror_skip) {
  const Vec3 z = y - x;
  const Complex E = kernel.value(z);
  const CVec3 g = kernel.gradient(z);
  if (acc.S && !(mirror_skip && b < a)) (*acc.S)(a, b) += w * E;
  if (acc.D) {
    const Complex ng = cdot(gb.normal, g);
    for (int j = 0; j < 3; ++j) (*acc.D)(a, gb.dof[j]) += w * ng * hy[j];
  }
  if (acc.Dt) {
    const Complex ng = -cdot(ga.normal, g);
    for (int i = 0; i < 3; ++i) (*acc.Dt)(ga.dof[i], b) += w * ng * hx[i];
  }
  if (acc.N) {
    const Complex nn = acc.k2 * E * ga.normal.dot(gb.normal);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        (*acc.N)(ga.dof[i], gb.dof[j]) +=
            w * (E * ga.curl[i].dot(gb.curl[j]) - nn * hx[i] * hy[j]);
  }
}

inline Vec3 chart(const PanelGeometry& g, const int perm[3], double u, double v,
                  double hat[3]) {
  hat[perm[0]] = 1.0 - u - v;
  hat[perm[1]] = u;
  hat[perm[2]] = v;
  return g.p[perm[0]] + u * (g.p[perm[1]] - g.p[perm[0]]) +
         v * (g.p[perm[2]] - g.p[perm[0]]);
}

struct AssemblyContext {
  const std::vector<PanelGeometry>& panels;
  const HelmholtzKernel& kernel;
  const TriQuadrature& regular;
  const TriQuadrature& near;
  double near_ratio;
  PairRule rules[4];  // index = number of shared vertices (1..3)
};

void assemble_pair(const AssemblyContext& ctx, const Accumulator& acc, int a,
                   int b) {
  const PanelGeometry& ga = ctx.panels[a];
  const PanelGeometry& gb = ctx.panels[b];
  int perm1[3], perm2[3];
  // Permutations are computed on the index-ordered pair so that a swapped
  // request reuses the same physical point pairs.
  const int lo = std::min(a, b), hi = std::max(a, b);
  const PanelGeometry& glo = ctx.panels[lo];
  const PanelGeometry& ghi = ctx.panels[hi];
  const int shared = match_panels(glo, ghi, perm1, perm2);

  if (shared == 0) {
    const double dist = (ga.centroid - gb.centroid).norm();
    const bool is_near =
        dist < ctx.near_ratio * std::max(ga.diameter, gb.diameter);
    const TriQuadrature& qa = is_near ? ctx.near : ctx.regular;
    const TriQuadrature& qb = qa;
    const double scale = ga.area * gb.area;
    for (size_t m = 0; m < qa.points.size(); ++m) {
      const Vec3& bm = qa.points[m];
      const Vec3 x = bm[0] * ga.p[0] + bm[1] * ga.p[1] + bm[2] * ga.p[2];
      const double hx[3] = {bm[0], bm[1], bm[2]};
      for (size_t n = 0; n < qb.points.size(); ++n) {
        const Vec3& bn = qb.points[n];
        const Vec3 y = bn[0] * gb.p[0] + bn[1] * gb.p[1] + bn[2] * gb.p[2];
        const double hy[3] = {bn[0], bn[1], bn[2]};
        accumulate_point(acc, a, b, ga, gb, x, hx, y, hy,
                         scale * qa.weights[m] * qb.weights[n], ctx.kernel,
                         /*mirror_skip=*/true);
      }
    }
    return;
  }

  const PairRule& rule = ctx.rules[shared];
  const double scale = 4.0 * ga.area * gb.area;
  for (size_t m = 0; m < rule.w.size(); ++m) {
    double hlo[3], hhi[3];
    const Vec3 plo = chart(glo, perm1, rule.u1[m], rule.v1[m], hlo);
    const Vec3 phi = chart(ghi, perm2, rule.u2[m], rule.v2[m], hhi);
    const double w = scale * rule.w[m];
    if (a <= b)
      accumulate_point(acc, a, b, ga, gb, plo, hlo, phi, hhi, w, ctx.kernel,
                       /*mirror_skip=*/true);
    else
      accumulate_point(acc, a, b, ga, gb, phi, hhi, plo, hlo, w, ctx.kernel,
                       /*mirror_skip=*/true);
  }
}

}  // namespace

BemBlocks assemble_bem_blocks(const SurfaceSpaces& spaces,
                              const HelmholtzKernel& kernel,
                              const BemOptions& options) {
  const int q = spaces.p0_count();
  const int r = spaces.p1_count();
  if (q == 0) throw QuadratureError("empty coupling surface");

  const std::vector<PanelGeometry> panels = panel_geometry(spaces);
  std::vector<double> gx, gw;
  gauss_legendre_01(options.sauter_points, gx, gw);
  AssemblyContext ctx{panels,
                      kernel,
                      TriQuadrature::by_degree(options.regular_degree),
                      TriQuadrature::by_degree(options.near_degree),
                      options.near_ratio,
                      {}};
  ctx.rules[1] = rule_vertex(gx, gw);
  ctx.rules[2] = rule_edge(gx, gw);
  ctx.rules[3] = rule_identical(gx, gw);

  BemBlocks blocks;
  blocks.single_layer = DenseMatrix::Zero(q, q);
  blocks.double_layer = DenseMatrix::Zero(q, r);
  blocks.adjoint_double_layer = DenseMatrix::Zero(r, q);
  blocks.hypersingular = DenseMatrix::Zero(r, r);

  int nthreads = options.threads > 0
                     ? options.threads
                     : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min(nthreads, q));

  const Complex k2 = kernel.wavenumber * kernel.wavenumber;
  std::exception_ptr error;
  std::mutex error_mutex;

  // Rows of S and D are owned by the thread handling panel a; Dt and N rows
  // overlap between panels, so those go to per-thread buffers merged in
  // thread order.
  std::vector<DenseMatrix> dt_buf(nthreads), n_buf(nthreads);
  auto worker = [&](int tid, int a0, int a1) {
    try {
      dt_buf[tid] = DenseMatrix::Zero(r, q);
      n_buf[tid] = DenseMatrix::Zero(r, r);
      Accumulator acc{&blocks.single_layer, &blocks.double_layer, &dt_buf[tid],
                      &n_buf[tid], k2};
      for (int a = a0; a < a1; ++a)
        for (int b = 0; b < q; ++b) assemble_pair(ctx, acc, a, b);
    } catch (...) {
      std::scoped_lock lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  if (nthreads == 1) {
    worker(0, 0, q);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back(worker, t, static_cast<int>(static_cast<long>(q) * t / nthreads),
                        static_cast<int>(static_cast<long>(q) * (t + 1) / nthreads));
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  for (int t = 0; t < nthreads; ++t) {
    blocks.adjoint_double_layer += dt_buf[t];
    blocks.hypersingular += n_buf[t];
  }
  // S was accumulated on b >= a only; mirror for exact symmetry.
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < a; ++b)
      blocks.single_layer(a, b) = blocks.single_layer(b, a);

  if (!blocks.single_layer.allFinite() || !blocks.double_layer.allFinite() ||
      !blocks.adjoint_double_layer.allFinite() ||
      !blocks.hypersingular.allFinite())
    throw QuadratureError("non-finite entries in assembled boundary operators");
  return blocks;
}

DenseMatrix assemble_single_layer(const SurfaceSpaces& spaces,
                                  const HelmholtzKernel& kernel,
                                  const BemOptions& options) {
  return assemble_bem_blocks(spaces, kernel, options).single_layer;
}
DenseMatrix assemble_double_layer(const SurfaceSpaces& spaces,
                                  const HelmholtzKernel& kernel,
                                  const BemOptions& options) {
  return assemble_bem_blocks(spaces, kernel, options).double_layer;
}
DenseMatrix assemble_adjoint_double_layer(const SurfaceSpaces& spaces,
                                          const HelmholtzKernel& kernel,
                                          const BemOptions& options) {
  return assemble_bem_blocks(spaces, kernel, options).adjoint_double_layer;
}
DenseMatrix assemble_hypersingular(const SurfaceSpaces& spaces,
                                   const HelmholtzKernel& kernel,
                                   const BemOptions& options) {
  return assemble_bem_blocks(spaces, kernel, options).hypersingular;
}

namespace {

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return (p - a).norm();
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return (p - b).norm();
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0)
    return (p - (a + (d1 / (d1 - d3)) * ab)).norm();
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return (p - c).norm();
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0)
    return (p - (a + (d2 / (d2 - d6)) * ac)).norm();
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return (p - (b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b))).norm();
  const double denom = 1.0 / (va + vb + vc);
  return (p - (a + (vb * denom) * ab + (vc * denom) * ac)).norm();
}

}  // namespace

SurfaceDistance distance_to_surface(const SurfaceSpaces& spaces, const Vec3& x) {
  double best = std::numeric_limits<double>::max();
  double local = 0.0;
  for (int f = 0; f < spaces.p0_count(); ++f) {
    const BoundaryFace& face = spaces.face(f);
    const auto& v = spaces.mesh->vertices;
    const double d = point_triangle_distance(x, v[face.v[0]], v[face.v[1]],
                                             v[face.v[2]]);
    if (d < best) {
      best = d;
      local = std::max({(v[face.v[1]] - v[face.v[0]]).norm(),
                        (v[face.v[2]] - v[face.v[1]]).norm(),
                        (v[face.v[0]] - v[face.v[2]]).norm()});
    }
  }
  return {best, local};
}

std::vector<Complex> evaluate_potentials(const SurfaceSpaces& spaces,
                                         const DenseVector& lambda,
                                         const DenseVector& mu,
                                         const std::vector<Vec3>& points,
                                         const HelmholtzKernel& kernel,
                                         int quadrature_degree) {
  if (lambda.size() != spaces.p0_count() || mu.size() != spaces.p1_count())
    throw DimensionMismatchError("density sizes do not match surface spaces");
  std::string offending;
  for (size_t i = 0; i < points.size(); ++i) {
    const SurfaceDistance d = distance_to_surface(spaces, points[i]);
    if (d.distance < d.local_size)
      offending += (offending.empty() ? "" : ", ") + std::to_string(i);
  }
  if (!offending.empty())
    throw NearSurfaceError("points too close to the coupling surface: [" +
                           offending + "]");

  const TriQuadrature& quad = TriQuadrature::by_degree(quadrature_degree);
  std::vector<Complex> out(points.size(), Complex(0.0, 0.0));
  for (int f = 0; f < spaces.p0_count(); ++f) {
    const BoundaryFace& face = spaces.face(f);
    const auto& v = spaces.mesh->vertices;
    for (size_t m = 0; m < quad.points.size(); ++m) {
      const Vec3& bc = quad.points[m];
      const Vec3 y = bc[0] * v[face.v[0]] + bc[1] * v[face.v[1]] +
                     bc[2] * v[face.v[2]];
      const double w = quad.weights[m] * face.area;
      Complex mu_y = 0.0;
      for (int k = 0; k < 3; ++k) mu_y += bc[k] * mu[spaces.face_p1[f][k]];
      for (size_t i = 0; i < points.size(); ++i) {
        const Vec3 z = y - points[i];
        out[i] += w * (-lambda[f] * kernel.value(z) +
                       mu_y * cdot(face.normal, kernel.gradient(z)));
      }
    }
  }
  return out;
}

std::vector<CVec3> evaluate_potentials_gradient(const SurfaceSpaces& spaces,
                                                const DenseVector& lambda,
                                                const DenseVector& mu,
                                                const std::vector<Vec3>& points,
                                                const HelmholtzKernel& kernel,
                                                int quadrature_degree) {
  if (lambda.size() != spaces.p0_count() || mu.size() != spaces.p1_count())
    throw DimensionMismatchError("density sizes do not match surface spaces");
  const TriQuadrature& quad = TriQuadrature::by_degree(quadrature_degree);
  std::vector<CVec3> out(points.size(), CVec3::Zero());
  for (int f = 0; f < spaces.p0_count(); ++f) {
    const BoundaryFace& face = spaces.face(f);
    const auto& v = spaces.mesh->vertices;
    for (size_t m = 0; m < quad.points.size(); ++m) {
      const Vec3& bc = quad.points[m];
      const Vec3 y = bc[0] * v[face.v[0]] + bc[1] * v[face.v[1]] +
                     bc[2] * v[face.v[2]];
      const double w = quad.weights[m] * face.area;
      Complex mu_y = 0.0;
      for (int k = 0; k < 3; ++k) mu_y += bc[k] * mu[spaces.face_p1[f][k]];
      for (size_t i = 0; i < points.size(); ++i) {
        const Vec3 z = y - points[i];
        // grad_x E(y-x) = -grad E(z); grad_x of n_y.grad E(y-x) = -H(z) n_y
        out[i] += w * (lambda[f] * kernel.gradient(z) -
                       mu_y * (kernel.hessian(z) * face.normal.cast<Complex>()));
      }
    }
  }
  return out;
}

}  // namespace glauert
