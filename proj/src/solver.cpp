#include "glauert/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace glauert {

std::pair<DenseVector, SolveReport> gmres(const MatVec& op, const DenseVector& b,
                                          const MatVec* right_precond,
                                          double tol, int max_iter) {
  const auto t_start = std::chrono::steady_clock::now();
  SolveReport report;
  const int n = static_cast<int>(b.size());
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    report.converged = true;
    report.final_residual = 0.0;
    return {DenseVector::Zero(n), report};
  }
  const int m = std::min(max_iter, n);

  std::vector<DenseVector> basis;
  basis.reserve(m + 1);
  basis.push_back(b / bnorm);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
  std::vector<Complex> cs(m), sn(m);
  DenseVector g = DenseVector::Zero(m + 1);
  g[0] = bnorm;

  for (int k = 0; k < m; ++k) {
    DenseVector z = right_precond ? (*right_precond)(basis[k]) : basis[k];
    DenseVector w = op(z);
    for (int i = 0; i <= k; ++i) {
      H(i, k) = basis[i].dot(w);  // conjugated inner product
      w -= H(i, k) * basis[i];
    }
    H(k + 1, k) = w.norm();
    if (!std::isfinite(std::abs(H(k + 1, k))))
      throw Breakdown("non-finite Arnoldi coefficient at iteration " +
                      std::to_string(k));
    const bool happy = std::abs(H(k + 1, k)) < 1e-14 * bnorm;
    if (!happy) basis.push_back(w / H(k + 1, k));

    for (int i = 0; i < k; ++i) {
      const Complex t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
      H(i + 1, k) = -std::conj(sn[i]) * H(i, k) + cs[i] * H(i + 1, k);
      H(i, k) = t;
    }
    const double denom = std::sqrt(std::norm(H(k, k)) + std::norm(H(k + 1, k)));
    if (denom == 0.0) {
      cs[k] = 1.0;
      sn[k] = 0.0;
    } else {
      cs[k] = std::abs(H(k, k)) / denom;
      const Complex phase = (std::abs(H(k, k)) == 0.0)
                                ? Complex(1.0, 0.0)
                                : Complex(H(k, k) / std::abs(H(k, k)));
      sn[k] = phase * std::conj(H(k + 1, k)) / denom;
    }
    H(k, k) = cs[k] * H(k, k) + sn[k] * H(k + 1, k);
    H(k + 1, k) = 0.0;
    g[k + 1] = -std::conj(sn[k]) * g[k];
    g[k] = cs[k] * g[k];

    report.residual_history.push_back(std::abs(g[k + 1]) / bnorm);
    if (report.residual_history.back() <= tol || happy) break;
  }

  const int steps = static_cast<int>(report.residual_history.size());
  DenseVector y = DenseVector::Zero(steps);
  for (int i = steps - 1; i >= 0; --i) {
    Complex s = g[i];
    for (int j = i + 1; j < steps; ++j) s -= H(i, j) * y[j];
    y[i] = s / H(i, i);
  }
  DenseVector u = DenseVector::Zero(n);
  for (int i = 0; i < steps; ++i) u += y[i] * basis[i];
  DenseVector x = right_precond ? (*right_precond)(u) : u;

  report.iterations = steps;
  report.final_residual = (b - op(x)).norm() / bnorm;
  report.converged = report.final_residual <= tol * (1.0 + 1e-9);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return {x, report};
}

SparseMatrix spai(const DenseMatrix& block,
                  const std::vector<std::vector<int>>& pattern) {
  const int n = static_cast<int>(block.rows());
  if (block.rows() != block.cols())
    throw DimensionMismatchError("SPAI block must be square");
  if (static_cast<int>(pattern.size()) != n)
    throw DimensionMismatchError("SPAI pattern size mismatch");

  std::vector<Eigen::Triplet<Complex>> trip;
  for (int j = 0; j < n; ++j) {
    const std::vector<int>& J = pattern[j];
    std::set<int> rows;
    for (int kcol : J)
      for (int i : pattern[kcol]) rows.insert(i);
    std::vector<int> I(rows.begin(), rows.end());
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(I.size(), J.size());
    for (size_t kk = 0; kk < J.size(); ++kk) {
      const std::vector<int>& col_rows = pattern[J[kk]];
      for (int i : col_rows) {
        const auto pos = std::lower_bound(I.begin(), I.end(), i) - I.begin();
        A(pos, kk) = block(i, J[kk]);
      }
    }
    const auto jt = std::lower_bound(I.begin(), I.end(), j);
    if (jt == I.end() || *jt != j)
      throw RankError("SPAI pattern for column " + std::to_string(j) +
                      " must contain the diagonal");
    DenseVector e = DenseVector::Zero(I.size());
    e[jt - I.begin()] = 1.0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    if (qr.rank() < static_cast<Eigen::Index>(J.size())) {
      // rank-deficient column: scaled identity fallback
      const Complex d = block(j, j);
      trip.emplace_back(j, j, std::abs(d) > 0 ? 1.0 / d : Complex(1.0, 0.0));
      continue;
    }
    const DenseVector m = qr.solve(e);
    for (size_t kk = 0; kk < J.size(); ++kk) trip.emplace_back(J[kk], j, m[kk]);
  }
  SparseMatrix P(n, n);
  P.setFromTriplets(trip.begin(), trip.end());
  return P;
}

std::vector<std::vector<int>> p0_vicinity(const SurfaceSpaces& spaces, int radius) {
  const int q = spaces.p0_count();
  // faces are adjacent when they share a vertex
  std::vector<std::vector<int>> vert_faces(spaces.p1_count());
  for (int f = 0; f < q; ++f)
    for (int k = 0; k < 3; ++k) vert_faces[spaces.face_p1[f][k]].push_back(f);
  std::vector<std::vector<int>> adj(q);
  for (int f = 0; f < q; ++f) {
    std::set<int> nb{f};
    for (int k = 0; k < 3; ++k)
      for (int g : vert_faces[spaces.face_p1[f][k]]) nb.insert(g);
    adj[f].assign(nb.begin(), nb.end());
  }
  std::vector<std::vector<int>> out = adj;
  for (int hop = 1; hop < radius; ++hop) {
    std::vector<std::vector<int>> next(q);
    for (int f = 0; f < q; ++f) {
      std::set<int> nb(out[f].begin(), out[f].end());
      for (int g : out[f]) nb.insert(adj[g].begin(), adj[g].end());
      next[f].assign(nb.begin(), nb.end());
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<int>> p1_vicinity(const SurfaceSpaces& spaces, int radius) {
  const int r = spaces.p1_count();
  std::vector<std::vector<int>> adj(r);
  {
    std::vector<std::set<int>> nb(r);
    for (int i = 0; i < r; ++i) nb[i].insert(i);
    for (int f = 0; f < spaces.p0_count(); ++f)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          nb[spaces.face_p1[f][a]].insert(spaces.face_p1[f][b]);
    for (int i = 0; i < r; ++i) adj[i].assign(nb[i].begin(), nb[i].end());
  }
  std::vector<std::vector<int>> out = adj;
  for (int hop = 1; hop < radius; ++hop) {
    std::vector<std::vector<int>> next(r);
    for (int i = 0; i < r; ++i) {
      std::set<int> nb(out[i].begin(), out[i].end());
      for (int g : out[i]) nb.insert(adj[g].begin(), adj[g].end());
      next[i].assign(nb.begin(), nb.end());
    }
    out = std::move(next);
  }
  return out;
}

double condition_number(const DenseMatrix& dense, int dense_cap) {
  const int n = static_cast<int>(dense.rows());
  if (dense.rows() != dense.cols())
    throw DimensionMismatchError("condition number needs a square matrix");
  if (n > dense_cap)
    throw CapExceeded("matrix dimension " + std::to_string(n) +
                      " exceeds the dense SVD cap " + std::to_string(dense_cap) +
                      "; use an estimator or raise the cap");
  DenseMatrix copy = dense;
  std::vector<double> sigma(n);
  const int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', n, n, copy.data(), n,
                                  sigma.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw SingularPreconditioner("SVD failed, info=" + std::to_string(info));
  if (sigma[n - 1] <= 0.0) return std::numeric_limits<double>::infinity();
  return sigma[0] / sigma[n - 1];
}

BlockPreconditioner BlockPreconditioner::build(const BlockSystem& system,
                                               const SurfaceSpaces& spaces,
                                               int spai_radius) {
  BlockPreconditioner pc;
  pc.system_ = &system;
  const int pi = system.p_interior;
  if (pi > 0) {
    SparseMatrix interior = system.fem.topLeftCorner(pi, pi);
    interior.makeCompressed();
    pc.lu_interior_ = std::make_shared<Eigen::SparseLU<SparseMatrix>>();
    pc.lu_interior_->compute(interior);
    if (pc.lu_interior_->info() != Eigen::Success)
      throw SingularPreconditioner("sparse LU of the interior block failed");
  }
  pc.spai_gamma_ = spai(system.bem_n, p1_vicinity(spaces, spai_radius));
  pc.spai_lambda_ = spai(system.a33, p0_vicinity(spaces, spai_radius));
  if (system.formulation == Formulation::Stable) {
    SparseMatrix d = system.a44;
    d.makeCompressed();
    pc.lu_delta_ = std::make_shared<Eigen::SparseLU<SparseMatrix>>();
    pc.lu_delta_->compute(d);
    if (pc.lu_delta_->info() != Eigen::Success)
      throw SingularPreconditioner("sparse LU of the surface-form block failed");
  }
  return pc;
}

DenseVector BlockPreconditioner::apply(const DenseVector& v) const {
  const BlockSystem& sys = *system_;
  DenseVector z = DenseVector::Zero(v.size());
  const int pi = sys.p_interior, pg = sys.p_gamma, np = sys.p();
  if (pi > 0) z.head(pi) = lu_interior_->solve(v.head(pi));
  z.segment(pi, pg) = spai_gamma_ * v.segment(pi, pg);
  z.segment(np, sys.q) = spai_lambda_ * v.segment(np, sys.q);
  if (sys.formulation == Formulation::Stable)
    z.tail(sys.r()) = lu_delta_->solve(v.tail(sys.r()));
  return z;
}

std::pair<Densities, SolveReport> solve_case(const BlockSystem& system,
                                             const SurfaceSpaces& spaces,
                                             const SolverConfig& config) {
  MatVec op = [&system](const DenseVector& x) { return system.apply(x); };
  std::unique_ptr<MatVec> pc;
  BlockPreconditioner prec;
  if (config.precondition) {
    prec = BlockPreconditioner::build(system, spaces, config.spai_radius);
    pc = std::make_unique<MatVec>(
        [prec](const DenseVector& v) { return prec.apply(v); });
  }
  auto [u, report] = gmres(op, system.rhs, pc.get(), config.tol, config.max_iter);
  return {system.split(u), report};
}

std::vector<SweepRow> sweep_conditioning(
    const std::function<std::pair<BlockSystem, BlockSystem>(double)>& assemble,
    const SurfaceSpaces& spaces, const std::vector<double>& k_hats,
    double freq_scale, const SolverConfig& config, bool run_solves,
    int cond_cap) {
  std::vector<SweepRow> rows;
  rows.reserve(k_hats.size());
  for (double k : k_hats) {
    SweepRow row{};
    row.k_hat = k;
    row.freq_hz = k * freq_scale;
    auto [unst, stab] = assemble(k);
    row.cond_unstab = condition_number(unst.to_dense(), cond_cap);
    row.cond_stab = condition_number(stab.to_dense(), cond_cap);
    row.iters_unstab = row.iters_stab = 0;
    if (run_solves) {
      row.iters_unstab = solve_case(unst, spaces, config).second.iterations;
      row.iters_stab = solve_case(stab, spaces, config).second.iterations;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "freq_hz,k_hat,cond_unstab,cond_stab,iters_unstab,iters_stab\n";
  os.precision(17);
  for (const auto& r : rows)
    os << r.freq_hz << ',' << r.k_hat << ',' << r.cond_unstab << ','
       << r.cond_stab << ',' << r.iters_unstab << ',' << r.iters_stab << '\n';
  return os.str();
}

std::string residual_csv(const SolveReport& report) {
  std::ostringstream os;
  os << "iter,relres\n";
  os.precision(17);
  for (size_t i = 0; i < report.residual_history.size(); ++i)
    os << (i + 1) << ',' << report.residual_history[i] << '\n';
  return os.str();
}

}  // namespace glauert
