#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "glauert/coupling.hpp"
#include "glauert/types.hpp"

namespace glauert {

struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_history;  // relative, one entry per iteration
  double wall_time_s = 0.0;
  bool converged = false;
  double final_residual = 0.0;
};

struct SolverConfig {
  double tol = 1e-6;
  int max_iter = 2000;
  bool precondition = true;
  int spai_radius = 1;
};

using MatVec = std::function<DenseVector(const DenseVector&)>;

/// Full (no restart) GMRES, right-preconditioned when `right_precond` is
/// given, so the reported residual is the true residual. Happy breakdown is
/// convergence; a non-finite Arnoldi step raises Breakdown.
std::pair<DenseVector, SolveReport> gmres(const MatVec& op, const DenseVector& b,
                                          const MatVec* right_precond,
                                          double tol, int max_iter);

/// Sparse approximate inverse over a fixed pattern: the block is sparsified
/// to the pattern, and each column of P solves an independent least-squares
/// problem min |A_sp p_col - e_col| restricted to the pattern. Rank-deficient
/// columns fall back to a scaled identity column.
SparseMatrix spai(const DenseMatrix& block,
                  const std::vector<std::vector<int>>& pattern);

/// Neighborhood patterns in the sense of shared vertices/faces: pattern[j]
/// lists the dofs within `radius` adjacency hops of dof j (self included).
std::vector<std::vector<int>> p0_vicinity(const SurfaceSpaces& spaces, int radius);
std::vector<std::vector<int>> p1_vicinity(const SurfaceSpaces& spaces, int radius);

/// 2-norm condition number via dense SVD. Throws CapExceeded beyond the cap.
double condition_number(const DenseMatrix& dense, int dense_cap = 6000);

/// Block-diagonal preconditioner: sparse LU on the interior FEM block and
/// the surface-form block, SPAI on the dense diagonal blocks (the row-2
/// SPAI ignores the volumic contribution and sparsifies the hypersingular
/// part only).
class BlockPreconditioner {
 public:
  static BlockPreconditioner build(const BlockSystem& system,
                                   const SurfaceSpaces& spaces, int spai_radius);
  DenseVector apply(const DenseVector& v) const;

 private:
  const BlockSystem* system_ = nullptr;
  std::shared_ptr<Eigen::SparseLU<SparseMatrix>> lu_interior_;
  std::shared_ptr<Eigen::SparseLU<SparseMatrix>> lu_delta_;
  SparseMatrix spai_gamma_;   // approximate inverse of the N block
  SparseMatrix spai_lambda_;  // approximate inverse of -S
};

/// Solves the coupled system with (optionally preconditioned) full GMRES.
std::pair<Densities, SolveReport> solve_case(const BlockSystem& system,
                                             const SurfaceSpaces& spaces,
                                             const SolverConfig& config);

struct SweepRow {
  double freq_hz;
  double k_hat;
  double cond_unstab;
  double cond_stab;
  int iters_unstab;
  int iters_stab;
};

/// Assembles both formulations on a wavenumber grid and records condition
/// numbers (dense SVD) and, optionally, GMRES iteration counts. The callback
/// returns the (unstable, stable) pair so frequency-independent pieces can
/// be shared.
std::vector<SweepRow> sweep_conditioning(
    const std::function<std::pair<BlockSystem, BlockSystem>(double)>& assemble,
    const SurfaceSpaces& spaces, const std::vector<double>& k_hats,
    double freq_scale, const SolverConfig& config, bool run_solves,
    int cond_cap = 6000);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string residual_csv(const SolveReport& report);

}  // namespace glauert
