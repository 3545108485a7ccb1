#pragma once

#include "glauert/bem.hpp"
#include "glauert/fem.hpp"
#include "glauert/incident.hpp"
#include "glauert/regularizer.hpp"
#include "glauert/surface.hpp"
#include "glauert/types.hpp"

namespace glauert {

enum class Formulation { Unstable, Stable };
enum class BlockKind { Zero, Sparse, Dense };

/// Discrete solution triple.
struct Densities {
  DenseVector phi;     // volume P1 coefficients, [interior | Gamma_inf] order
  DenseVector lambda;  // surface P0
  DenseVector p_aux;   // surface P1 (stable formulation only, else empty)
};

/// The coupled system, stored as its blocks over the dof ordering
/// [Phi_interior | Phi_Gamma | lambda | p]. Structurally absent blocks are
/// never formed, so they stay exactly zero.
struct BlockSystem {
  Formulation formulation = Formulation::Unstable;
  int p_interior = 0;
  int p_gamma = 0;  // == surface P1 count r
  int q = 0;
  Complex eta{1.0, 0.0};

  SparseMatrix fem;    // p x p, interior sesquilinear form
  DenseMatrix bem_n;   // r x r, hypersingular block (rows 2 and 4)
  DenseMatrix a23;     // r x q, Dt - 1/2 M10
  DenseMatrix a32;     // q x r, D  - 1/2 M01
  DenseMatrix a33;     // q x q, -S
  SparseMatrix a34;    // q x r, i conj(eta) M01          (stable)
  DenseMatrix a43;     // r x q, Dt + 1/2 M10             (stable)
  SparseMatrix a44;    // r x r, -(surface stiffness+mass) (stable)
  DenseVector rhs;

  int p() const { return p_interior + p_gamma; }
  int r() const { return p_gamma; }
  int rows() const;
  int block_count() const { return formulation == Formulation::Stable ? 4 : 3; }
  /// offset and size of block row/column b (0-based)
  std::pair<int, int> block_range(int b) const;
  BlockKind block_kind(int bi, int bj) const;

  DenseVector apply(const DenseVector& x) const;
  DenseMatrix to_dense() const;

  Densities split(const DenseVector& u) const;
};

/// Assembles the one-surface-unknown system:
///   row 1/2: V + <N g0 Phi, g0 Phi_t> + <(Dt - I/2) lambda, g0 Phi_t> = <g1 f_inc, g0 Phi_t>
///   row 3:   <(D - I/2) g0 Phi, lambda_t> - <S lambda, lambda_t>      = -<g0 f_inc, lambda_t>
BlockSystem assemble_unstable(const SparseMatrix& fem_matrix,
                              const BemBlocks& bem, const SurfaceSpaces& spaces,
                              const P1VolumeSpace& volume,
                              const IncidentTraces& traces);

/// Assembles the two-surface-unknown system. Re(eta) must be nonzero.
/// The third surface equation tests (Dt + I/2); `dtilde_minus_half`
/// switches to the (Dt - I/2) variant for comparison.
BlockSystem assemble_stable(const SparseMatrix& fem_matrix, const BemBlocks& bem,
                            const SurfaceP1Form& delta,
                            const SurfaceSpaces& spaces,
                            const P1VolumeSpace& volume,
                            const IncidentTraces& traces, Complex eta,
                            bool dtilde_minus_half = false);

}  // namespace glauert
