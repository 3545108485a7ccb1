#include "glauert/coupling.hpp"

namespace glauert {

int BlockSystem::rows() const {
  return p() + q + (formulation == Formulation::Stable ? r() : 0);
}

std::pair<int, int> BlockSystem::block_range(int b) const {
  switch (b) {
    case 0: return {0, p_interior};
    case 1: return {p_interior, p_gamma};
    case 2: return {p(), q};
    case 3: return {p() + q, r()};
  }
  throw DimensionMismatchError("block index out of range");
}

BlockKind BlockSystem::block_kind(int bi, int bj) const {
  auto z = BlockKind::Zero, s = BlockKind::Sparse, d = BlockKind::Dense;
  if (formulation == Formulation::Unstable) {
    const BlockKind table[3][3] = {{s, s, z}, {s, d, d}, {z, d, d}};
    return table[bi][bj];
  }
  const BlockKind table[4][4] = {
      {s, s, z, z}, {s, d, d, z}, {z, d, d, s}, {z, d, d, s}};
  return table[bi][bj];
}

DenseVector BlockSystem::apply(const DenseVector& x) const {
  if (x.size() != rows())
    throw DimensionMismatchError("operator/vector size mismatch");
  DenseVector y = DenseVector::Zero(rows());
  const int pi = p_interior, pg = p_gamma, np = p();
  y.head(np) = fem * x.head(np);
  y.segment(pi, pg) += bem_n * x.segment(pi, pg) + a23 * x.segment(np, q);
  y.segment(np, q) += a32 * x.segment(pi, pg) + a33 * x.segment(np, q);
  if (formulation == Formulation::Stable) {
    y.segment(np, q) += a34 * x.segment(np + q, pg);
    y.segment(np + q, pg) += bem_n * x.segment(pi, pg) +
                             a43 * x.segment(np, q) + a44 * x.segment(np + q, pg);
  }
  return y;
}

DenseMatrix BlockSystem::to_dense() const {
  DenseMatrix A = DenseMatrix::Zero(rows(), rows());
  const int pi = p_interior, pg = p_gamma, np = p();
  A.topLeftCorner(np, np) = DenseMatrix(fem);
  A.block(pi, pi, pg, pg) += bem_n;
  A.block(pi, np, pg, q) = a23;
  A.block(np, pi, q, pg) = a32;
  A.block(np, np, q, q) = a33;
  if (formulation == Formulation::Stable) {
    A.block(np, np + q, q, pg) = DenseMatrix(a34);
    A.block(np + q, pi, pg, pg) = bem_n;
    A.block(np + q, np, pg, q) = a43;
    A.block(np + q, np + q, pg, pg) = DenseMatrix(a44);
  }
  return A;
}

Densities BlockSystem::split(const DenseVector& u) const {
  Densities d;
  d.phi = u.head(p());
  d.lambda = u.segment(p(), q);
  if (formulation == Formulation::Stable) d.p_aux = u.tail(r());
  return d;
}

namespace {

void check_dimensions(const SparseMatrix& fem_matrix, const BemBlocks& bem,
                      const SurfaceSpaces& spaces, const P1VolumeSpace& volume) {
  spaces.check_trace_compatibility(volume);
  const int q = spaces.p0_count(), r = spaces.p1_count();
  if (fem_matrix.rows() != volume.dof_count ||
      fem_matrix.cols() != volume.dof_count)
    throw DimensionMismatchError("interior form size does not match the space");
  if (bem.single_layer.rows() != q || bem.hypersingular.rows() != r ||
      bem.double_layer.rows() != q || bem.double_layer.cols() != r ||
      bem.adjoint_double_layer.rows() != r || bem.adjoint_double_layer.cols() != q)
    throw DimensionMismatchError("boundary operator block sizes do not match");
}

}  // namespace

BlockSystem assemble_unstable(const SparseMatrix& fem_matrix,
                              const BemBlocks& bem, const SurfaceSpaces& spaces,
                              const P1VolumeSpace& volume,
                              const IncidentTraces& traces) {
  check_dimensions(fem_matrix, bem, spaces, volume);
  BlockSystem sys;
  sys.formulation = Formulation::Unstable;
  sys.p_interior = volume.interior_count;
  sys.p_gamma = volume.gamma_count;
  sys.q = spaces.p0_count();
  sys.fem = fem_matrix;
  sys.bem_n = bem.hypersingular;
  const RealSparseMatrix m01 = p0_p1_mass(spaces);
  sys.a23 = bem.adjoint_double_layer -
            0.5 * DenseMatrix(m01.transpose().cast<Complex>());
  sys.a32 = bem.double_layer - 0.5 * DenseMatrix(m01.cast<Complex>());
  sys.a33 = -bem.single_layer;

  sys.rhs = DenseVector::Zero(sys.rows());
  sys.rhs.segment(sys.p_interior, sys.p_gamma) = traces.rhs_gamma1_p1;
  sys.rhs.segment(sys.p(), sys.q) = -traces.rhs_gamma0_p0;
  return sys;
}

BlockSystem assemble_stable(const SparseMatrix& fem_matrix, const BemBlocks& bem,
                            const SurfaceP1Form& delta,
                            const SurfaceSpaces& spaces,
                            const P1VolumeSpace& volume,
                            const IncidentTraces& traces, Complex eta,
                            bool dtilde_minus_half) {
  if (eta.real() == 0.0)
    throw EtaError("the coupling parameter eta must have Re(eta) != 0");
  check_dimensions(fem_matrix, bem, spaces, volume);
  BlockSystem sys;
  sys.formulation = Formulation::Stable;
  sys.eta = eta;
  sys.p_interior = volume.interior_count;
  sys.p_gamma = volume.gamma_count;
  sys.q = spaces.p0_count();
  sys.fem = fem_matrix;
  sys.bem_n = bem.hypersingular;
  const RealSparseMatrix m01 = p0_p1_mass(spaces);
  const DenseMatrix m10c = DenseMatrix(m01.transpose().cast<Complex>());
  sys.a23 = bem.adjoint_double_layer - 0.5 * m10c;
  sys.a32 = bem.double_layer - 0.5 * DenseMatrix(m01.cast<Complex>());
  sys.a33 = -bem.single_layer;
  sys.a34 = (I_UNIT * std::conj(eta)) * m01.cast<Complex>();
  sys.a43 = bem.adjoint_double_layer + (dtilde_minus_half ? -0.5 : 0.5) * m10c;
  sys.a44 = -(delta.stiffness + delta.mass).cast<Complex>();

  sys.rhs = DenseVector::Zero(sys.rows());
  sys.rhs.segment(sys.p_interior, sys.p_gamma) = traces.rhs_gamma1_p1;
  sys.rhs.segment(sys.p(), sys.q) = -traces.rhs_gamma0_p0;
  sys.rhs.tail(sys.r()) = traces.rhs_gamma1_p1;
  return sys;
}

}  // namespace glauert
