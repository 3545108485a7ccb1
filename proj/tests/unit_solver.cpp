#include <doctest.h>

#include <random>

#include "glauert/solver.hpp"

using namespace glauert;

namespace {

DenseMatrix random_complex(int n, unsigned seed, double diag_boost = 0.0) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  for (int i = 0; i < n; ++i) a(i, i) += diag_boost;
  return a;
}

MatVec matvec_of(const DenseMatrix& a) {
  return [&a](const DenseVector& x) { return DenseVector(a * x); };
}

// One-sided Jacobi SVD, independent of LAPACK; singular values only.
std::vector<double> jacobi_singular_values(DenseMatrix a) {
  const int n = static_cast<int>(a.cols());
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a.col(p).dot(a.col(q));  // conj(p) . q
        const double app = a.col(p).squaredNorm();
        const double aqq = a.col(q).squaredNorm();
        off = std::max(off, std::abs(apq) / std::sqrt(app * aqq));
        if (std::abs(apq) < 1e-15 * std::sqrt(app * aqq)) continue;
        // orthogonalize the pair with the unitary diagonalizing its Gram
        Eigen::Matrix2cd gram;
        gram << app, apq, std::conj(apq), aqq;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gram);
        const Eigen::Matrix2cd u = es.eigenvectors();
        const DenseVector cp = a.col(p);
        a.col(p) = u(0, 0) * cp + u(1, 0) * a.col(q);
        a.col(q) = u(0, 1) * cp + u(1, 1) * a.col(q);
      }
    }
    if (off < 1e-14) break;
  }
  std::vector<double> sigma(n);
  for (int j = 0; j < n; ++j) sigma[j] = a.col(j).norm();
  std::sort(sigma.begin(), sigma.end(), std::greater<double>());
  return sigma;
}

}  // namespace

TEST_CASE("gmres on the identity converges in one iteration") {
  const int n = 12;
  const DenseMatrix a = DenseMatrix::Identity(n, n);
  DenseVector b(n);
  for (int i = 0; i < n; ++i) b[i] = Complex(i + 1, -i);
  auto [x, report] = gmres(matvec_of(a), b, nullptr, 1e-12, 100);
  CHECK(report.iterations == 1);
  CHECK(report.converged);
  CHECK((x - b).norm() <= 1e-12 * b.norm());
}

TEST_CASE("zero right-hand side returns immediately") {
  const DenseMatrix a = random_complex(8, 1, 4.0);
  auto [x, report] = gmres(matvec_of(a), DenseVector::Zero(8), nullptr, 1e-10, 50);
  CHECK(report.iterations == 0);
  CHECK(report.converged);
  CHECK(x.norm() == 0.0);
}

TEST_CASE("gmres matches a dense LU solve") {
  const int n = 50;
  const DenseMatrix a = random_complex(n, 42, 8.0);
  DenseVector b(n);
  std::mt19937 rng(43);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < n; ++i) b[i] = Complex(gauss(rng), gauss(rng));
  auto [x, report] = gmres(matvec_of(a), b, nullptr, 1e-12, n);
  const DenseVector exact = a.partialPivLu().solve(b);
  CHECK(report.converged);
  CHECK((x - exact).norm() <= 1e-10 * exact.norm());

  // minimal-residual property: history is non-increasing
  for (size_t i = 1; i < report.residual_history.size(); ++i)
    CHECK(report.residual_history[i] <=
          report.residual_history[i - 1] * (1.0 + 1e-12));

  // the reported (preconditioned) residual equals the true residual
  CHECK(std::abs(report.residual_history.back() - report.final_residual) <=
        1e-12);
}

TEST_CASE("right preconditioning reports true residuals") {
  const int n = 40;
  const DenseMatrix a = random_complex(n, 7, 6.0);
  const DenseMatrix m = DenseMatrix(a.diagonal().cwiseInverse().asDiagonal());
  DenseVector b = DenseVector::Ones(n);
  MatVec pc = matvec_of(m);
  auto [x, report] = gmres(matvec_of(a), b, &pc, 1e-11, n);
  CHECK(report.converged);
  const double true_res = (b - a * x).norm() / b.norm();
  CHECK(std::abs(true_res - report.final_residual) <= 1e-12);
  CHECK(std::abs(report.residual_history.back() - true_res) <= 1e-9);
}

TEST_CASE("spai of a diagonal block is the exact inverse") {
  const int n = 10;
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = Complex(i + 1, 0.5 * i);
  std::vector<std::vector<int>> pattern(n);
  for (int i = 0; i < n; ++i) pattern[i] = {i};
  const SparseMatrix p = spai(a, pattern);
  for (int i = 0; i < n; ++i)
    CHECK(std::abs(p.coeff(i, i) - 1.0 / a(i, i)) < 1e-14);
}

TEST_CASE("tridiagonal spai halves the iteration count") {
  const int n = 120;
  DenseMatrix a = DenseMatrix::Zero(n, n);
  std::mt19937 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    if (i > 0) a(i, i - 1) = Complex(1.0, 0.2 * gauss(rng));
    if (i < n - 1) a(i, i + 1) = Complex(1.0, 0.2 * gauss(rng));
    const double th = 0.9 * std::sin(3.0 * i);
    a(i, i) =
        (2.6 + 0.4 * std::cos(0.5 * i)) * Complex(std::cos(th), std::sin(th));
  }
  DenseVector b(n);
  for (int i = 0; i < n; ++i) b[i] = Complex(gauss(rng), gauss(rng));

  auto [x0, plain] = gmres(matvec_of(a), b, nullptr, 1e-10, n);
  std::vector<std::vector<int>> pattern(n);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j)
      pattern[i].push_back(j);
  const SparseMatrix p = spai(a, pattern);
  MatVec pc = [&p](const DenseVector& v) { return DenseVector(p * v); };
  auto [x1, prec] = gmres(matvec_of(a), b, &pc, 1e-10, n);
  CHECK(prec.converged);
  CHECK(plain.converged);
  CHECK(prec.iterations * 2 <= plain.iterations);
}

TEST_CASE("spai is optimal over its pattern") {
  const int n = 24;
  const DenseMatrix a = random_complex(n, 3, 5.0);
  std::vector<std::vector<int>> pattern(n);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j)
      pattern[i].push_back(j);
  const SparseMatrix p = spai(a, pattern);

  // sparsified operator
  DenseMatrix asp = DenseMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i : pattern[j]) asp(i, j) = a(i, j);
  const DenseMatrix exact_inv = asp.partialPivLu().inverse();
  for (int j = 0; j < n; ++j) {
    DenseVector mcol = DenseVector::Zero(n);
    for (int i : pattern[j]) mcol[i] = exact_inv(i, j);  // pattern-restricted
    const double res_spai = (asp * DenseVector(p.col(j)) -
                             DenseVector::Unit(n, j))
                                .norm();
    const double res_proj = (asp * mcol - DenseVector::Unit(n, j)).norm();
    CHECK(res_spai <= res_proj + 1e-12);
  }
}

TEST_CASE("condition numbers") {
  CHECK(condition_number(DenseMatrix::Identity(5, 5)) == doctest::Approx(1.0));
  DenseMatrix d = DenseMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 10.0;
  CHECK(condition_number(d) == doctest::Approx(10.0));

  const DenseMatrix a = random_complex(30, 9, 2.0);
  const auto sigma = jacobi_singular_values(a);
  const double reference = sigma.front() / sigma.back();
  CHECK(condition_number(a) == doctest::Approx(reference).epsilon(1e-8));

  CHECK_THROWS_AS(condition_number(DenseMatrix::Identity(10, 10), 5),
                  CapExceeded);
}
