#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace glauert {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;

using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using RealSparseMatrix = Eigen::SparseMatrix<double>;

inline constexpr Complex I_UNIT{0.0, 1.0};

/// Unconjugated dot product of a real direction with a complex vector.
inline Complex cdot(const Vec3& n, const CVec3& g) {
  return n.x() * g.x() + n.y() * g.y() + n.z() * g.z();
}

/// Errors thrown by mesh ingestion.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TopologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Errors thrown by flow sampling and coefficient evaluation.
struct SupersonicError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SizeMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Errors thrown by assembly.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateFaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EtaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Errors thrown by field evaluation.
struct SingularPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NearSurfaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InteriorPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Errors thrown by solvers.
struct Breakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularPreconditioner : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace glauert
