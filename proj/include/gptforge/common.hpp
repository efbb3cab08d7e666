// Copyright contributors to the gptforge project
// SPDX-License-Identifier: Apache-2.0

#ifndef GPTFORGE_COMMON_HPP_
#define GPTFORGE_COMMON_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace gptforge {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

inline constexpr double kDefaultTol = 1e-9;

/// Default numeric tolerance. The environment variable GPTFORGE_TOL, if set
/// to a positive value, overrides the built-in 1e-9.
inline double default_tol() {
  static const double tol = [] {
    if (const char* env = std::getenv("GPTFORGE_TOL")) {
      const double v = std::atof(env);
      if (v > 0) return v;
    }
    return kDefaultTol;
  }();
  return tol;
}

//=============================================================================
// Errors
//=============================================================================

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Vector/matrix shapes do not line up.
struct DimensionError : Error {
  using Error::Error;
};

/// Processes wired together on incompatible systems, or a composite system
/// that was never registered.
struct SystemMismatchError : Error {
  using Error::Error;
};

/// A matrix that the calling operation requires to be invertible is singular
/// or too ill-conditioned.
struct SingularityError : Error {
  using Error::Error;
};

/// A frame or certificate fails one of its normalization identities.
struct NormalizationError : Error {
  using Error::Error;
};

/// Input tables or files are structurally inconsistent.
struct DataError : Error {
  using Error::Error;
};

/// Request outside the supported desk-scale envelope.
struct UnsupportedError : Error {
  using Error::Error;
};

/// The LP pivoter hit its iteration cap without converging.
struct LpStallError : Error {
  using Error::Error;
};

//=============================================================================
// Deterministic RNG
//=============================================================================

/// splitmix64; identical streams on every platform for a given seed, unlike
/// the distributions in <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t state_;
};

//=============================================================================
// Small helpers
//=============================================================================

/// Kronecker product with row-major index convention:
/// (i1, i2) -> i1 * rows(b) + i2.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline RowVector kron(const RowVector& a, const RowVector& b) {
  RowVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace gptforge

#endif  // GPTFORGE_COMMON_HPP_
