// Copyright contributors to the gptforge project
// SPDX-License-Identifier: Apache-2.0
//
// Dense phase-1 simplex for the cone-decomposition feasibility problems:
//
//     find x >= 0 with A x = b,
//
// returning either a feasible point or a Farkas witness y with
// y^T A <= 0 and y^T b > 0. Bland's rule throughout, so the pivoter cannot
// cycle. An exact rational mode backs the float path for small instances.

#ifndef GPTFORGE_LP_HPP_
#define GPTFORGE_LP_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

#include "gptforge/common.hpp"

namespace gptforge {

using Rational = boost::multiprecision::cpp_rational;

struct LpResult {
  bool feasible = false;
  Vector x;       // feasible: x >= 0 with A x = b
  Vector farkas;  // infeasible: y with y^T A <= 0 and y^T b > 0
  long iterations = 0;
};

namespace detail {

template <class T>
struct LpScalarTraits;

template <>
struct LpScalarTraits<double> {
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
  static bool negative(double v, double tol) { return v < -tol; }
  static bool positive(double v, double tol) { return v > tol; }
};

template <>
struct LpScalarTraits<Rational> {
  static Rational from_double(double v) { return Rational(v); }  // exact binary-float value
  static double to_double(const Rational& v) { return static_cast<double>(v); }
  static bool negative(const Rational& v, double) { return v < 0; }
  static bool positive(const Rational& v, double) { return v > 0; }
};

// Phase-1 tableau simplex. Rows are scaled so the RHS is nonnegative, the
// initial basis is the artificial identity block, and the objective is the
// sum of artificials. Entering variable: lowest index with a negative
// reduced cost; leaving variable: lowest basic index among ratio ties
// (Bland).
template <class T>
LpResult solve_phase1(const Matrix& a_in, const Vector& b_in, double tol, long max_iter) {
  using Tr = LpScalarTraits<T>;
  const int m = static_cast<int>(a_in.rows());
  const int n = static_cast<int>(a_in.cols());

  std::vector<int> row_sign(m, 1);
  // tableau: m rows, n structural + m artificial columns + rhs
  std::vector<std::vector<T>> tab(m, std::vector<T>(n + m + 1, Tr::from_double(0.0)));
  for (int i = 0; i < m; ++i) {
    const double s = b_in(i) < 0 ? -1.0 : 1.0;
    row_sign[i] = b_in(i) < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) tab[i][j] = Tr::from_double(s * a_in(i, j));
    tab[i][n + i] = Tr::from_double(1.0);
    tab[i][n + m] = Tr::from_double(s * b_in(i));
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  // objective row z_j - c_j for min sum(artificials): cost row = -sum of rows
  // over structural columns, and objective value = -sum of rhs.
  std::vector<T> cost(n + m + 1, Tr::from_double(0.0));
  for (int j = 0; j <= n + m; ++j) {
    T acc = Tr::from_double(0.0);
    for (int i = 0; i < m; ++i) acc += tab[i][j];
    cost[j] = -acc;
  }

  long iter = 0;
  while (true) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (Tr::negative(cost[j], tol)) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    T best_num = Tr::from_double(0.0), best_den = Tr::from_double(1.0);
    for (int i = 0; i < m; ++i) {
      if (!Tr::positive(tab[i][enter], tol)) continue;
      const T& num = tab[i][n + m];
      const T& den = tab[i][enter];
      if (leave < 0) {
        leave = i;
        best_num = num;
        best_den = den;
        continue;
      }
      // compare num/den < best_num/best_den  (all denominators positive)
      const T lhs = num * best_den;
      const T rhs = best_num * den;
      if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) {
        leave = i;
        best_num = num;
        best_den = den;
      }
    }
    if (leave < 0) throw LpStallError("phase-1 column unbounded; input is inconsistent");

    // pivot on (leave, enter)
    const T piv = tab[leave][enter];
    for (int j = 0; j <= n + m; ++j) tab[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const T f = tab[i][enter];
      if (f == Tr::from_double(0.0)) continue;
      for (int j = 0; j <= n + m; ++j) tab[i][j] -= f * tab[leave][j];
    }
    {
      const T f = cost[enter];
      if (!(f == Tr::from_double(0.0)))
        for (int j = 0; j <= n + m; ++j) cost[j] -= f * tab[leave][j];
    }
    basis[leave] = enter;

    if (++iter > max_iter)
      throw LpStallError("phase-1 simplex exceeded " + std::to_string(max_iter) +
                         " pivots; retry with exact mode");
  }

  LpResult res;
  res.iterations = iter;
  // objective value = -cost[rhs]
  const T objective = -cost[n + m];
  if (!Tr::positive(objective, tol * std::max(1, m))) {
    res.feasible = true;
    res.x = Vector::Zero(n);
    for (int i = 0; i < m; ++i)
      if (basis[i] < n) res.x(basis[i]) = Tr::to_double(tab[i][n + m]);
    return res;
  }

  // Farkas witness from the phase-1 multipliers y = c_B^T B^{-1}; the columns
  // of B^{-1} sit under the artificial block of the tableau.
  res.feasible = false;
  res.farkas = Vector::Zero(m);
  for (int col = 0; col < m; ++col) {
    T acc = Tr::from_double(0.0);
    for (int i = 0; i < m; ++i)
      if (basis[i] >= n) acc += tab[i][n + col];
    res.farkas(col) = row_sign[col] * Tr::to_double(acc);
  }
  return res;
}

}  // namespace detail

/// Feasibility of {x >= 0 : A x = b} by dense phase-1 simplex with Bland's
/// rule. On infeasibility the result carries a Farkas witness.
inline LpResult solve_eq_nonneg(const Matrix& a, const Vector& b, double tol = kDefaultTol,
                                long max_iter = 200000) {
  if (a.rows() != b.size()) throw DimensionError("LP: rows(A) != size(b)");
  return detail::solve_phase1<double>(a, b, tol, max_iter);
}

/// Exact rational variant for small instances (<= 200 variables).
inline LpResult solve_eq_nonneg_exact(const Matrix& a, const Vector& b, long max_iter = 200000) {
  if (a.rows() != b.size()) throw DimensionError("LP: rows(A) != size(b)");
  if (a.cols() > 200)
    throw UnsupportedError("exact LP mode limited to 200 variables, got " +
                           std::to_string(a.cols()));
  return detail::solve_phase1<Rational>(a, b, 0.0, max_iter);
}

//=============================================================================
// Equality-system row reduction with transform tracking
//=============================================================================

struct RowReduced {
  Matrix a;        // reduced independent rows
  Vector b;        // matching right-hand sides
  Matrix t;        // a = t * a_original, b = t * b_original
  bool inconsistent = false;
  Vector farkas;   // if inconsistent: y with y^T A = 0, y^T b > 0
};

/// Gaussian elimination with partial pivoting that keeps only independent
/// rows of [A|b] and records the combination matrix T mapping original rows
/// to reduced ones. Detects inconsistent systems (0 = nonzero) and returns
/// the combination as a Farkas witness.
inline RowReduced reduce_equalities(const Matrix& a_in, const Vector& b_in,
                                    double tol = kDefaultTol) {
  const int m = static_cast<int>(a_in.rows());
  const int n = static_cast<int>(a_in.cols());
  Matrix work(m, n + 1);
  work.leftCols(n) = a_in;
  work.col(n) = b_in;
  Matrix trans = Matrix::Identity(m, m);

  const double scale = std::max(1.0, max_abs(a_in));
  int rank = 0;
  std::vector<int> pivot_cols;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    double best = tol * scale;
    for (int r = rank; r < m; ++r) {
      if (std::abs(work(r, col)) > best) {
        best = std::abs(work(r, col));
        piv = r;
      }
    }
    if (piv < 0) continue;
    work.row(rank).swap(work.row(piv));
    trans.row(rank).swap(trans.row(piv));
    for (int r = 0; r < m; ++r) {
      if (r == rank) continue;
      const double f = work(r, col) / work(rank, col);
      if (f == 0.0) continue;
      work.row(r) -= f * work.row(rank);
      trans.row(r) -= f * trans.row(rank);
    }
    pivot_cols.push_back(col);
    ++rank;
  }

  RowReduced out;
  // any residual row with zero coefficients but nonzero rhs is a certificate
  for (int r = rank; r < m; ++r) {
    if (std::abs(work(r, n)) > tol * std::max(1.0, max_abs(Matrix(b_in)))) {
      out.inconsistent = true;
      Vector y = trans.row(r).transpose();
      if (work(r, n) < 0) y = -y;
      out.farkas = y;
      return out;
    }
  }
  out.a = work.topLeftCorner(rank, n);
  out.b = work.block(0, n, rank, 1);
  out.t = trans.topRows(rank);
  return out;
}

//=============================================================================
// Cone membership
//=============================================================================

/// Is x a nonnegative combination of the columns of rays?
inline bool in_cone(const Matrix& rays_cols, const Vector& x, double tol = kDefaultTol) {
  if (rays_cols.rows() != x.size()) throw DimensionError("in_cone: dimension mismatch");
  if (rays_cols.cols() == 0) return x.lpNorm<Eigen::Infinity>() <= tol;
  RowReduced red = reduce_equalities(rays_cols, x, tol);
  if (red.inconsistent) return false;
  LpResult lp = solve_eq_nonneg(red.a, red.b, tol);
  return lp.feasible;
}

}  // namespace gptforge

#endif  // GPTFORGE_LP_HPP_
