// Copyright 2026 The pshqm Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

#include "pshqm/errors.hpp"

namespace pshqm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default relative tolerance for residual checks. Overridable through the
/// PSH_TOL environment variable (decimal text, read once at first use).
inline double default_tolerance() {
  static const double tol = [] {
    if (const char* s = std::getenv("PSH_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(s, &end);
      if (end != s && v > 0.0) return v;
    }
    return 1e-10;
  }();
  return tol;
}

/// Right/left eigenvector system of a diagonalizable matrix.
///
/// Columns of `right` are unit-norm right eigenvectors, columns of `left`
/// are left eigenvectors normalized so that left.adjoint() * right == I.
struct EigenSystem {
  Vector eigenvalues;
  Matrix right;
  Matrix left;
};

/// Conjugate transpose. Involution; (A*B).adjoint() == adjoint(B)*adjoint(A)
/// exactly at the floating-point level.
inline Matrix adjoint(const Matrix& a) { return a.adjoint(); }

inline void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(std::string(who) + ": matrix is " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected square");
}

/// 2-norm condition number via SVD. Returns +inf for singular input.
inline double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

/// Dense complex eigendecomposition with a biorthonormal left system.
///
/// Eigenvalues are sorted by (re, im) ascending so the output is
/// reproducible. Left vectors are the rows of the inverted right-vector
/// matrix, conjugated, which makes left.adjoint()*right the identity up to
/// inversion roundoff. Throws NotDiagonalizable when the right-eigenvector
/// matrix has condition number above `cond_limit`.
inline EigenSystem eig(const Matrix& m, double cond_limit = 1e8) {
  require_square(m, "eig");
  Eigen::ComplexEigenSolver<Matrix> solver(m, true);
  if (solver.info() != Eigen::Success)
    throw NonConvergence("eig: complex eigensolver failed to converge");

  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const Vector& vals = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    if (vals(i).real() != vals(j).real()) return vals(i).real() < vals(j).real();
    return vals(i).imag() < vals(j).imag();
  });

  EigenSystem sys;
  sys.eigenvalues.resize(n);
  sys.right.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sys.eigenvalues(i) = vals(order[static_cast<std::size_t>(i)]);
    sys.right.col(i) = solver.eigenvectors().col(order[static_cast<std::size_t>(i)]).normalized();
  }

  const double cond = condition_number(sys.right);
  if (!(cond < cond_limit))
    throw NotDiagonalizable("eig: eigenvector matrix condition number " +
                            std::to_string(cond) + " exceeds limit " +
                            std::to_string(cond_limit));

  sys.left = sys.right.inverse().adjoint();
  return sys;
}

/// Renormalizes the left system so that left.adjoint()*right == I.
///
/// Works through the full Gram matrix, which handles degenerate eigenvalue
/// clusters in one solve. The spans of both systems are unchanged.
inline EigenSystem biorthonormalize(const EigenSystem& sys) {
  if (sys.right.rows() != sys.right.cols() || sys.left.rows() != sys.left.cols() ||
      sys.left.rows() != sys.right.rows())
    throw DimensionMismatch("biorthonormalize: inconsistent system shapes");

  const Matrix gram = sys.left.adjoint() * sys.right;
  Eigen::FullPivLU<Matrix> lu(gram);
  if (!lu.isInvertible())
    throw DegenerateSpectrum("biorthonormalize: Gram matrix of left/right vectors is singular");

  EigenSystem out;
  out.eigenvalues = sys.eigenvalues;
  out.right = sys.right;
  out.left = sys.left * lu.inverse().adjoint();
  return out;
}

/// Hermitian positive-definite square root. Returns (S, S^{-1}) with
/// S Hermitian, S*S == P and S*S^{-1} == I to roundoff.
inline std::pair<Matrix, Matrix> herm_sqrt(const Matrix& p, double tol = default_tolerance()) {
  require_square(p, "herm_sqrt");
  if ((p - p.adjoint()).norm() > tol * (1.0 + p.norm()))
    throw NotHermitian("herm_sqrt: input deviates from Hermiticity beyond tolerance");

  Eigen::SelfAdjointEigenSolver<Matrix> es(p);
  if (es.info() != Eigen::Success)
    throw NonConvergence("herm_sqrt: self-adjoint eigensolver failed");
  const RealVector& lam = es.eigenvalues();
  if (lam(0) <= 0.0)
    throw NotPositiveDefinite("herm_sqrt: smallest eigenvalue " + std::to_string(lam(0)) +
                              " is not positive");

  const Matrix& u = es.eigenvectors();
  Matrix s = u * lam.cwiseSqrt().cast<Complex>().asDiagonal() * u.adjoint();
  Matrix sinv = u * lam.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();
  // exact Hermiticity of the returned factors
  s = 0.5 * (s + Matrix(s.adjoint()));
  sinv = 0.5 * (sinv + Matrix(sinv.adjoint()));
  return {std::move(s), std::move(sinv)};
}

namespace detail {

/// Scaling-and-squaring Taylor evaluation of exp(a).
inline Matrix expm_series(Matrix a) {
  const Eigen::Index n = a.rows();
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  squarings = std::clamp(squarings, 0, 60);
  a /= std::pow(2.0, squarings);

  Matrix term = Matrix::Identity(n, n);
  Matrix sum = Matrix::Identity(n, n);
  bool converged = false;
  for (int k = 1; k <= 60; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
    if (term.norm() <= 1e-18 * sum.norm()) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NonConvergence("expm_scaled: Taylor series did not converge");
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace detail

/// exp(c*M). Uses the eigendecomposition when M is numerically
/// diagonalizable and falls back to scaling-and-squaring otherwise.
inline Matrix expm_scaled(const Matrix& m, Complex c, double cond_limit = 1e8) {
  require_square(m, "expm_scaled");
  const Eigen::Index n = m.rows();
  if (c == Complex(0.0, 0.0)) return Matrix::Identity(n, n);
  try {
    const EigenSystem sys = eig(m, cond_limit);
    Vector phases(n);
    for (Eigen::Index i = 0; i < n; ++i) phases(i) = std::exp(c * sys.eigenvalues(i));
    return sys.right * phases.asDiagonal() * sys.left.adjoint();
  } catch (const NotDiagonalizable&) {
    return detail::expm_series(c * m);
  } catch (const NonConvergence&) {
    return detail::expm_series(c * m);
  }
}

}  // namespace pshqm
