// Copyright 2026 The pshqm Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <utility>

#include "pshqm/linalg.hpp"

namespace pshqm {

/// Positive-definite Hermitian metric defining the physical inner product
/// <<psi, phi>> = <psi | eta phi>.
///
/// The Hermitian square root and its inverse are computed once at
/// construction and shared; copies are cheap and the value is immutable,
/// so instances can be shared freely across threads.
class MetricOperator {
 public:
  explicit MetricOperator(Matrix eta, double tol = default_tolerance())
      : data_(std::make_shared<const Data>(make_data(std::move(eta), tol))) {}

  static MetricOperator identity(Eigen::Index dim) {
    return MetricOperator(Matrix::Identity(dim, dim));
  }

  const Matrix& eta() const { return data_->eta; }
  const Matrix& sqrt() const { return data_->sqrt; }
  const Matrix& inv_sqrt() const { return data_->inv_sqrt; }
  const Matrix& inv() const { return data_->inv; }
  Eigen::Index dim() const { return data_->eta.rows(); }

  bool is_identity(double tol = default_tolerance()) const {
    return (data_->eta - Matrix::Identity(dim(), dim())).norm() < tol * std::sqrt(double(dim()));
  }

  /// True when two metrics describe the same physical inner product.
  bool same_as(const MetricOperator& other, double tol = default_tolerance()) const {
    if (data_ == other.data_) return true;
    if (dim() != other.dim()) return false;
    return (eta() - other.eta()).norm() < tol * (1.0 + eta().norm());
  }

 private:
  struct Data {
    Matrix eta;
    Matrix sqrt;
    Matrix inv_sqrt;
    Matrix inv;
  };

  static Data make_data(Matrix eta, double tol) {
    require_square(eta, "MetricOperator");
    eta = 0.5 * (eta + Matrix(eta.adjoint()));  // herm_sqrt validates the deviation first
    auto [s, sinv] = herm_sqrt(eta, tol);
    Matrix inv = sinv * sinv;
    inv = 0.5 * (inv + Matrix(inv.adjoint()));
    return Data{std::move(eta), std::move(s), std::move(sinv), std::move(inv)};
  }

  std::shared_ptr<const Data> data_;
};

/// Diagonalizable Hamiltonian with a verified real spectrum. The
/// eigendecomposition is computed once and cached.
class Hamiltonian {
 public:
  explicit Hamiltonian(Matrix m, double spectrum_real_tol = 1e-9, double cond_limit = 1e8)
      : matrix_(std::move(m)), spectrum_real_tol_(spectrum_real_tol) {
    require_square(matrix_, "Hamiltonian");
    eigensystem_ = eig(matrix_, cond_limit);
    for (Eigen::Index i = 0; i < eigensystem_.eigenvalues.size(); ++i) {
      const Complex e = eigensystem_.eigenvalues(i);
      if (std::abs(e.imag()) >= spectrum_real_tol_ * (1.0 + std::abs(e.real())))
        throw ComplexSpectrum("Hamiltonian: complex eigenvalue (" + std::to_string(e.real()) +
                              ", " + std::to_string(e.imag()) + "i)");
    }
  }

  const Matrix& matrix() const { return matrix_; }
  const EigenSystem& eigensystem() const { return eigensystem_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  double spectrum_real_tol() const { return spectrum_real_tol_; }

  /// Real parts of the (sorted) eigenvalues.
  RealVector real_eigenvalues() const { return eigensystem_.eigenvalues.real(); }

  /// Largest eigenvalue separation max E - min E; eigenvalues are sorted.
  double spectral_diameter() const {
    const RealVector e = real_eigenvalues();
    return e(e.size() - 1) - e(0);
  }

  /// Smallest gap between adjacent (sorted) eigenvalues.
  double min_gap() const {
    const RealVector e = real_eigenvalues();
    double g = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i + 1 < e.size(); ++i) g = std::min(g, e(i + 1) - e(i));
    return g;
  }

 private:
  Matrix matrix_;
  EigenSystem eigensystem_;
  double spectrum_real_tol_;
};

/// Frobenius norm of H^dag eta - eta H; zero iff H is eta-pseudo-Hermitian.
inline double pseudo_hermiticity_residual(const Matrix& h, const MetricOperator& eta) {
  if (h.rows() != eta.dim() || h.cols() != eta.dim())
    throw DimensionMismatch("pseudo_hermiticity_residual: operator/metric dimensions differ");
  return (h.adjoint() * eta.eta() - eta.eta() * h).norm();
}

/// Canonical metric operator of a Hamiltonian with real spectrum: the sum
/// of outer products of the biorthonormal left eigenvectors, with the right
/// eigenvectors fixed to unit norm. Positive-definite by construction and
/// satisfying H^dag eta = eta H.
inline MetricOperator build_metric_operator(const Hamiltonian& h, double tol = default_tolerance()) {
  const Matrix& left = h.eigensystem().left;
  Matrix eta = left * left.adjoint();
  eta = 0.5 * (eta + Matrix(eta.adjoint()));
  MetricOperator metric(std::move(eta), tol);
  return metric;
}

/// Physical inner product <psi | eta phi>. Conjugate-linear in the first
/// argument, like the L2 inner product it generalizes.
inline Complex physical_inner(const Vector& psi, const Vector& phi, const MetricOperator& eta) {
  if (psi.size() != eta.dim() || phi.size() != eta.dim())
    throw DimensionMismatch("physical_inner: vector/metric dimensions differ");
  return psi.dot(eta.eta() * phi);
}

/// Physical norm sqrt(<<psi, psi>>).
inline double physical_norm(const Vector& psi, const MetricOperator& eta) {
  return std::sqrt(std::max(0.0, physical_inner(psi, psi, eta).real()));
}

/// Pseudo-adjoint eta^{-1} A^dag eta: the adjoint with respect to the
/// physical inner product. Involution; (AB)# = B# A#.
inline Matrix pseudo_adjoint(const Matrix& a, const MetricOperator& eta) {
  if (a.rows() != eta.dim() || a.cols() != eta.dim())
    throw DimensionMismatch("pseudo_adjoint: operator/metric dimensions differ");
  return eta.inv() * a.adjoint() * eta.eta();
}

/// Physical observables satisfy A# = A; their expectation values are real.
inline bool is_observable(const Matrix& a, const MetricOperator& eta,
                          double tol = default_tolerance()) {
  require_square(a, "is_observable");
  return (pseudo_adjoint(a, eta) - a).norm() < tol * (1.0 + a.norm());
}

/// Equivalent Hermitian Hamiltonian eta^{1/2} H eta^{-1/2}. Isospectral with
/// H. Throws MetricMismatch when H is not pseudo-Hermitian for this metric.
inline Matrix hermitian_counterpart(const Hamiltonian& h, const MetricOperator& eta,
                                    double tol = default_tolerance()) {
  const double residual = pseudo_hermiticity_residual(h.matrix(), eta);
  if (residual >= tol * (1.0 + h.matrix().norm()) * (1.0 + eta.eta().norm()))
    throw MetricMismatch("hermitian_counterpart: pseudo-Hermiticity residual " +
                         std::to_string(residual) + " exceeds tolerance");
  return eta.sqrt() * h.matrix() * eta.inv_sqrt();
}

/// The unitary correspondence psi -> eta^{1/2} psi between the physical
/// Hilbert space and the conventional one; preserves inner products.
inline Vector map_state(const Vector& psi, const MetricOperator& eta) {
  if (psi.size() != eta.dim())
    throw DimensionMismatch("map_state: vector/metric dimensions differ");
  return eta.sqrt() * psi;
}

/// Expectation value <<psi, A psi>> / <<psi, psi>>.
inline Complex expectation(const Matrix& a, const Vector& psi, const MetricOperator& eta) {
  require_square(a, "expectation");
  if (psi.norm() == 0.0) throw ZeroState("expectation: zero state vector");
  const Complex norm2 = physical_inner(psi, psi, eta);
  return physical_inner(psi, Vector(a * psi), eta) / norm2;
}

}  // namespace pshqm
