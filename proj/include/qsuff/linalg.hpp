// Copyright 2026 The qsuff Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file linalg.hpp
 * @brief Dense complex matrix primitives.
 *
 * Hermitian spectral decomposition, functional calculus restricted to the
 * support of a positive semidefinite matrix (zero eigenvalues are mapped to
 * zero for every exponent, negative ones included), Schatten norms and polar
 * decomposition. Everything here is a pure function of its arguments.
 */

#ifndef QSUFF_LINALG_HPP_
#define QSUFF_LINALG_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "qsuff/errors.hpp"

namespace qsuff {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Rule deciding which eigenvalues count as part of the support.
///
/// An eigenvalue belongs to the support when it exceeds
/// `abs_cutoff` if set, otherwise `rel_cutoff * lambda_max` where
/// `rel_cutoff` defaults to `1e3 * dim * epsilon`.
struct CutoffPolicy {
  std::optional<double> rel_cutoff;
  std::optional<double> abs_cutoff;

  static double default_rel_cutoff(Index dim) {
    return 1e3 * static_cast<double>(std::max<Index>(dim, 1)) *
           std::numeric_limits<double>::epsilon();
  }

  double resolve(double lambda_max, Index dim) const {
    if (abs_cutoff) return *abs_cutoff;
    const double rel = rel_cutoff ? *rel_cutoff : default_rel_cutoff(dim);
    return rel * std::max(lambda_max, 0.0);
  }
};

/// Numerical thresholds. All comparisons are relative to the input norm
/// unless noted otherwise.
struct Tolerances {
  double herm = 1e-10;
  double psd = 1e-10;
  double recon = 1e-10;
  double num = 1e-10;
  /// Relative leakage allowed outside a support before an operator is
  /// rejected as not belonging to it.
  double support = 1e-9;
  CutoffPolicy cutoff{};
};

struct SpectralDecomposition {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // orthonormal columns

  Index dim() const { return eigenvalues.size(); }

  ComplexMatrix reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  }
};

struct SupportProjection {
  ComplexMatrix projector;
  Index rank = 0;
  double cutoff = 0.0;
};

struct PolarDecomposition {
  ComplexMatrix unitary;  // partial isometry with initial space supp(modulus)
  ComplexMatrix modulus;  // (A* A)^{1/2}
};

namespace detail {

inline std::string shape_of(const ComplexMatrix& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols();
  return os.str();
}

inline void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw StructuralError(std::string(what) + ": expected a nonempty square matrix, got " +
                          shape_of(a));
  }
}

inline void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.allFinite()) throw StructuralError(std::string(what) + ": non-finite entries");
}

// Multiplies each column by a phase so that its first non-negligible entry is
// real and positive.
inline void normalize_column_phases(ComplexMatrix& v) {
  for (Index c = 0; c < v.cols(); ++c) {
    const double scale = v.col(c).norm();
    if (scale == 0.0) continue;
    for (Index r = 0; r < v.rows(); ++r) {
      const double mag = std::abs(v(r, c));
      if (mag > 1e-10 * scale) {
        v.col(c) *= std::conj(v(r, c)) / mag;
        break;
      }
    }
  }
}

// Stable (sum s^p)^(1/p) for nonnegative s.
inline double lp_of_values(const RealVector& s, double p) {
  if (s.size() == 0) return 0.0;
  const double top = s.maxCoeff();
  if (std::isinf(p)) return top;
  if (top == 0.0) return 0.0;
  if (p == 1.0) return s.sum();
  double acc = 0.0;
  for (Index k = 0; k < s.size(); ++k) acc += std::pow(s(k) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

}  // namespace detail

inline bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * a.norm();
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order
/// and each eigenvector phase-normalized.
inline SpectralDecomposition hermitian_eig(const ComplexMatrix& a, double tol_herm = 1e-10) {
  detail::require_square(a, "hermitian_eig");
  detail::require_finite(a, "hermitian_eig");
  if (!is_hermitian(a, tol_herm)) {
    throw StructuralError("hermitian_eig: input is not Hermitian within tolerance");
  }
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw StructuralError("hermitian_eig: eigen solver failed");
  }
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  detail::normalize_column_phases(out.eigenvectors);
  return out;
}

/// Eigen-decomposition of a positive semidefinite matrix; rejects eigenvalues
/// below `-tol.psd * |lambda|_max`.
inline SpectralDecomposition psd_eig(const ComplexMatrix& a, const Tolerances& tol = {}) {
  SpectralDecomposition eig = hermitian_eig(a, tol.herm);
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  const double lowest = eig.eigenvalues(eig.dim() - 1);
  if (lowest < -tol.psd * scale) {
    std::ostringstream os;
    os << "matrix is not positive semidefinite (eigenvalue " << lowest << ")";
    throw DomainError(os.str());
  }
  return eig;
}

inline double support_cutoff(const SpectralDecomposition& eig, const CutoffPolicy& policy) {
  const double top = eig.dim() > 0 ? eig.eigenvalues(0) : 0.0;
  return policy.resolve(top, eig.dim());
}

/// Applies `f` to every eigenvalue above `cutoff`; the rest map to zero.
template <class F>
ComplexMatrix spectral_apply(const SpectralDecomposition& eig, double cutoff, F&& f) {
  const Index n = eig.dim();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues(k);
    if (lambda <= cutoff) continue;
    const Complex value(f(lambda));
    out.noalias() += value * eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint();
  }
  return out;
}

inline ComplexMatrix matrix_power_on_support(const ComplexMatrix& a, Complex z,
                                             const Tolerances& tol = {}) {
  const SpectralDecomposition eig = psd_eig(a, tol);
  const double cutoff = support_cutoff(eig, tol.cutoff);
  return spectral_apply(eig, cutoff, [z](double lambda) { return std::exp(z * std::log(lambda)); });
}

inline ComplexMatrix matrix_power_on_support(const ComplexMatrix& a, double z,
                                             const Tolerances& tol = {}) {
  const SpectralDecomposition eig = psd_eig(a, tol);
  const double cutoff = support_cutoff(eig, tol.cutoff);
  return spectral_apply(eig, cutoff, [z](double lambda) { return std::pow(lambda, z); });
}

/// Natural logarithm on the support; zero on the kernel.
inline ComplexMatrix matrix_log_on_support(const ComplexMatrix& a, const Tolerances& tol = {}) {
  const SpectralDecomposition eig = psd_eig(a, tol);
  const double cutoff = support_cutoff(eig, tol.cutoff);
  return spectral_apply(eig, cutoff, [](double lambda) { return std::log(lambda); });
}

inline SupportProjection support_projection(const ComplexMatrix& a, const Tolerances& tol = {}) {
  const SpectralDecomposition eig = psd_eig(a, tol);
  SupportProjection out;
  out.cutoff = support_cutoff(eig, tol.cutoff);
  out.projector = spectral_apply(eig, out.cutoff, [](double) { return 1.0; });
  out.rank = (eig.eigenvalues.array() > out.cutoff).count();
  return out;
}

inline RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector();
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

/// Schatten p-norm for p in [1, inf]; p = inf is the operator norm.
inline double schatten_norm(const ComplexMatrix& a, double p) {
  if (!(p >= 1.0)) throw DomainError("schatten_norm: p must be >= 1");
  detail::require_finite(a, "schatten_norm");
  return detail::lp_of_values(singular_values(a), p);
}

inline double trace_norm(const ComplexMatrix& a) { return schatten_norm(a, 1.0); }
inline double operator_norm(const ComplexMatrix& a) { return schatten_norm(a, kInfinity); }

/// A = U |A| with U a partial isometry whose initial space is supp |A|.
inline PolarDecomposition polar(const ComplexMatrix& a, const CutoffPolicy& policy = {}) {
  detail::require_square(a, "polar");
  detail::require_finite(a, "polar");
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double cutoff = policy.resolve(s.size() ? s(0) : 0.0, a.rows());
  Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  const ComplexMatrix w = svd.matrixU().leftCols(rank);
  const ComplexMatrix v = svd.matrixV().leftCols(rank);
  PolarDecomposition out;
  out.unitary = w * v.adjoint();
  out.modulus = v * s.head(rank).cast<Complex>().asDiagonal() * v.adjoint();
  return out;
}

}  // namespace qsuff

#endif  // QSUFF_LINALG_HPP_
