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
 * @file quantum.hpp
 * @brief Density matrices and quantum channels.
 *
 * Channels are stored as Kraus sets {K_i} acting as X -> sum_i K_i X K_i*.
 * The Choi matrix uses the input-major convention
 *   C = sum_{ij} |i><j| (x) Phi(|i><j|),
 * so that C[(i * dim_out + a), (j * dim_out + b)] = Phi(|i><j|)(a, b).
 */

#ifndef QSUFF_QUANTUM_HPP_
#define QSUFF_QUANTUM_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qsuff/linalg.hpp"
#include "qsuff/random.hpp"

namespace qsuff {

/// Positive semidefinite, unit-trace matrix. Validated on construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m, const Tolerances& tol = {}) : tol_(tol) {
    detail::require_square(m, "DensityMatrix");
    detail::require_finite(m, "DensityMatrix");
    if (!is_hermitian(m, tol.herm)) throw ValidationError("DensityMatrix: not Hermitian");
    matrix_ = 0.5 * (m + m.adjoint());
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > tol.num) {
      throw ValidationError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
    }
    try {
      (void)psd_eig(matrix_, tol);
    } catch (const DomainError& e) {
      throw ValidationError(std::string("DensityMatrix: ") + e.what());
    }
  }

  /// Divides a positive semidefinite matrix by its trace.
  static DensityMatrix normalized(const ComplexMatrix& m, const Tolerances& tol = {}) {
    const double tr = m.trace().real();
    if (!(tr > 0.0)) throw DegenerateInputError("DensityMatrix::normalized: trace is not positive");
    return DensityMatrix(m / tr, tol);
  }

  static DensityMatrix maximally_mixed(Index dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }
  const Tolerances& tolerances() const { return tol_; }

  double purity() const { return (matrix_ * matrix_).trace().real(); }

 private:
  ComplexMatrix matrix_;
  Tolerances tol_;
};

struct ChannelValidation {
  double trace_preservation_residual = 0.0;  // ||sum K*K - I||_F
  double choi_min_eigenvalue = 0.0;          // relative to the largest
  bool ok = false;
};

class QuantumChannel {
 public:
  QuantumChannel(Index dim_in, Index dim_out, std::vector<ComplexMatrix> kraus,
                 const Tolerances& tol = {})
      : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), tol_(tol),
        choi_(std::make_shared<ChoiCache>()) {
    if (dim_in <= 0 || dim_out <= 0) throw StructuralError("QuantumChannel: dimensions must be positive");
    if (kraus_.empty()) throw StructuralError("QuantumChannel: empty Kraus set");
    for (const auto& k : kraus_) {
      if (k.rows() != dim_out || k.cols() != dim_in) {
        throw StructuralError("QuantumChannel: Kraus operator of shape " + detail::shape_of(k) +
                              ", expected " + std::to_string(dim_out) + "x" + std::to_string(dim_in));
      }
      detail::require_finite(k, "QuantumChannel");
    }
    if (trace_preservation_residual() > tol_.num * std::sqrt(static_cast<double>(dim_in_))) {
      throw ValidationError("QuantumChannel: Kraus set is not trace preserving (residual " +
                            std::to_string(trace_preservation_residual()) + ")");
    }
  }

  /// Builds a Kraus set from the eigen-decomposition of a Choi matrix.
  static QuantumChannel from_choi(const ComplexMatrix& choi, Index dim_in, Index dim_out,
                                  const Tolerances& tol = {}) {
    if (choi.rows() != dim_in * dim_out || choi.cols() != dim_in * dim_out) {
      throw StructuralError("QuantumChannel::from_choi: Choi matrix has shape " + detail::shape_of(choi));
    }
    SpectralDecomposition eig;
    try {
      eig = psd_eig(choi, tol);
    } catch (const DomainError& e) {
      throw ValidationError(std::string("QuantumChannel::from_choi: not completely positive: ") + e.what());
    }
    const double cutoff = support_cutoff(eig, tol.cutoff);
    std::vector<ComplexMatrix> kraus;
    for (Index k = 0; k < eig.dim(); ++k) {
      if (eig.eigenvalues(k) <= cutoff) continue;
      ComplexMatrix op(dim_out, dim_in);
      const double scale = std::sqrt(eig.eigenvalues(k));
      for (Index i = 0; i < dim_in; ++i) {
        for (Index a = 0; a < dim_out; ++a) op(a, i) = scale * eig.eigenvectors(i * dim_out + a, k);
      }
      kraus.push_back(std::move(op));
    }
    if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(dim_out, dim_in));
    return QuantumChannel(dim_in, dim_out, std::move(kraus), tol);
  }

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const Tolerances& tolerances() const { return tol_; }

  /// Choi matrix, computed on first use and shared between copies.
  const ComplexMatrix& choi() const {
    std::call_once(choi_->once, [this] {
      ComplexMatrix c = ComplexMatrix::Zero(dim_in_ * dim_out_, dim_in_ * dim_out_);
      for (const auto& k : kraus_) {
        for (Index i = 0; i < dim_in_; ++i) {
          for (Index j = 0; j < dim_in_; ++j) {
            c.block(i * dim_out_, j * dim_out_, dim_out_, dim_out_).noalias() +=
                k.col(i) * k.col(j).adjoint();
          }
        }
      }
      choi_->matrix = std::move(c);
    });
    return choi_->matrix;
  }

  double trace_preservation_residual() const {
    ComplexMatrix acc = -ComplexMatrix::Identity(dim_in_, dim_in_);
    for (const auto& k : kraus_) acc.noalias() += k.adjoint() * k;
    return acc.norm();
  }

  ChannelValidation validate() const {
    ChannelValidation v;
    v.trace_preservation_residual = trace_preservation_residual();
    const ComplexMatrix& c = choi();
    const SpectralDecomposition eig = hermitian_eig(c, tol_.herm);
    const double top = std::max(eig.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
    v.choi_min_eigenvalue = eig.eigenvalues(eig.dim() - 1) / top;
    v.ok = v.trace_preservation_residual <= tol_.num * std::sqrt(static_cast<double>(dim_in_)) &&
           v.choi_min_eigenvalue >= -tol_.psd;
    return v;
  }

  ComplexMatrix operator()(const ComplexMatrix& x) const {
    if (x.rows() != dim_in_ || x.cols() != dim_in_) {
      throw StructuralError("apply: input of shape " + detail::shape_of(x) + ", channel expects " +
                            std::to_string(dim_in_) + "x" + std::to_string(dim_in_));
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
    for (const auto& k : kraus_) out.noalias() += k * x * k.adjoint();
    return out;
  }

  /// Hilbert-Schmidt adjoint: X -> sum_i K_i* X K_i.
  ComplexMatrix adjoint_apply(const ComplexMatrix& x) const {
    if (x.rows() != dim_out_ || x.cols() != dim_out_) {
      throw StructuralError("adjoint_apply: input of shape " + detail::shape_of(x) +
                            ", channel output is " + std::to_string(dim_out_) + "x" +
                            std::to_string(dim_out_));
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_in_, dim_in_);
    for (const auto& k : kraus_) out.noalias() += k.adjoint() * x * k;
    return out;
  }

  /// Equivalent channel with at most dim_in * dim_out Kraus operators.
  QuantumChannel minimal() const {
    if (static_cast<Index>(kraus_.size()) <= dim_in_ * dim_out_) return *this;
    return from_choi(choi(), dim_in_, dim_out_, tol_);
  }

 private:
  struct ChoiCache {
    std::once_flag once;
    ComplexMatrix matrix;
  };

  Index dim_in_;
  Index dim_out_;
  std::vector<ComplexMatrix> kraus_;
  Tolerances tol_;
  std::shared_ptr<ChoiCache> choi_;
};

inline ComplexMatrix apply(const QuantumChannel& phi, const ComplexMatrix& x) { return phi(x); }

inline ComplexMatrix adjoint_apply(const QuantumChannel& phi, const ComplexMatrix& x) {
  return phi.adjoint_apply(x);
}

/// Image of a state, re-validated as a state.
inline DensityMatrix apply(const QuantumChannel& phi, const DensityMatrix& rho) {
  return DensityMatrix(phi(rho.matrix()), rho.tolerances());
}

/// second o first. Kraus products with negligible norm are dropped and large
/// sets are reduced through the Choi matrix.
inline QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
  if (first.dim_out() != second.dim_in()) {
    throw StructuralError("compose: output dimension " + std::to_string(first.dim_out()) +
                          " does not match input dimension " + std::to_string(second.dim_in()));
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(first.kraus().size() * second.kraus().size());
  for (const auto& k1 : first.kraus()) {
    for (const auto& k2 : second.kraus()) {
      ComplexMatrix prod = k2 * k1;
      if (prod.norm() > 1e-14) kraus.push_back(std::move(prod));
    }
  }
  if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(second.dim_out(), first.dim_in()));
  return QuantumChannel(first.dim_in(), second.dim_out(), std::move(kraus), first.tolerances()).minimal();
}

inline QuantumChannel identity_channel(Index dim) {
  return QuantumChannel(dim, dim, {ComplexMatrix::Identity(dim, dim)});
}

inline QuantumChannel unitary_channel(const ComplexMatrix& u) {
  detail::require_square(u, "unitary_channel");
  return QuantumChannel(u.cols(), u.rows(), {u});
}

/// Complete dephasing in the computational basis: Kraus |k><k|.
inline QuantumChannel dephasing_channel(Index dim) {
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < dim; ++k) {
    ComplexMatrix op = ComplexMatrix::Zero(dim, dim);
    op(k, k) = 1.0;
    kraus.push_back(std::move(op));
  }
  return QuantumChannel(dim, dim, std::move(kraus));
}

enum class Subsystem { Left, Right };

/// Kronecker product; the left factor is the major index.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Traces out `traced` from an operator on C^{dim_left} (x) C^{dim_right}.
inline ComplexMatrix partial_trace(const ComplexMatrix& x, Index dim_left, Index dim_right,
                                   Subsystem traced) {
  if (x.rows() != dim_left * dim_right || x.cols() != dim_left * dim_right) {
    throw StructuralError("partial_trace: operator of shape " + detail::shape_of(x) +
                          " on a " + std::to_string(dim_left) + "x" + std::to_string(dim_right) +
                          " product space");
  }
  if (traced == Subsystem::Right) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_left, dim_left);
    for (Index i = 0; i < dim_left; ++i) {
      for (Index j = 0; j < dim_left; ++j) {
        out(i, j) = x.block(i * dim_right, j * dim_right, dim_right, dim_right).trace();
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_right, dim_right);
  for (Index i = 0; i < dim_left; ++i) out += x.block(i * dim_right, i * dim_right, dim_right, dim_right);
  return out;
}

/// Channel C^{dL} (x) C^{dR} -> the remaining factor.
inline QuantumChannel partial_trace_channel(Index dim_left, Index dim_right, Subsystem traced) {
  std::vector<ComplexMatrix> kraus;
  if (traced == Subsystem::Right) {
    for (Index r = 0; r < dim_right; ++r) {
      ComplexMatrix bra = ComplexMatrix::Zero(1, dim_right);
      bra(0, r) = 1.0;
      kraus.push_back(tensor(ComplexMatrix::Identity(dim_left, dim_left), bra));
    }
    return QuantumChannel(dim_left * dim_right, dim_left, std::move(kraus));
  }
  for (Index l = 0; l < dim_left; ++l) {
    ComplexMatrix bra = ComplexMatrix::Zero(1, dim_left);
    bra(0, l) = 1.0;
    kraus.push_back(tensor(bra, ComplexMatrix::Identity(dim_right, dim_right)));
  }
  return QuantumChannel(dim_left * dim_right, dim_right, std::move(kraus));
}

/// X -> X (x) omega on C^{dim_left}.
inline QuantumChannel append_state_channel(Index dim_left, const DensityMatrix& omega) {
  const SpectralDecomposition eig = psd_eig(omega.matrix(), omega.tolerances());
  const double cutoff = support_cutoff(eig, omega.tolerances().cutoff);
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < eig.dim(); ++k) {
    if (eig.eigenvalues(k) <= cutoff) continue;
    const ComplexMatrix ket = std::sqrt(eig.eigenvalues(k)) * eig.eigenvectors.col(k);
    kraus.push_back(tensor(ComplexMatrix::Identity(dim_left, dim_left), ket));
  }
  return QuantumChannel(dim_left, dim_left * omega.dim(), std::move(kraus));
}

/// Stinespring construction: a Haar isometry V : C^{dim_in} -> C^{dim_out} (x) C^{env_dim}
/// followed by the partial trace over the environment. Kraus operator e has
/// entries K_e(a, i) = V(a * env_dim + e, i).
inline QuantumChannel random_channel(Index dim_in, Index dim_out, Index env_dim, std::uint64_t seed) {
  if (dim_in <= 0 || dim_out <= 0) throw StructuralError("random_channel: dimensions must be positive");
  if (env_dim < 1) throw StructuralError("random_channel: env_dim must be >= 1");
  if (dim_out * env_dim < dim_in) {
    throw StructuralError("random_channel: dim_out * env_dim < dim_in, no isometry exists");
  }
  Rng rng(seed);
  const ComplexMatrix v = haar_isometry(dim_out * env_dim, dim_in, rng);
  std::vector<ComplexMatrix> kraus;
  for (Index e = 0; e < env_dim; ++e) {
    ComplexMatrix k(dim_out, dim_in);
    for (Index a = 0; a < dim_out; ++a) k.row(a) = v.row(a * env_dim + e);
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(dim_in, dim_out, std::move(kraus));
}

/// G G* / Tr(G G*) with G a complex Gaussian dim x rank matrix.
inline DensityMatrix random_state(Index dim, Index rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw DomainError("random_state: rank must lie in [1, dim]");
  }
  Rng rng(seed);
  const ComplexMatrix g = complex_gaussian(dim, rank, rng);
  return DensityMatrix::normalized(g * g.adjoint());
}

/// Tr[(I - P_sigma) rho] <= tol.
inline bool support_contained(const DensityMatrix& rho, const DensityMatrix& sigma, double tol = 1e-9) {
  if (rho.dim() != sigma.dim()) throw StructuralError("support_contained: dimension mismatch");
  const SupportProjection p = support_projection(sigma.matrix(), sigma.tolerances());
  const double leak = (rho.matrix() - p.projector * rho.matrix()).trace().real();
  return leak <= tol;
}

/// ||C_a - C_b||_1 on Choi matrices.
inline double choi_distance(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw StructuralError("choi_distance: dimension mismatch");
  }
  return trace_norm(a.choi() - b.choi());
}

}  // namespace qsuff

#endif  // QSUFF_QUANTUM_HPP_
