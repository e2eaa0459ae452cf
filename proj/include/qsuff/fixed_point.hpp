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
 * @file fixed_point.hpp
 * @brief Fixed points of a channel with a faithful invariant state and the
 *        induced block factorization.
 *
 * For a channel Omega on B(H) with Omega(sigma) = sigma, sigma invertible,
 * the fixed points of Omega* form a *-algebra
 *
 *   F = U* ( (+)_n B(H_n^L) (x) I_{H_n^R} ) U,
 *
 * the Cesaro means of (Omega*)^k converge to a conditional expectation onto F,
 * and U sigma U* = (+)_n A_n^L (x) sigma_n^R. Applied to Omega = Phi_sigma o Phi
 * this characterizes every rho for which Phi is sufficient with respect to
 * {rho, sigma}: exactly those with U rho U* = (+)_n B_n^L (x) sigma_n^R.
 *
 * Superoperators act on column-stacked vectorizations: vec(A X B) = (B^T (x) A) vec(X).
 */

#ifndef QSUFF_FIXED_POINT_HPP_
#define QSUFF_FIXED_POINT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "qsuff/linalg.hpp"
#include "qsuff/quantum.hpp"
#include "qsuff/random.hpp"
#include "qsuff/recovery.hpp"

namespace qsuff {

inline ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

inline ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw StructuralError("unvec: size mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

/// Matrix of a linear map B(C^{dim_in}) -> B(C^{dim_out}) on vectorized operators.
class SuperOperator {
 public:
  SuperOperator(Index dim_in, Index dim_out, ComplexMatrix matrix)
      : dim_in_(dim_in), dim_out_(dim_out), matrix_(std::move(matrix)) {
    if (matrix_.rows() != dim_out * dim_out || matrix_.cols() != dim_in * dim_in) {
      throw StructuralError("SuperOperator: matrix of shape " + detail::shape_of(matrix_));
    }
  }

  static SuperOperator identity(Index dim) {
    return SuperOperator(dim, dim, ComplexMatrix::Identity(dim * dim, dim * dim));
  }

  /// sum_i conj(K_i) (x) K_i.
  static SuperOperator of_channel(const QuantumChannel& phi) {
    ComplexMatrix s = ComplexMatrix::Zero(phi.dim_out() * phi.dim_out(), phi.dim_in() * phi.dim_in());
    for (const auto& k : phi.kraus()) s += tensor(k.conjugate(), k);
    return SuperOperator(phi.dim_in(), phi.dim_out(), std::move(s));
  }

  /// Superoperator of the Hilbert-Schmidt adjoint Phi*.
  static SuperOperator of_adjoint(const QuantumChannel& phi) { return of_channel(phi).adjoint(); }

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  ComplexMatrix apply(const ComplexMatrix& x) const {
    if (x.rows() != dim_in_ || x.cols() != dim_in_) throw StructuralError("SuperOperator::apply: dimension mismatch");
    return unvec(matrix_ * vec(x), dim_out_, dim_out_);
  }
  ComplexMatrix operator()(const ComplexMatrix& x) const { return apply(x); }

  SuperOperator adjoint() const { return SuperOperator(dim_out_, dim_in_, matrix_.adjoint()); }

  /// this o first.
  SuperOperator after(const SuperOperator& first) const {
    if (first.dim_out_ != dim_in_) throw StructuralError("SuperOperator::after: dimension mismatch");
    return SuperOperator(first.dim_in_, dim_out_, matrix_ * first.matrix_);
  }

  /// Choi matrix in the same convention as QuantumChannel::choi().
  ComplexMatrix choi() const {
    ComplexMatrix c(dim_in_ * dim_out_, dim_in_ * dim_out_);
    for (Index i = 0; i < dim_in_; ++i)
      for (Index j = 0; j < dim_in_; ++j)
        for (Index a = 0; a < dim_out_; ++a)
          for (Index b = 0; b < dim_out_; ++b)
            c(i * dim_out_ + a, j * dim_out_ + b) = matrix_(a + b * dim_out_, i + j * dim_in_);
    return c;
  }

 private:
  Index dim_in_;
  Index dim_out_;
  ComplexMatrix matrix_;
};

namespace detail {

// Hermitian/anti-Hermitian matrices as real vectors [Re vec(X); Im vec(X)]. The
// Euclidean product of two such vectors is Re Tr X* Y.
inline RealVector to_real(const ComplexMatrix& x) {
  RealVector out(2 * x.size());
  const ComplexVector v = vec(x);
  out.head(x.size()) = v.real();
  out.tail(x.size()) = v.imag();
  return out;
}

inline ComplexMatrix from_real(const RealVector& r, Index dim) {
  const Index n = dim * dim;
  ComplexVector v(n);
  for (Index k = 0; k < n; ++k) v(k) = Complex(r(k), r(n + k));
  return unvec(v, dim, dim);
}

inline ComplexMatrix null_space(const ComplexMatrix& m, double tol) {
  if (m.norm() <= tol) return ComplexMatrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double threshold = tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Index rank = 0;
  while (rank < s.size() && s(rank) > threshold) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

inline RealMatrix real_null_space(const RealMatrix& m, double tol) {
  if (m.norm() <= tol) return RealMatrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double threshold = tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Index rank = 0;
  while (rank < s.size() && s(rank) > threshold) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

// Groups descending eigenvalues into runs separated by gaps above
// rel_gap * max(spectral diameter, spectral radius). The radius term keeps a
// multiple of the identity in one cluster.
inline std::vector<std::vector<Index>> cluster_spectrum(const RealVector& eigenvalues, double rel_gap) {
  std::vector<std::vector<Index>> clusters;
  if (eigenvalues.size() == 0) return clusters;
  const double diameter = eigenvalues.maxCoeff() - eigenvalues.minCoeff();
  const double scale = std::max(diameter, eigenvalues.cwiseAbs().maxCoeff());
  clusters.push_back({0});
  for (Index k = 1; k < eigenvalues.size(); ++k) {
    if (eigenvalues(k - 1) - eigenvalues(k) > rel_gap * scale) {
      clusters.push_back({k});
    } else {
      clusters.back().push_back(k);
    }
  }
  return clusters;
}

inline ComplexMatrix columns(const ComplexMatrix& m, const std::vector<Index>& idx) {
  ComplexMatrix out(m.rows(), static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Index>(k)) = m.col(idx[k]);
  return out;
}

inline Index integer_sqrt(Index n) {
  auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r == n ? r : -1;
}

}  // namespace detail

/// Orthonormal basis (as matrices) of {X : S(X) = X}.
inline std::vector<ComplexMatrix> fixed_space(const SuperOperator& s, double tol = 1e-8) {
  if (s.dim_in() != s.dim_out()) throw StructuralError("fixed_space: superoperator is not square");
  const Index d = s.dim_in();
  const ComplexMatrix kernel =
      detail::null_space(s.matrix() - ComplexMatrix::Identity(d * d, d * d), tol);
  std::vector<ComplexMatrix> out;
  for (Index c = 0; c < kernel.cols(); ++c) out.push_back(unvec(kernel.col(c), d, d));
  return out;
}

/// Hilbert-Schmidt orthonormal Hermitian basis of a *-closed complex span.
inline std::vector<ComplexMatrix> hermitian_basis(const std::vector<ComplexMatrix>& span, double tol = 1e-10) {
  if (span.empty()) return {};
  const Index d = span.front().rows();
  RealMatrix r(2 * d * d, 2 * static_cast<Index>(span.size()));
  for (std::size_t k = 0; k < span.size(); ++k) {
    const ComplexMatrix& b = span[k];
    r.col(static_cast<Index>(2 * k)) = detail::to_real(0.5 * (b + b.adjoint()));
    r.col(static_cast<Index>(2 * k + 1)) = detail::to_real(Complex(0.0, -0.5) * (b - b.adjoint()));
  }
  Eigen::JacobiSVD<RealMatrix> svd(r, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  Index rank = 0;
  while (rank < s.size() && s(rank) > tol * std::max(1.0, s(0))) ++rank;
  rank = std::min<Index>(rank, static_cast<Index>(span.size()));
  std::vector<ComplexMatrix> out;
  for (Index c = 0; c < rank; ++c) {
    const ComplexMatrix h = detail::from_real(svd.matrixU().col(c), d);
    out.push_back(0.5 * (h + h.adjoint()));
  }
  return out;
}

/// Hermitian orthonormal basis of the fixed points of Omega*.
inline std::vector<ComplexMatrix> fixed_point_basis(const QuantumChannel& omega, double tol = 1e-8) {
  return hermitian_basis(fixed_space(SuperOperator::of_adjoint(omega), tol));
}

struct ConditionalExpectation {
  SuperOperator map;
  std::vector<ComplexMatrix> fixed_algebra_basis;
  int doublings = 0;

  ComplexMatrix operator()(const ComplexMatrix& x) const { return map.apply(x); }
  SuperOperator adjoint() const { return map.adjoint(); }
};

struct CesaroOptions {
  double tol_fix = 1e-10;  // relative to ||M||_F
  int max_doublings = 80;
  double invariance_tol = 1e-9;
  double null_tol = 1e-8;
};

namespace detail {

inline void require_invariant_faithful(const QuantumChannel& omega, const DensityMatrix& sigma, double tol,
                                       const char* what) {
  if (omega.dim_in() != omega.dim_out() || omega.dim_in() != sigma.dim()) {
    throw StructuralError(std::string(what) + ": channel and state dimensions do not match");
  }
  const double drift = trace_norm(omega(sigma.matrix()) - sigma.matrix());
  if (drift > tol) {
    throw PreconditionError(std::string(what) + ": sigma is not invariant (||Omega(sigma) - sigma||_1 = " +
                            std::to_string(drift) + ")");
  }
  if (support_projection(sigma.matrix(), sigma.tolerances()).rank != sigma.dim()) {
    throw PreconditionError(std::string(what) + ": sigma is not faithful");
  }
}

}  // namespace detail

/// E = lim_n (1/n) sum_{k<n} (Omega*)^k. The same limit is reached by powers of
/// the averaged map M = (id + Omega*)/2, whose only peripheral eigenvalue is 1;
/// M is squared until successive iterates differ by at most tol_fix.
inline ConditionalExpectation conditional_expectation(const QuantumChannel& omega, const DensityMatrix& sigma,
                                                      const CesaroOptions& opts = {}) {
  detail::require_invariant_faithful(omega, sigma, opts.invariance_tol, "conditional_expectation");
  const SuperOperator t = SuperOperator::of_adjoint(omega);
  const Index n = t.matrix().rows();
  ComplexMatrix mean = 0.5 * (ComplexMatrix::Identity(n, n) + t.matrix());
  for (int step = 1; step <= opts.max_doublings; ++step) {
    ComplexMatrix next = mean * mean;
    const double diff = (next - mean).norm();
    mean = std::move(next);
    if (diff <= opts.tol_fix * std::max(1.0, mean.norm())) {
      return {SuperOperator(t.dim_in(), t.dim_out(), mean), fixed_point_basis(omega, opts.null_tol), step};
    }
  }
  throw ConvergenceError("conditional_expectation: averages did not converge");
}

/// Largest principal angle (radians) between the spans of two operator lists.
inline double max_principal_angle(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b) {
  if (a.size() != b.size()) return kInfinity;
  if (a.empty()) return 0.0;
  auto orthonormal = [](const std::vector<ComplexMatrix>& list) {
    ComplexMatrix m(list.front().size(), static_cast<Index>(list.size()));
    for (std::size_t k = 0; k < list.size(); ++k) m.col(static_cast<Index>(k)) = vec(list[k]);
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    return ComplexMatrix(qr.householderQ() * ComplexMatrix::Identity(m.rows(), m.cols()));
  };
  const ComplexMatrix qa = orthonormal(a);
  const ComplexMatrix qb = orthonormal(b);
  // sin of the largest angle = ||(I - Qa Qa*) Qb||_op, accurate for small angles.
  const ComplexMatrix residual = qb - qa * (qa.adjoint() * qb);
  return std::asin(std::min(1.0, operator_norm(residual)));
}

struct Block {
  Index d_left = 1;
  Index d_right = 1;
  DensityMatrix sigma_right;
  ComplexMatrix a_left;
};

/// U : H -> (+)_n H_n^L (x) H_n^R with U sigma U* = (+)_n A_n^L (x) sigma_n^R.
struct BlockStructure {
  ComplexMatrix unitary;
  std::vector<Block> blocks;
  ComplexMatrix source;  // sigma

  Index dim() const { return unitary.rows(); }

  std::vector<Index> offsets() const {
    std::vector<Index> out;
    Index acc = 0;
    for (const auto& b : blocks) {
      out.push_back(acc);
      acc += b.d_left * b.d_right;
    }
    return out;
  }

  /// (+)_n left_n (x) sigma_n^R, in block coordinates.
  ComplexMatrix assemble(const std::vector<ComplexMatrix>& left) const {
    if (left.size() != blocks.size()) throw StructuralError("BlockStructure::assemble: wrong number of factors");
    ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
    const auto offs = offsets();
    for (std::size_t n = 0; n < blocks.size(); ++n) {
      const Index m = blocks[n].d_left * blocks[n].d_right;
      out.block(offs[n], offs[n], m, m) = tensor(left[n], blocks[n].sigma_right.matrix());
    }
    return out;
  }

  ComplexMatrix assemble_sigma() const {
    std::vector<ComplexMatrix> left;
    for (const auto& b : blocks) left.push_back(b.a_left);
    return assemble(left);
  }

  double reconstruction_error() const {
    return trace_norm(unitary * source * unitary.adjoint() - assemble_sigma());
  }
};

struct DecomposeOptions {
  std::uint64_t seed = 0x5eed;
  int max_retries = 5;
  double gap_rel_tol = 1e-8;
  double null_tol = 1e-8;
  double verify_tol = 1e-8;
  double invariance_tol = 1e-9;
};

namespace detail {

// Commutator constraints Y -> ([Y, R_1], ..., [Y, R_k]) as a matrix on vec(Y).
inline ComplexMatrix commutator_system(const std::vector<ComplexMatrix>& generators) {
  const Index d = generators.front().rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix sys(static_cast<Index>(generators.size()) * d * d, d * d);
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const ComplexMatrix& r = generators[k];
    sys.middleRows(static_cast<Index>(k) * d * d, d * d) = tensor(r.transpose(), id) - tensor(id, r);
  }
  return sys;
}

inline ComplexMatrix random_real_combination(const std::vector<ComplexMatrix>& basis, Rng& rng) {
  ComplexMatrix out = ComplexMatrix::Zero(basis.front().rows(), basis.front().cols());
  for (const auto& b : basis) out += rng.normal() * b;
  return out;
}

inline ComplexMatrix random_complex_combination(const std::vector<ComplexMatrix>& basis, Rng& rng) {
  ComplexMatrix out = ComplexMatrix::Zero(basis.front().rows(), basis.front().cols());
  for (const auto& b : basis) {
    const double re = rng.normal();
    const double im = rng.normal();
    out += Complex(re, im) * b;
  }
  return out;
}

// Phases alpha_a beta_j on the tensor basis columns (a * dR + j) so that
// columns (a, 0) and (0, j) have a real positive first significant entry.
inline void normalize_tensor_phases(ComplexMatrix& w, Index dl, Index dr) {
  auto phase_of = [&](Index col) {
    const double scale = w.col(col).norm();
    for (Index r = 0; r < w.rows(); ++r) {
      const double mag = std::abs(w(r, col));
      if (mag > 1e-10 * scale) return std::conj(w(r, col)) / mag;
    }
    return Complex(1.0, 0.0);
  };
  for (Index a = 0; a < dl; ++a) {
    const Complex alpha = phase_of(a * dr);
    for (Index j = 0; j < dr; ++j) w.col(a * dr + j) *= alpha;
  }
  for (Index j = 1; j < dr; ++j) {
    const Complex beta = phase_of(j);
    for (Index a = 0; a < dl; ++a) w.col(a * dr + j) *= beta;
  }
}

struct RawBlock {
  Index d_left;
  Index d_right;
  ComplexMatrix basis;  // dim x (dL*dR), tensor-ordered columns
  ComplexMatrix a_left;
  ComplexMatrix sigma_right;
};

// One decomposition attempt; returns false when a random element was degenerate.
inline bool try_decompose(const std::vector<ComplexMatrix>& algebra, const DensityMatrix& sigma,
                          const DecomposeOptions& opts, Rng& rng, std::vector<RawBlock>& out) {
  out.clear();
  const Index d = sigma.dim();
  const Index m = static_cast<Index>(algebra.size());

  // Two generic elements of the algebra generate it; C in the algebra is
  // central iff it commutes with both.
  const std::vector<ComplexMatrix> gens{random_real_combination(algebra, rng), random_real_combination(algebra, rng)};
  RealMatrix central_sys(2 * 2 * d * d, m);
  for (Index k = 0; k < m; ++k) {
    const ComplexMatrix& b = algebra[static_cast<std::size_t>(k)];
    central_sys.col(k) << to_real(b * gens[0] - gens[0] * b), to_real(b * gens[1] - gens[1] * b);
  }
  const RealMatrix coeffs = real_null_space(central_sys, opts.null_tol);
  std::vector<ComplexMatrix> center;
  for (Index c = 0; c < coeffs.cols(); ++c) {
    ComplexMatrix z = ComplexMatrix::Zero(d, d);
    for (Index k = 0; k < m; ++k) z += coeffs(k, c) * algebra[static_cast<std::size_t>(k)];
    center.push_back(z);
  }
  if (center.empty()) return false;

  // Minimal central projections from a random central element.
  const SpectralDecomposition central_eig = hermitian_eig(random_real_combination(center, rng), 1e-6);
  const auto clusters = cluster_spectrum(central_eig.eigenvalues, opts.gap_rel_tol);
  if (clusters.size() != center.size()) return false;

  for (const auto& cluster : clusters) {
    const ComplexMatrix w = columns(central_eig.eigenvectors, cluster);
    const Index mn = w.cols();

    std::vector<ComplexMatrix> compressed;
    for (const auto& b : algebra) compressed.push_back(w.adjoint() * b * w);
    ComplexMatrix span(mn * mn, m);
    for (Index k = 0; k < m; ++k) span.col(k) = vec(compressed[static_cast<std::size_t>(k)]);
    const Index algebra_rank = m - null_space(span, opts.null_tol).cols();
    const Index dl = integer_sqrt(algebra_rank);

    const std::vector<ComplexMatrix> local_gens{w.adjoint() * gens[0] * w, w.adjoint() * gens[1] * w};
    const ComplexMatrix commutant_vecs = null_space(commutator_system(local_gens), opts.null_tol);
    const Index dr = integer_sqrt(commutant_vecs.cols());
    if (dl <= 0 || dr <= 0 || dl * dr != mn) return false;

    std::vector<ComplexMatrix> commutant;
    for (Index c = 0; c < commutant_vecs.cols(); ++c) commutant.push_back(unvec(commutant_vecs.col(c), mn, mn));

    ComplexMatrix local_basis;  // mn x mn, tensor-ordered
    if (dr == 1) {
      local_basis = ComplexMatrix::Identity(mn, mn);
    } else {
      const ComplexMatrix g = random_complex_combination(commutant, rng);
      const SpectralDecomposition y_eig = hermitian_eig(0.5 * (g + g.adjoint()), 1e-6);
      const auto r_clusters = cluster_spectrum(y_eig.eigenvalues, opts.gap_rel_tol);
      if (static_cast<Index>(r_clusters.size()) != dr) return false;
      for (const auto& rc : r_clusters) {
        if (static_cast<Index>(rc.size()) != dl) return false;
      }
      // I (x) |r_j><r_1| components of a generic commutant element carry the
      // first eigenspace onto the others consistently with the L factor.
      const ComplexMatrix g2 = random_complex_combination(commutant, rng);
      const ComplexMatrix first = columns(y_eig.eigenvectors, r_clusters[0]);
      local_basis.resize(mn, mn);
      for (Index j = 0; j < dr; ++j) {
        ComplexMatrix image;
        if (j == 0) {
          image = first;
        } else {
          const ComplexMatrix ej = columns(y_eig.eigenvectors, r_clusters[static_cast<std::size_t>(j)]);
          const ComplexMatrix t = ej.adjoint() * g2 * first;
          const double c = t.norm() / std::sqrt(static_cast<double>(dl));
          if (c < 1e-6 * g2.norm()) return false;
          image = ej * t / c;
        }
        for (Index a = 0; a < dl; ++a) local_basis.col(a * dr + j) = image.col(a);
      }
    }

    ComplexMatrix basis = w * local_basis;
    ComplexMatrix s = basis.adjoint() * sigma.matrix() * basis;
    s = 0.5 * (s + s.adjoint());
    ComplexMatrix a_left = partial_trace(s, dl, dr, Subsystem::Right);
    ComplexMatrix sigma_right = partial_trace(s, dl, dr, Subsystem::Left);
    sigma_right /= sigma_right.trace().real();

    // Canonical bases: eigenvectors of A^L and sigma^R, descending.
    const SpectralDecomposition l_eig = hermitian_eig(a_left, 1e-6);
    const SpectralDecomposition r_eig = hermitian_eig(sigma_right, 1e-6);
    basis = basis * tensor(l_eig.eigenvectors, r_eig.eigenvectors);
    normalize_tensor_phases(basis, dl, dr);
    s = basis.adjoint() * sigma.matrix() * basis;
    s = 0.5 * (s + s.adjoint());
    a_left = partial_trace(s, dl, dr, Subsystem::Right);
    sigma_right = partial_trace(s, dl, dr, Subsystem::Left);
    sigma_right /= sigma_right.trace().real();
    out.push_back({dl, dr, basis, 0.5 * (a_left + a_left.adjoint()), 0.5 * (sigma_right + sigma_right.adjoint())});
  }
  return true;
}

}  // namespace detail

struct StructureCheck {
  double unitarity = 0.0;       // ||U U* - I||_F
  double reconstruction = 0.0;  // ||U sigma U* - (+) A (x) sigma_R||_1
  double algebra_form = 0.0;    // max_k distance of U B_k U* from (+) X (x) I
  double min_sigma_right = 0.0;
  bool dims_ok = false;
};

/// Measures how far `s` is from the factorized form; `algebra` is an optional
/// basis of the fixed-point algebra expected to be block-diagonal with
/// identity right factors.
inline StructureCheck check_structure(const BlockStructure& s, const std::vector<ComplexMatrix>& algebra = {}) {
  StructureCheck c;
  const Index d = s.dim();
  c.unitarity = (s.unitary * s.unitary.adjoint() - ComplexMatrix::Identity(d, d)).norm();
  c.reconstruction = s.reconstruction_error();
  Index total = 0;
  c.min_sigma_right = kInfinity;
  for (const auto& b : s.blocks) {
    total += b.d_left * b.d_right;
    c.min_sigma_right = std::min(c.min_sigma_right, hermitian_eig(b.sigma_right.matrix()).eigenvalues.minCoeff());
  }
  c.dims_ok = total == d;
  const auto offs = s.offsets();
  for (const auto& b : algebra) {
    const ComplexMatrix r = s.unitary * b * s.unitary.adjoint();
    ComplexMatrix expected = ComplexMatrix::Zero(d, d);
    for (std::size_t n = 0; n < s.blocks.size(); ++n) {
      const Index dl = s.blocks[n].d_left;
      const Index dr = s.blocks[n].d_right;
      const ComplexMatrix blk = r.block(offs[n], offs[n], dl * dr, dl * dr);
      expected.block(offs[n], offs[n], dl * dr, dl * dr) =
          tensor(partial_trace(blk, dl, dr, Subsystem::Right) / static_cast<double>(dr),
                 ComplexMatrix::Identity(dr, dr));
    }
    c.algebra_form = std::max(c.algebra_form, (r - expected).norm());
  }
  return c;
}

/// Block factorization induced by the fixed points of Omega* for a channel
/// Omega with faithful invariant state sigma.
///
/// Steps: fixed-point algebra from the null space of Omega* - id; its center
/// from commutation constraints; minimal central projections from the spectrum
/// of a random central element; inside each block, a random Hermitian element
/// of the commutant splits off the right factor; sigma^R and A^L come from
/// partial traces of the compressed sigma. Degenerate random draws are retried
/// with derived seeds.
inline BlockStructure decompose(const QuantumChannel& omega, const DensityMatrix& sigma,
                                const DecomposeOptions& opts = {}) {
  detail::require_invariant_faithful(omega, sigma, opts.invariance_tol, "decompose");
  const std::vector<ComplexMatrix> algebra = fixed_point_basis(omega, opts.null_tol);
  if (algebra.empty()) throw DecompositionError("decompose: fixed-point algebra is empty");

  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(attempt)));
    std::vector<detail::RawBlock> raw;
    if (!detail::try_decompose(algebra, sigma, opts, rng, raw)) continue;

    std::stable_sort(raw.begin(), raw.end(), [](const detail::RawBlock& x, const detail::RawBlock& y) {
      return std::make_tuple(x.d_left, x.d_right, x.a_left.trace().real()) >
             std::make_tuple(y.d_left, y.d_right, y.a_left.trace().real());
    });

    const Index d = sigma.dim();
    ComplexMatrix all(d, d);
    Index col = 0;
    bool valid = true;
    std::vector<Block> blocks;
    for (const auto& r : raw) {
      const Index width = r.d_left * r.d_right;
      if (col + width > d) {
        valid = false;
        break;
      }
      all.middleCols(col, width) = r.basis;
      col += width;
      try {
        blocks.push_back({r.d_left, r.d_right, DensityMatrix(r.sigma_right, sigma.tolerances()), r.a_left});
      } catch (const ValidationError&) {
        valid = false;
        break;
      }
    }
    if (!valid || col != d) continue;

    BlockStructure s{all.adjoint(), std::move(blocks), sigma.matrix()};
    const StructureCheck c = check_structure(s, algebra);
    const double cutoff = CutoffPolicy{}.resolve(1.0, d);
    if (c.dims_ok && c.unitarity <= 1e-9 && c.reconstruction <= opts.verify_tol && c.algebra_form <= opts.verify_tol &&
        c.min_sigma_right > cutoff) {
      return s;
    }
  }
  throw DecompositionError("decompose: no nondegenerate splitting found within the retry budget");
}

/// Structure of the sufficient states for {Phi, sigma}: decomposition of Phi_sigma o Phi.
inline BlockStructure decompose_channel(const QuantumChannel& phi, const DensityMatrix& sigma,
                                        const DecomposeOptions& opts = {}) {
  return decompose(compose(petz_map(phi, sigma), phi), sigma, opts);
}

/// Largest of the off-block coherence and the in-block distance from
/// Tr_R(.) (x) sigma_n^R, both in trace norm, for U rho U*.
inline double membership_residual(const DensityMatrix& rho, const BlockStructure& s) {
  if (rho.dim() != s.dim()) throw StructuralError("membership_residual: dimension mismatch");
  const ComplexMatrix r = s.unitary * rho.matrix() * s.unitary.adjoint();
  const auto offs = s.offsets();
  ComplexMatrix diag = ComplexMatrix::Zero(r.rows(), r.cols());
  double in_block = 0.0;
  for (std::size_t n = 0; n < s.blocks.size(); ++n) {
    const Index dl = s.blocks[n].d_left;
    const Index dr = s.blocks[n].d_right;
    const ComplexMatrix blk = r.block(offs[n], offs[n], dl * dr, dl * dr);
    diag.block(offs[n], offs[n], dl * dr, dl * dr) = blk;
    in_block += trace_norm(blk - tensor(partial_trace(blk, dl, dr, Subsystem::Right), s.blocks[n].sigma_right.matrix()));
  }
  return std::max(trace_norm(r - diag), in_block);
}

inline bool membership_test(const DensityMatrix& rho, const BlockStructure& s, double tol = 1e-7) {
  return membership_residual(rho, s) <= tol;
}

/// U* ((+)_n B_n (x) sigma_n^R) U with random positive definite B_n, normalized.
inline DensityMatrix build_sufficient_instance(const BlockStructure& s, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ComplexMatrix> left;
  for (const auto& b : s.blocks) {
    const ComplexMatrix g = complex_gaussian(b.d_left, b.d_left, rng);
    ComplexMatrix bl = g * g.adjoint() + 0.05 * ComplexMatrix::Identity(b.d_left, b.d_left);
    bl *= (0.25 + rng.uniform()) / bl.trace().real();
    left.push_back(bl);
  }
  const ComplexMatrix m = s.unitary.adjoint() * s.assemble(left) * s.unitary;
  return DensityMatrix::normalized(0.5 * (m + m.adjoint()));
}

}  // namespace qsuff

#endif  // QSUFF_FIXED_POINT_HPP_
