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
 * @file sigma_lp.hpp
 * @brief Non-commutative L_p spaces weighted by a reference state sigma.
 *
 * For Y supported in supp(sigma) (both sides) and 1/p + 1/q = 1,
 *
 *   ||Y||_{p,sigma} = || sigma^{(1-p)/2p} Y sigma^{(1-p)/2p} ||_p
 *   <Z, Y>_sigma    = Tr Z sigma^{-1/2} Y sigma^{-1/2}
 *
 * with all powers of sigma taken on its support. Computations happen in the
 * eigenbasis of sigma restricted to its support ("compressed" coordinates),
 * where every power of sigma is diagonal; `compress` and `embed` translate
 * between the two pictures.
 *
 * The analytic family
 *
 *   f_{Y,p}(z) = ||Y||^{1-zp} sigma^{(1-z)/2} U |X|^{zp} sigma^{(1-z)/2},
 *   X = sigma^{-1/2q} Y sigma^{-1/2q} = U |X|,
 *
 * is defined on the strip 0 <= Re z <= 1, equals Y at z = 1/p and has
 * constant boundary norms ||f(it)||_{inf,sigma} = ||f(1+it)||_1 = ||Y||_{p,sigma}.
 */

#ifndef QSUFF_SIGMA_LP_HPP_
#define QSUFF_SIGMA_LP_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "qsuff/linalg.hpp"
#include "qsuff/quantum.hpp"

namespace qsuff {

inline double holder_conjugate(double p) {
  if (!(p >= 1.0)) throw DomainError("holder_conjugate: p must be >= 1");
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

class SigmaLpContext {
 public:
  explicit SigmaLpContext(const DensityMatrix& sigma)
      : sigma_(sigma), cache_(std::make_shared<PowerCache>()) {
    const Tolerances& tol = sigma.tolerances();
    const SpectralDecomposition eig = psd_eig(sigma.matrix(), tol);
    const double cutoff = support_cutoff(eig, tol.cutoff);
    const Index rank = (eig.eigenvalues.array() > cutoff).count();
    basis_ = eig.eigenvectors.leftCols(rank);
    spectrum_ = eig.eigenvalues.head(rank);
    support_.projector = basis_ * basis_.adjoint();
    support_.rank = rank;
    support_.cutoff = cutoff;
  }

  const DensityMatrix& sigma() const { return sigma_; }
  const SupportProjection& support() const { return support_; }
  Index dim() const { return sigma_.dim(); }
  Index rank() const { return support_.rank; }
  bool faithful() const { return rank() == dim(); }

  /// Orthonormal eigenvectors spanning supp(sigma), as columns.
  const ComplexMatrix& support_basis() const { return basis_; }
  /// Eigenvalues of sigma on its support, descending.
  const RealVector& support_spectrum() const { return spectrum_; }

  ComplexMatrix compress(const ComplexMatrix& y) const {
    require_shape(y);
    return basis_.adjoint() * y * basis_;
  }
  ComplexMatrix embed(const ComplexMatrix& c) const { return basis_ * c * basis_.adjoint(); }

  /// ||Y - P Y P||_F / ||Y||_F (0 for Y = 0).
  double leakage(const ComplexMatrix& y) const {
    require_shape(y);
    const double total = y.norm();
    if (total == 0.0) return 0.0;
    const ComplexMatrix& p = support_.projector;
    return (y - p * y * p).norm() / total;
  }

  bool contains(const ComplexMatrix& y) const { return leakage(y) <= sigma_.tolerances().support; }

  void require_contains(const ComplexMatrix& y, const char* what) const {
    if (!contains(y)) {
      throw SupportError(std::string(what) + ": operator is not supported in supp(sigma) (leakage " +
                         std::to_string(leakage(y)) + ")");
    }
  }

  /// Diagonal of sigma^z in compressed coordinates.
  ComplexVector spectrum_power(Complex z) const {
    ComplexVector d(spectrum_.size());
    for (Index k = 0; k < spectrum_.size(); ++k) d(k) = std::exp(z * std::log(spectrum_(k)));
    return d;
  }

  /// sigma^z C sigma^z for C in compressed coordinates.
  ComplexMatrix sandwich(const ComplexMatrix& c, Complex z) const {
    const ComplexVector d = spectrum_power(z);
    return d.asDiagonal() * c * d.asDiagonal();
  }

  /// sigma^z on the full space (zero off the support). Cached per exponent.
  const ComplexMatrix& power(Complex z) const {
    const std::pair<double, double> key{z.real(), z.imag()};
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->powers.find(key);
    if (it == cache_->powers.end()) {
      it = cache_->powers.emplace(key, basis_ * spectrum_power(z).asDiagonal() * basis_.adjoint()).first;
    }
    return it->second;
  }

 private:
  struct PowerCache {
    std::mutex mutex;
    std::map<std::pair<double, double>, ComplexMatrix> powers;
  };

  void require_shape(const ComplexMatrix& y) const {
    if (y.rows() != dim() || y.cols() != dim()) {
      throw StructuralError("SigmaLpContext: operator of shape " + detail::shape_of(y) +
                            " for a state of dimension " + std::to_string(dim()));
    }
  }

  DensityMatrix sigma_;
  SupportProjection support_;
  ComplexMatrix basis_;
  RealVector spectrum_;
  std::shared_ptr<PowerCache> cache_;
};

/// ||Y||_{p,sigma} for p in [1, inf]. p = 1 is the plain trace norm.
inline double weighted_norm(const ComplexMatrix& y, double p, const SigmaLpContext& ctx) {
  if (!(p >= 1.0)) throw DomainError("weighted_norm: p must be >= 1");
  ctx.require_contains(y, "weighted_norm");
  if (p == 1.0) return schatten_norm(y, 1.0);
  const ComplexMatrix c = ctx.compress(y);
  if (std::isinf(p)) return operator_norm(ctx.sandwich(c, -0.5));
  return schatten_norm(ctx.sandwich(c, (1.0 - p) / (2.0 * p)), p);
}

/// <Z, Y>_sigma = Tr Z sigma^{-1/2} Y sigma^{-1/2}. Bilinear, not sesquilinear.
inline Complex weighted_inner(const ComplexMatrix& z, const ComplexMatrix& y, const SigmaLpContext& ctx) {
  ctx.require_contains(z, "weighted_inner");
  ctx.require_contains(y, "weighted_inner");
  return (ctx.compress(z) * ctx.sandwich(ctx.compress(y), -0.5)).trace();
}

/// Norming functional for Y in L_{p,sigma}: Z with ||Z||_{q,sigma} = 1 and
/// <Z, Y>_sigma = ||Y||_{p,sigma}.
///
/// With X = sigma^{-1/2q} Y sigma^{-1/2q} = U|X|, the optimizer of Schatten
/// duality is W = |X|^{p-1} U* / ||X||_p^{p-1}, and Z = sigma^{1/2p} W sigma^{1/2p}.
inline ComplexMatrix dual_witness(const ComplexMatrix& y, double p, const SigmaLpContext& ctx) {
  if (!(p > 1.0) || std::isinf(p)) throw DomainError("dual_witness: p must lie in (1, inf)");
  const double norm = weighted_norm(y, p, ctx);
  if (norm < 1e-14) throw DegenerateInputError("dual_witness: ||Y||_{p,sigma} is numerically zero");
  const double q = holder_conjugate(p);
  const ComplexMatrix x = ctx.sandwich(ctx.compress(y), -1.0 / (2.0 * q));
  Eigen::JacobiSVD<ComplexMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double cutoff = CutoffPolicy{}.resolve(s.size() ? s(0) : 0.0, x.rows());
  ComplexMatrix w = ComplexMatrix::Zero(x.rows(), x.cols());
  for (Index k = 0; k < s.size(); ++k) {
    if (s(k) <= cutoff) break;
    w.noalias() += std::pow(s(k) / norm, p - 1.0) * svd.matrixV().col(k) * svd.matrixU().col(k).adjoint();
  }
  return ctx.embed(ctx.sandwich(w, 1.0 / (2.0 * p)));
}

/// The analytic family f_{Y,p} on the strip 0 <= Re z <= 1.
class InterpolationFunction {
 public:
  InterpolationFunction(const ComplexMatrix& y, double p, const SigmaLpContext& ctx)
      : ctx_(ctx), p_(p) {
    if (!(p > 1.0) || std::isinf(p)) throw DomainError("InterpolationFunction: p must lie in (1, inf)");
    q_ = holder_conjugate(p);
    y_ = y;
    norm_ = weighted_norm(y, p, ctx);
    if (norm_ < 1e-14) throw DegenerateInputError("InterpolationFunction: ||Y||_{p,sigma} is numerically zero");
    x_ = ctx.sandwich(ctx.compress(y), -1.0 / (2.0 * q_));
    Eigen::JacobiSVD<ComplexMatrix> svd(x_, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    const double cutoff = CutoffPolicy{}.resolve(s.size() ? s(0) : 0.0, x_.rows());
    Index rank = 0;
    while (rank < s.size() && s(rank) > cutoff) ++rank;
    left_ = svd.matrixU().leftCols(rank);
    right_ = svd.matrixV().leftCols(rank);
    singular_ = s.head(rank);
  }

  double p() const { return p_; }
  double q() const { return q_; }
  double norm() const { return norm_; }
  const ComplexMatrix& Y() const { return y_; }
  const SigmaLpContext& context() const { return ctx_; }

  /// sigma^{-1/2q} Y sigma^{-1/2q}.
  ComplexMatrix X() const { return ctx_.embed(x_); }
  /// Partial isometry of the polar decomposition of X.
  ComplexMatrix U() const { return ctx_.embed(left_ * right_.adjoint()); }
  ComplexMatrix absX() const {
    return ctx_.embed(right_ * singular_.cast<Complex>().asDiagonal() * right_.adjoint());
  }

  static bool in_strip(Complex z) { return z.real() >= -1e-12 && z.real() <= 1.0 + 1e-12; }

  ComplexMatrix operator()(Complex z) const {
    if (!in_strip(z)) throw DomainError("InterpolationFunction: z lies outside the strip 0 <= Re z <= 1");
    const Complex zp = z * p_;
    const Complex scale = std::exp((1.0 - zp) * std::log(norm_));
    ComplexVector mid(singular_.size());
    for (Index k = 0; k < singular_.size(); ++k) mid(k) = std::exp(zp * std::log(singular_(k)));
    const ComplexMatrix core = left_ * mid.asDiagonal() * right_.adjoint();
    return ctx_.embed(scale * ctx_.sandwich(core, (1.0 - z) / 2.0));
  }

 private:
  SigmaLpContext ctx_;
  double p_;
  double q_ = 0.0;
  double norm_ = 0.0;
  ComplexMatrix y_;
  ComplexMatrix x_;  // compressed
  ComplexMatrix left_;
  ComplexMatrix right_;
  RealVector singular_;
};

inline ComplexMatrix interpolation_eval(const InterpolationFunction& f, Complex z) { return f(z); }

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  return out;
}

struct ThreeLinesOptions {
  /// Heuristic grid for the boundary suprema. Exact for f_{Y,p}, whose
  /// boundary norms do not depend on t.
  std::vector<double> t_grid = linspace(-5.0, 5.0, 41);
  double tol = 1e-9;
  double equality_tol = 1e-9;
};

struct ThreeLinesEntry {
  double theta = 0.0;
  double norm = 0.0;   // ||h(theta)||_{1/theta,sigma}
  double slack = 0.0;  // bound - norm
  bool equality = false;
};

struct ThreeLinesReport {
  double left_sup = 0.0;   // sup_t ||h(it)||_{inf,sigma}
  double right_sup = 0.0;  // sup_t ||h(1+it)||_1
  double bound = 0.0;
  std::vector<ThreeLinesEntry> entries;
  double min_slack = kInfinity;
  bool holds = true;
  bool all_equal = true;
};

/// Evaluates the three-lines bound for a strip function h with values in
/// L_sigma. Suprema over t are taken on `opts.t_grid`, which under-approximates
/// them for general h.
template <class StripFunction>
ThreeLinesReport three_lines_check(const StripFunction& h, const SigmaLpContext& ctx,
                                   const std::vector<double>& theta_grid,
                                   const ThreeLinesOptions& opts = {}) {
  ThreeLinesReport rep;
  for (double t : opts.t_grid) {
    rep.left_sup = std::max(rep.left_sup, weighted_norm(h(Complex(0.0, t)), kInfinity, ctx));
    rep.right_sup = std::max(rep.right_sup, weighted_norm(h(Complex(1.0, t)), 1.0, ctx));
  }
  rep.bound = std::max(rep.left_sup, rep.right_sup);
  const double scale = std::max(1.0, rep.bound);
  for (double theta : theta_grid) {
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("three_lines_check: theta must lie in (0, 1)");
    ThreeLinesEntry e;
    e.theta = theta;
    e.norm = weighted_norm(h(Complex(theta, 0.0)), 1.0 / theta, ctx);
    e.slack = rep.bound - e.norm;
    e.equality = std::abs(e.slack) <= opts.equality_tol * scale;
    rep.min_slack = std::min(rep.min_slack, e.slack);
    rep.holds = rep.holds && e.slack >= -opts.tol * scale;
    rep.all_equal = rep.all_equal && e.equality;
    rep.entries.push_back(e);
  }
  return rep;
}

/// Four-point finite-difference Cauchy-Riemann residual of a matrix-valued
/// function at z: || df/dy - i df/dx ||_F relative to max(1, ||df/dx||_F).
template <class Function>
double cauchy_riemann_residual(const Function& f, Complex z, double step = 1e-5) {
  const ComplexMatrix dx = (f(z + Complex(step, 0.0)) - f(z - Complex(step, 0.0))) / (2.0 * step);
  const ComplexMatrix dy = (f(z + Complex(0.0, step)) - f(z - Complex(0.0, step))) / (2.0 * step);
  return (dy - Complex(0.0, 1.0) * dx).norm() / std::max(1.0, dx.norm());
}

}  // namespace qsuff

#endif  // QSUFF_SIGMA_LP_HPP_
