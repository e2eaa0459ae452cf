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
 * @file recovery.hpp
 * @brief Petz recovery map and sufficiency tests.
 *
 * The Petz map of a channel Phi with respect to sigma,
 *
 *   Phi_sigma(X) = sigma^{1/2} Phi*(Phi(sigma)^{-1/2} X Phi(sigma)^{-1/2}) sigma^{1/2},
 *
 * is the adjoint of Phi for the pairings <.,.>_sigma and <.,.>_{Phi(sigma)}.
 * Phi is sufficient for {rho, sigma} exactly when Phi_sigma(Phi(rho)) = rho,
 * and for alpha > 1 this happens exactly when the sandwiched Renyi divergence
 * is preserved by Phi.
 */

#ifndef QSUFF_RECOVERY_HPP_
#define QSUFF_RECOVERY_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "qsuff/divergences.hpp"
#include "qsuff/linalg.hpp"
#include "qsuff/quantum.hpp"
#include "qsuff/sigma_lp.hpp"

namespace qsuff {

/// Petz recovery map Phi_sigma : B(K) -> B(H).
///
/// On L_{Phi(sigma)} the map is the Kraus set sigma^{1/2} K_i* Phi(sigma)^{-1/2}.
/// When Phi(sigma) is not faithful, the Kraus set is completed by
/// sqrt(s_j) |v_j><f_k| (sigma = sum s_j |v_j><v_j|, f_k spanning
/// ker Phi(sigma)), which adds X -> Tr[(I - Q) X] sigma and makes the result
/// trace preserving on all of B(K) without changing it on L_{Phi(sigma)}.
inline QuantumChannel petz_map(const QuantumChannel& phi, const DensityMatrix& sigma) {
  if (phi.dim_in() != sigma.dim()) throw StructuralError("petz_map: channel input dimension does not match sigma");
  const Tolerances& tol = sigma.tolerances();
  const ComplexMatrix image = phi(sigma.matrix());

  const SpectralDecomposition in_eig = psd_eig(sigma.matrix(), tol);
  const double in_cut = support_cutoff(in_eig, tol.cutoff);
  const ComplexMatrix sqrt_sigma = spectral_apply(in_eig, in_cut, [](double l) { return std::sqrt(l); });

  const SpectralDecomposition out_eig = psd_eig(image, tol);
  const double out_cut = support_cutoff(out_eig, tol.cutoff);
  const ComplexMatrix inv_sqrt_image = spectral_apply(out_eig, out_cut, [](double l) { return 1.0 / std::sqrt(l); });

  std::vector<ComplexMatrix> kraus;
  kraus.reserve(phi.kraus().size());
  for (const auto& k : phi.kraus()) kraus.push_back(sqrt_sigma * k.adjoint() * inv_sqrt_image);

  for (Index f = 0; f < out_eig.dim(); ++f) {
    if (out_eig.eigenvalues(f) > out_cut) continue;
    for (Index j = 0; j < in_eig.dim(); ++j) {
      if (in_eig.eigenvalues(j) <= in_cut) continue;
      kraus.push_back(std::sqrt(in_eig.eigenvalues(j)) * in_eig.eigenvectors.col(j) *
                      out_eig.eigenvectors.col(f).adjoint());
    }
  }
  return QuantumChannel(phi.dim_out(), phi.dim_in(), std::move(kraus), phi.tolerances());
}

/// |<Phi_sigma(X), Y>_sigma - <X, Phi(Y)>_{Phi(sigma)}|.
inline double adjoint_pairing_check(const QuantumChannel& phi, const DensityMatrix& sigma,
                                    const ComplexMatrix& x, const ComplexMatrix& y) {
  const QuantumChannel petz = petz_map(phi, sigma);
  const SigmaLpContext in_ctx(sigma);
  const SigmaLpContext out_ctx(apply(phi, sigma));
  const Complex lhs = weighted_inner(petz(x), y, in_ctx);
  const Complex rhs = weighted_inner(x, phi(y), out_ctx);
  return std::abs(lhs - rhs);
}

/// ||Phi_sigma(Phi(rho)) - rho||_1.
inline double recovery_error(const QuantumChannel& phi, const DensityMatrix& rho, const DensityMatrix& sigma) {
  const QuantumChannel petz = petz_map(phi, sigma);
  return trace_norm(petz(phi(rho.matrix())) - rho.matrix());
}

struct SufficiencyOptions {
  double alpha = 2.0;
  double tol_suff = 1e-8;  // trace norm
  double tol_gap = 1e-10;  // nats, absolute
  bool check_tau = true;
  double tol_tau = 1e-8;
};

/// Outcome of a sufficiency test. dpi_lhs = D(Phi(rho)||Phi(sigma)) and
/// dpi_rhs = D(rho||sigma) for the sandwiched divergence at `alpha`; the gap
/// is dpi_rhs - dpi_lhs.
struct SufficiencyReport {
  double alpha = 2.0;
  double dpi_lhs = 0.0;
  double dpi_rhs = 0.0;
  std::optional<double> gap;
  double recovery_error = 0.0;
  bool sufficient = false;
  double tol_suff = 1e-8;
  double tol_gap = 1e-10;

  bool tau_checked = false;
  std::optional<double> tau_l2_residual;
  std::optional<double> tau_recovery_error;
  bool tau_verified = false;

  bool gap_vanishes() const { return gap && std::abs(*gap) <= tol_gap; }
};

namespace detail {

inline void require_supported(const DensityMatrix& rho, const DensityMatrix& sigma, const char* what) {
  if (rho.dim() != sigma.dim()) throw StructuralError(std::string(what) + ": state dimensions differ");
  if (!support_contained(rho, sigma, kSupportTolerance)) {
    throw SupportError(std::string(what) + ": supp(rho) is not contained in supp(sigma)");
  }
}

}  // namespace detail

/// Sufficiency of Phi for {rho, sigma} via Phi_sigma(Phi(rho)) = rho, together
/// with the sandwiched DPI data at `opts.alpha`.
inline SufficiencyReport is_sufficient(const QuantumChannel& phi, const DensityMatrix& rho,
                                       const DensityMatrix& sigma, const SufficiencyOptions& opts = {}) {
  detail::require_supported(rho, sigma, "is_sufficient");
  SufficiencyReport rep;
  rep.alpha = opts.alpha;
  rep.tol_suff = opts.tol_suff;
  rep.tol_gap = opts.tol_gap;
  const DpiGap g = dpi_gap(phi, rho, sigma, opts.alpha, DivergenceKind::RenyiSandwiched);
  rep.dpi_lhs = g.after.value;
  rep.dpi_rhs = g.before.value;
  rep.gap = g.gap;
  rep.recovery_error = recovery_error(phi, rho, sigma);
  rep.sufficient = rep.recovery_error <= opts.tol_suff;
  return rep;
}

/// Normalized midpoint of the interpolation family for rho:
/// tau proportional to sigma^{1/4} X^{p/2} sigma^{1/4}, X = sigma^{-1/2q} rho sigma^{-1/2q}, p = alpha.
inline DensityMatrix tau_state(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  detail::require_supported(rho, sigma, "tau_state");
  if (!(alpha > 1.0) || std::isinf(alpha)) throw DomainError("tau_state: alpha must lie in (1, inf)");
  const SigmaLpContext ctx(sigma);
  const double q = holder_conjugate(alpha);
  const ComplexMatrix x = ctx.sandwich(ctx.compress(rho.matrix()), -1.0 / (2.0 * q));
  const ComplexMatrix x_half_p = matrix_power_on_support(0.5 * (x + x.adjoint()), alpha / 2.0, rho.tolerances());
  const ComplexMatrix t = ctx.embed(ctx.sandwich(x_half_p, 0.25));
  return DensityMatrix::normalized(t, rho.tolerances());
}

struct InterpolationIsometryReport {
  bool applicable = false;
  double norm_in = 0.0;   // ||Y||_{p,sigma}
  double norm_out = 0.0;  // ||Phi(Y)||_{p,Phi(sigma)}
  std::vector<double> theta;
  std::vector<double> residuals;
  double max_residual = 0.0;
};

/// When Phi preserves ||Y||_{p,sigma}, it also preserves ||f_{Y,p}(theta)||_{1/theta}
/// for every theta in (0,1). Reports the residual at each grid point.
inline InterpolationIsometryReport isometry_along_interpolation(const QuantumChannel& phi, const ComplexMatrix& y,
                                                                double p, const DensityMatrix& sigma,
                                                                const std::vector<double>& theta_grid,
                                                                double tol = 1e-9) {
  const SigmaLpContext in_ctx(sigma);
  const SigmaLpContext out_ctx(apply(phi, sigma));
  InterpolationIsometryReport rep;
  rep.norm_in = weighted_norm(y, p, in_ctx);
  rep.norm_out = weighted_norm(phi(y), p, out_ctx);
  rep.applicable = std::abs(rep.norm_in - rep.norm_out) <= tol * std::max(1.0, rep.norm_in);
  if (!rep.applicable) return rep;
  const InterpolationFunction f(y, p, in_ctx);
  for (double theta : theta_grid) {
    const ComplexMatrix value = f(Complex(theta, 0.0));
    const double r = std::abs(weighted_norm(phi(value), 1.0 / theta, out_ctx) - weighted_norm(value, 1.0 / theta, in_ctx));
    rep.theta.push_back(theta);
    rep.residuals.push_back(r);
    rep.max_residual = std::max(rep.max_residual, r);
  }
  return rep;
}

/// Sandwiched DPI at alpha > 1 against the Petz recovery test, plus the
/// midpoint-state argument: when the gap vanishes, tau must have preserved
/// L_2 norm and be recovered by the Petz map.
inline SufficiencyReport main_theorem_experiment(const QuantumChannel& phi, const DensityMatrix& rho,
                                                 const DensityMatrix& sigma, double alpha,
                                                 SufficiencyOptions opts = {}) {
  if (!(alpha > 1.0) || std::isinf(alpha)) throw DomainError("main_theorem_experiment: alpha must lie in (1, inf)");
  opts.alpha = alpha;
  SufficiencyReport rep = is_sufficient(phi, rho, sigma, opts);
  if (opts.check_tau && rep.gap_vanishes()) {
    const DensityMatrix tau = tau_state(rho, sigma, alpha);
    const SigmaLpContext in_ctx(sigma);
    const SigmaLpContext out_ctx(apply(phi, sigma));
    rep.tau_checked = true;
    rep.tau_l2_residual =
        std::abs(weighted_norm(phi(tau.matrix()), 2.0, out_ctx) - weighted_norm(tau.matrix(), 2.0, in_ctx));
    rep.tau_recovery_error = recovery_error(phi, tau, sigma);
    rep.tau_verified = *rep.tau_l2_residual <= opts.tol_tau && *rep.tau_recovery_error <= opts.tol_tau;
  }
  return rep;
}

struct L2EqualityReport {
  double d2_gap = 0.0;  // |D2(Phi rho||Phi sigma) - D2(rho||sigma)|
  double recovery_error = 0.0;
};

/// At alpha = 2 the divergence is preserved iff Phi_sigma(Phi(rho)) = rho.
inline L2EqualityReport l2_equality_check(const QuantumChannel& phi, const DensityMatrix& rho,
                                          const DensityMatrix& sigma) {
  detail::require_supported(rho, sigma, "l2_equality_check");
  const DpiGap g = dpi_gap(phi, rho, sigma, 2.0, DivergenceKind::RenyiSandwiched);
  L2EqualityReport rep;
  rep.d2_gap = g.gap ? std::abs(*g.gap) : kInfinity;
  rep.recovery_error = recovery_error(phi, rho, sigma);
  return rep;
}

struct SchwarzReport {
  double unital_residual = 0.0;
  std::vector<double> min_eigenvalues;  // of Psi(X*X) - Psi(X*)Psi(X), per sample
  double worst = kInfinity;
  bool holds = true;
};

/// Checks Psi(X*X) >= Psi(X*) Psi(X) on each sample for a unital map Psi
/// taking dim x dim matrices to square matrices of any size.
template <class Map>
SchwarzReport schwarz_check(const Map& psi, Index dim, const std::vector<ComplexMatrix>& samples,
                            double tol = 1e-9) {
  SchwarzReport rep;
  const ComplexMatrix image = psi(ComplexMatrix::Identity(dim, dim));
  rep.unital_residual = (image - ComplexMatrix::Identity(image.rows(), image.cols())).norm();
  if (rep.unital_residual > 1e-9 * std::sqrt(static_cast<double>(dim))) {
    throw PreconditionError("schwarz_check: map is not unital");
  }
  for (const auto& x : samples) {
    const ComplexMatrix gap = psi(x.adjoint() * x) - psi(ComplexMatrix(x.adjoint())) * psi(x);
    const SpectralDecomposition eig = hermitian_eig(0.5 * (gap + gap.adjoint()), 1.0);
    const double lowest = eig.eigenvalues(eig.dim() - 1);
    rep.min_eigenvalues.push_back(lowest);
    rep.worst = std::min(rep.worst, lowest);
    rep.holds = rep.holds && lowest >= -tol * std::max(1.0, x.squaredNorm());
  }
  return rep;
}

/// Heisenberg-picture map X -> Phi*(X) as a callable.
inline auto adjoint_map(const QuantumChannel& phi) {
  return [phi](const ComplexMatrix& x) { return phi.adjoint_apply(x); };
}

}  // namespace qsuff

#endif  // QSUFF_RECOVERY_HPP_
