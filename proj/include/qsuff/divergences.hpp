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

// Quantum relative entropies, in nats.
//
// A support violation is not an error: the divergence takes the value +inf
// and the result carries `support_violation = true`.

#ifndef QSUFF_DIVERGENCES_HPP_
#define QSUFF_DIVERGENCES_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "qsuff/linalg.hpp"
#include "qsuff/quantum.hpp"
#include "qsuff/sigma_lp.hpp"

namespace qsuff {

enum class DivergenceKind { Umegaki, RenyiStandard, RenyiSandwiched, Dmax };

inline std::string_view to_string(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::Umegaki: return "umegaki";
    case DivergenceKind::RenyiStandard: return "standard";
    case DivergenceKind::RenyiSandwiched: return "sandwiched";
    case DivergenceKind::Dmax: return "dmax";
  }
  return "unknown";
}

inline DivergenceKind parse_divergence_kind(std::string_view name) {
  if (name == "umegaki" || name == "relative") return DivergenceKind::Umegaki;
  if (name == "standard" || name == "petz") return DivergenceKind::RenyiStandard;
  if (name == "sandwiched") return DivergenceKind::RenyiSandwiched;
  if (name == "dmax" || name == "max") return DivergenceKind::Dmax;
  throw DomainError("unknown divergence kind '" + std::string(name) + "'");
}

inline bool needs_alpha(DivergenceKind kind) {
  return kind == DivergenceKind::RenyiStandard || kind == DivergenceKind::RenyiSandwiched;
}

struct DivergenceResult {
  double value = 0.0;
  bool finite = true;
  bool support_violation = false;
  DivergenceKind kind = DivergenceKind::Umegaki;
  std::optional<double> alpha;

  static DivergenceResult infinite(DivergenceKind kind, std::optional<double> alpha, bool violation) {
    return {kInfinity, false, violation, kind, alpha};
  }
};

inline constexpr double kAlphaGuard = 1e-6;
inline constexpr double kSupportTolerance = 1e-9;

namespace detail {

inline void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma, const char* what) {
  if (rho.dim() != sigma.dim()) {
    throw StructuralError(std::string(what) + ": states of different dimensions " +
                          std::to_string(rho.dim()) + " and " + std::to_string(sigma.dim()));
  }
}

inline void require_renyi_alpha(double alpha, const char* what) {
  if (!(alpha > 0.0) || std::isinf(alpha) || std::abs(alpha - 1.0) < kAlphaGuard) {
    throw DomainError(std::string(what) + ": alpha must be positive, finite and away from 1");
  }
}

}  // namespace detail

/// Tr rho (log rho - log sigma), +inf unless supp rho is inside supp sigma.
inline DivergenceResult umegaki(const DensityMatrix& rho, const DensityMatrix& sigma) {
  detail::require_same_dim(rho, sigma, "umegaki");
  if (!support_contained(rho, sigma, kSupportTolerance)) {
    return DivergenceResult::infinite(DivergenceKind::Umegaki, std::nullopt, true);
  }
  const SpectralDecomposition eig = psd_eig(rho.matrix(), rho.tolerances());
  const double cutoff = support_cutoff(eig, rho.tolerances().cutoff);
  double entropy_term = 0.0;
  for (Index k = 0; k < eig.dim(); ++k) {
    const double lambda = eig.eigenvalues(k);
    if (lambda > cutoff) entropy_term += lambda * std::log(lambda);
  }
  const ComplexMatrix log_sigma = matrix_log_on_support(sigma.matrix(), sigma.tolerances());
  const double cross = (rho.matrix() * log_sigma).trace().real();
  return {entropy_term - cross, true, false, DivergenceKind::Umegaki, std::nullopt};
}

/// (1/(alpha-1)) log Tr rho^alpha sigma^{1-alpha}.
inline DivergenceResult renyi_standard(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  detail::require_same_dim(rho, sigma, "renyi_standard");
  detail::require_renyi_alpha(alpha, "renyi_standard");
  const bool contained = support_contained(rho, sigma, kSupportTolerance);
  if (alpha > 1.0 && !contained) {
    return DivergenceResult::infinite(DivergenceKind::RenyiStandard, alpha, true);
  }
  const ComplexMatrix rho_a = matrix_power_on_support(rho.matrix(), alpha, rho.tolerances());
  const ComplexMatrix sigma_b = matrix_power_on_support(sigma.matrix(), 1.0 - alpha, sigma.tolerances());
  const double overlap = (rho_a * sigma_b).trace().real();
  if (!(overlap > 0.0)) {
    return DivergenceResult::infinite(DivergenceKind::RenyiStandard, alpha, !contained);
  }
  return {std::log(overlap) / (alpha - 1.0), true, !contained, DivergenceKind::RenyiStandard, alpha};
}

/// (1/(alpha-1)) log Tr[(sigma^{(1-alpha)/2alpha} rho sigma^{(1-alpha)/2alpha})^alpha],
/// evaluated literally for any alpha (powers on supports). For alpha > 1 this
/// is an independent route to renyi_sandwiched.
inline DivergenceResult sandwiched_trace_formula(const DensityMatrix& rho, const DensityMatrix& sigma,
                                                 double alpha) {
  detail::require_same_dim(rho, sigma, "sandwiched_trace_formula");
  detail::require_renyi_alpha(alpha, "sandwiched_trace_formula");
  const bool contained = support_contained(rho, sigma, kSupportTolerance);
  if (alpha > 1.0 && !contained) {
    return DivergenceResult::infinite(DivergenceKind::RenyiSandwiched, alpha, true);
  }
  const ComplexMatrix s = matrix_power_on_support(sigma.matrix(), (1.0 - alpha) / (2.0 * alpha), sigma.tolerances());
  const ComplexMatrix inner = s * rho.matrix() * s;
  const SpectralDecomposition eig = psd_eig(0.5 * (inner + inner.adjoint()), rho.tolerances());
  const double cutoff = support_cutoff(eig, rho.tolerances().cutoff);
  double trace = 0.0;
  for (Index k = 0; k < eig.dim(); ++k) {
    if (eig.eigenvalues(k) > cutoff) trace += std::pow(eig.eigenvalues(k), alpha);
  }
  if (!(trace > 0.0)) return DivergenceResult::infinite(DivergenceKind::RenyiSandwiched, alpha, !contained);
  return {std::log(trace) / (alpha - 1.0), true, !contained, DivergenceKind::RenyiSandwiched, alpha};
}

/// Sandwiched Renyi divergence. For alpha > 1 it is computed as
/// (alpha/(alpha-1)) log ||rho||_{alpha,sigma}; for alpha in (0,1) through the
/// trace formula.
inline DivergenceResult renyi_sandwiched(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  detail::require_same_dim(rho, sigma, "renyi_sandwiched");
  detail::require_renyi_alpha(alpha, "renyi_sandwiched");
  if (alpha < 1.0) return sandwiched_trace_formula(rho, sigma, alpha);
  if (!support_contained(rho, sigma, kSupportTolerance)) {
    return DivergenceResult::infinite(DivergenceKind::RenyiSandwiched, alpha, true);
  }
  const SigmaLpContext ctx(sigma);
  const ComplexMatrix projected = ctx.support().projector * rho.matrix() * ctx.support().projector;
  const double norm = weighted_norm(projected, alpha, ctx);
  return {alpha / (alpha - 1.0) * std::log(norm), true, false, DivergenceKind::RenyiSandwiched, alpha};
}

/// log inf{lambda : rho <= lambda sigma} = log ||sigma^{-1/2} rho sigma^{-1/2}||.
inline DivergenceResult dmax(const DensityMatrix& rho, const DensityMatrix& sigma) {
  detail::require_same_dim(rho, sigma, "dmax");
  if (!support_contained(rho, sigma, kSupportTolerance)) {
    return DivergenceResult::infinite(DivergenceKind::Dmax, std::nullopt, true);
  }
  const SigmaLpContext ctx(sigma);
  const ComplexMatrix projected = ctx.support().projector * rho.matrix() * ctx.support().projector;
  return {std::log(weighted_norm(projected, kInfinity, ctx)), true, false, DivergenceKind::Dmax, std::nullopt};
}

inline DivergenceResult divergence(DivergenceKind kind, const DensityMatrix& rho, const DensityMatrix& sigma,
                                   std::optional<double> alpha = std::nullopt) {
  switch (kind) {
    case DivergenceKind::Umegaki: return umegaki(rho, sigma);
    case DivergenceKind::Dmax: return dmax(rho, sigma);
    case DivergenceKind::RenyiStandard:
    case DivergenceKind::RenyiSandwiched:
      if (!alpha) throw DomainError(std::string(to_string(kind)) + " divergence requires alpha");
      return kind == DivergenceKind::RenyiStandard ? renyi_standard(rho, sigma, *alpha)
                                                   : renyi_sandwiched(rho, sigma, *alpha);
  }
  throw DomainError("unknown divergence kind");
}

struct DpiGap {
  DivergenceResult before;  // D(rho || sigma)
  DivergenceResult after;   // D(Phi(rho) || Phi(sigma))
  std::optional<double> gap;

  bool defined() const { return gap.has_value(); }
};

/// D(rho||sigma) - D(Phi(rho)||Phi(sigma)); undefined when both sides are +inf.
inline DpiGap dpi_gap(const QuantumChannel& phi, const DensityMatrix& rho, const DensityMatrix& sigma,
                      std::optional<double> alpha, DivergenceKind kind) {
  detail::require_same_dim(rho, sigma, "dpi_gap");
  if (phi.dim_in() != rho.dim()) throw StructuralError("dpi_gap: channel input dimension does not match the states");
  DpiGap out{divergence(kind, rho, sigma, alpha), divergence(kind, apply(phi, rho), apply(phi, sigma), alpha),
             std::nullopt};
  if (out.before.finite && out.after.finite) {
    out.gap = out.before.value - out.after.value;
  } else if (!out.before.finite && out.after.finite) {
    out.gap = kInfinity;
  } else if (out.before.finite && !out.after.finite) {
    out.gap = -kInfinity;
  }
  return out;
}

}  // namespace qsuff

#endif  // QSUFF_DIVERGENCES_HPP_
