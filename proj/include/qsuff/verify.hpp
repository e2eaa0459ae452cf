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

// Seeded invariant suites: lp, divergences, recovery, structure, all.
//
// Every check folds a per-instance residual into its worst value and keeps the
// seed of the instance that produced it.

#ifndef QSUFF_VERIFY_HPP_
#define QSUFF_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qsuff/divergences.hpp"
#include "qsuff/fixed_point.hpp"
#include "qsuff/instances.hpp"
#include "qsuff/quantum.hpp"
#include "qsuff/random.hpp"
#include "qsuff/recovery.hpp"
#include "qsuff/sigma_lp.hpp"

namespace qsuff {

struct VerifyCheck {
  std::string suite;
  std::string name;
  bool at_most = true;  // residual check (worst <= threshold) or margin check (worst >= threshold)
  double threshold = 0.0;
  double worst = 0.0;
  std::uint64_t worst_seed = 0;
  int samples = 0;
  int failures = 0;
  std::vector<std::uint64_t> failing_seeds;
  std::string error;

  bool passed() const { return failures == 0 && error.empty() && samples > 0; }

  void observe(double value, std::uint64_t seed) {
    const bool first = samples == 0;
    ++samples;
    const bool ok = at_most ? value <= threshold : value >= threshold;
    if (!ok || std::isnan(value)) {
      ++failures;
      if (failing_seeds.size() < 8) failing_seeds.push_back(seed);
    }
    const bool worse = at_most ? value > worst : value < worst;
    if (first || worse || std::isnan(value)) {
      worst = value;
      worst_seed = seed;
    }
  }
};

struct VerifyResult {
  std::vector<VerifyCheck> checks;

  bool ok() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
  }
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"lp", "divergences", "recovery", "structure"};
  return names;
}

namespace detail {

class SuiteRunner {
 public:
  SuiteRunner(std::string suite, std::uint64_t seed, VerifyResult& out) : suite_(std::move(suite)), seed_(seed), out_(out) {}

  VerifyCheck& check(const std::string& name, double threshold, bool at_most = true) {
    for (auto& c : out_.checks) {
      if (c.suite == suite_ && c.name == name) return c;
    }
    VerifyCheck c;
    c.suite = suite_;
    c.name = name;
    c.threshold = threshold;
    c.at_most = at_most;
    out_.checks.push_back(std::move(c));
    return out_.checks.back();
  }

  /// Runs body(instance_seed) for `count` instances; an exception marks the
  /// named check as failed for that seed.
  void repeat(int count, std::uint64_t stream, const std::string& guard,
              const std::function<void(std::uint64_t)>& body) {
    for (int i = 0; i < count; ++i) {
      const std::uint64_t s = derive_seed(derive_seed(seed_, stream), static_cast<std::uint64_t>(i));
      try {
        body(s);
      } catch (const std::exception& e) {
        VerifyCheck& c = check(guard, 0.0);
        ++c.failures;
        if (c.failing_seeds.size() < 8) c.failing_seeds.push_back(s);
        if (c.error.empty()) c.error = e.what();
      }
    }
  }

 private:
  std::string suite_;
  std::uint64_t seed_;
  VerifyResult& out_;
};

inline DensityMatrix diagonal_state(const RealVector& p) {
  return DensityMatrix(ComplexMatrix(p.cast<Complex>().asDiagonal()));
}

inline RealVector random_distribution(Index dim, Rng& rng, double floor = 0.0) {
  RealVector p(dim);
  for (Index k = 0; k < dim; ++k) p(k) = floor + rng.uniform();
  return p / p.sum();
}

/// Random Hermitian operator supported inside supp sigma.
inline ComplexMatrix random_supported(const SigmaLpContext& ctx, Rng& rng) {
  const ComplexMatrix h = random_hermitian(ctx.rank(), rng);
  return ctx.embed(h);
}

inline double classical_renyi(const RealVector& p, const RealVector& q, double alpha) {
  double s = 0.0;
  for (Index k = 0; k < p.size(); ++k) {
    if (p(k) > 0.0) s += std::pow(p(k), alpha) * std::pow(q(k), 1.0 - alpha);
  }
  return std::log(s) / (alpha - 1.0);
}

inline void suite_lp(std::uint64_t seed, VerifyResult& out) {
  SuiteRunner run("lp", seed, out);
  run.repeat(40, 1, "lp.instances", [&](std::uint64_t s) {
    Rng rng(s);
    const Index dim = rng.integer(2, 6);
    const Index rank = rng.integer(std::max<Index>(1, dim - 1), dim);
    const SigmaLpContext ctx(random_state(dim, rank, derive_seed(s, 1)));
    const ComplexMatrix y = random_supported(ctx, rng);
    for (double p : {1.5, 2.0, 3.0}) {
      const double norm = weighted_norm(y, p, ctx);
      const double q = holder_conjugate(p);
      const ComplexMatrix z = dual_witness(y, p, ctx);
      run.check("duality.pairing", 1e-9).observe(std::abs(weighted_inner(z, y, ctx) - norm) / norm, s);
      run.check("duality.witness_norm", 1e-9).observe(std::abs(weighted_norm(z, q, ctx) - 1.0), s);
      for (int k = 0; k < 4; ++k) {
        ComplexMatrix w = ctx.embed(complex_gaussian(ctx.rank(), ctx.rank(), rng));
        w /= weighted_norm(w, q, ctx);
        run.check("duality.feasible_bound", 1e-9).observe(std::abs(weighted_inner(w, y, ctx)) / norm - 1.0, s);
      }

      const InterpolationFunction f(y, p, ctx);
      run.check("interpolation.midpoint", 1e-10).observe((f(Complex(1.0 / p, 0.0)) - y).norm() / y.norm(), s);
      for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        run.check("interpolation.left_boundary", 1e-9)
            .observe(std::abs(weighted_norm(f(Complex(0.0, t)), kInfinity, ctx) - norm) / norm, s);
        run.check("interpolation.right_boundary", 1e-9)
            .observe(std::abs(weighted_norm(f(Complex(1.0, t)), 1.0, ctx) - norm) / norm, s);
      }
      run.check("interpolation.cauchy_riemann", 1e-5).observe(cauchy_riemann_residual(f, Complex(0.4, 0.3)), s);
      const ThreeLinesReport tl = three_lines_check(f, ctx, linspace(0.1, 0.9, 9), {.t_grid = {-2.0, -1.0, 0.0, 1.0, 2.0}});
      run.check("three_lines.slack", -1e-9, false).observe(tl.min_slack / std::max(1.0, tl.bound), s);
    }
    run.check("schatten.monotone_in_p", 1e-12)
        .observe(std::max(0.0, schatten_norm(y, 3.0) - schatten_norm(y, 2.0)) / y.norm(), s);
  });
}

inline void suite_divergences(std::uint64_t seed, VerifyResult& out) {
  SuiteRunner run("divergences", seed, out);
  run.repeat(30, 1, "divergences.classical_instances", [&](std::uint64_t s) {
    Rng rng(s);
    const Index dim = rng.integer(2, 8);
    const RealVector p = random_distribution(dim, rng);
    const RealVector q = random_distribution(dim, rng, 0.05);
    const DensityMatrix rho = diagonal_state(p);
    const DensityMatrix sigma = diagonal_state(q);
    for (double a : {1.5, 2.0, 3.0, 10.0}) {
      const double ref = classical_renyi(p, q, a);
      const double scale = std::max(std::abs(ref), 1e-300);
      run.check("commuting.sandwiched", 1e-10).observe(std::abs(renyi_sandwiched(rho, sigma, a).value - ref) / scale, s);
      run.check("commuting.standard", 1e-10).observe(std::abs(renyi_standard(rho, sigma, a).value - ref) / scale, s);
    }
  });
  run.repeat(150, 2, "divergences.dpi_instances", [&](std::uint64_t s) {
    Rng rng(s);
    const Index dim = rng.integer(2, 6);
    const Index env = rng.integer(1, 4);
    const Index dout = std::max<Index>(rng.integer(1, dim), (dim + env - 1) / env);
    const QuantumChannel phi = random_channel(dim, dout, env, derive_seed(s, 1));
    const DensityMatrix rho = random_state(dim, rng.integer(1, dim), derive_seed(s, 2));
    const DensityMatrix sigma = random_state(dim, dim, derive_seed(s, 3));
    for (double a : {1.2, 2.0, 4.0}) {
      const DpiGap g = dpi_gap(phi, rho, sigma, a, DivergenceKind::RenyiSandwiched);
      run.check("dpi.sandwiched_gap", -1e-9, false).observe(g.gap ? *g.gap : -kInfinity, s);
    }
    const DpiGap u = dpi_gap(phi, rho, sigma, std::nullopt, DivergenceKind::Umegaki);
    run.check("dpi.umegaki_gap", -1e-9, false).observe(u.gap ? *u.gap : -kInfinity, s);
    for (double a : {1.5, 3.0}) {
      const double direct = renyi_sandwiched(rho, sigma, a).value;
      const double trace = sandwiched_trace_formula(rho, sigma, a).value;
      run.check("sandwiched.two_routes", 1e-9).observe(std::abs(direct - trace) / std::max(1.0, std::abs(direct)), s);
    }
    run.check("sandwiched.self_divergence", 1e-10).observe(std::abs(renyi_sandwiched(sigma, sigma, 2.0).value), s);
    run.check("sandwiched.monotone_in_alpha", -1e-9, false)
        .observe(renyi_sandwiched(rho, sigma, 3.0).value - renyi_sandwiched(rho, sigma, 1.5).value, s);
  });
  run.repeat(10, 3, "divergences.limit_instances", [&](std::uint64_t s) {
    Rng rng(s);
    const Index dim = rng.integer(2, 4);
    const DensityMatrix rho = random_state(dim, dim, derive_seed(s, 1));
    const DensityMatrix sigma = random_state(dim, dim, derive_seed(s, 2));
    const double d1 = umegaki(rho, sigma).value;
    for (double h : {1e-3, 1e-4}) {
      run.check("limit.alpha_to_1", 0.0).observe(std::abs(renyi_sandwiched(rho, sigma, 1.0 + h).value - d1) - 10.0 * h, s);
    }
    run.check("limit.alpha_to_inf", 1e-3)
        .observe(std::abs(renyi_sandwiched(rho, sigma, 1e4).value - dmax(rho, sigma).value), s);
  });
  run.repeat(5, 4, "divergences.support_instances", [&](std::uint64_t s) {
    Rng rng(s);
    const Index dim = rng.integer(2, 5);
    const DensityMatrix sigma = random_state(dim, dim - 1, derive_seed(s, 1));
    const DensityMatrix rho = random_state(dim, dim, derive_seed(s, 2));
    const bool all_inf = !umegaki(rho, sigma).finite && !dmax(rho, sigma).finite &&
                         !renyi_sandwiched(rho, sigma, 2.0).finite && !renyi_standard(rho, sigma, 2.0).finite &&
                         renyi_sandwiched(rho, sigma, 2.0).support_violation;
    run.check("support.violation_is_infinite", 0.0).observe(all_inf ? 0.0 : 1.0, s);
  });
}

inline void suite_recovery(std::uint64_t seed, VerifyResult& out) {
  SuiteRunner run("recovery", seed, out);
  run.repeat(60, 1, "recovery.petz_instances", [&](std::uint64_t s) {
    Rng rng(s);
    const Index dim = rng.integer(2, 5);
    const Index env = rng.integer(1, 3);
    const Index dout = std::max<Index>(rng.integer(1, dim), (dim + env - 1) / env);
    const QuantumChannel phi = random_channel(dim, dout, env, derive_seed(s, 1));
    const DensityMatrix sigma = random_state(dim, rng.integer(1, dim), derive_seed(s, 2));
    const QuantumChannel petz = petz_map(phi, sigma);
    run.check("petz.recovers_sigma", 1e-10).observe(trace_norm(petz(phi(sigma.matrix())) - sigma.matrix()), s);
    const ChannelValidation v = petz.validate();
    run.check("petz.cptp", 0.0).observe(v.ok ? 0.0 : 1.0, s);
    const SigmaLpContext in_ctx(sigma);
    const SigmaLpContext out_ctx(apply(phi, sigma));
    const ComplexMatrix x = out_ctx.embed(complex_gaussian(out_ctx.rank(), out_ctx.rank(), rng));
    const ComplexMatrix y = in_ctx.embed(complex_gaussian(in_ctx.rank(), in_ctx.rank(), rng));
    run.check("petz.adjoint_pairing", 1e-10).observe(adjoint_pairing_check(phi, sigma, x, y), s);

    std::vector<ComplexMatrix> samples;
    for (int k = 0; k < 3; ++k) samples.push_back(complex_gaussian(dout, dout, rng));
    const SchwarzReport sw = schwarz_check(adjoint_map(phi), dout, samples);
    run.check("schwarz.adjoint_channel", 0.0).observe(sw.holds ? 0.0 : 1.0, s);

    const DensityMatrix rho = random_state(dim, dim, derive_seed(s, 3));
    const DensityMatrix faithful = random_state(dim, dim, derive_seed(s, 4));
    const L2EqualityReport l2 = l2_equality_check(phi, rho, faithful);
    const bool zero_gap = l2.d2_gap <= 1e-10;
    const bool recovered = l2.recovery_error <= 1e-6;
    run.check("l2.biconditional", 0.0).observe(zero_gap == recovered ? 0.0 : 1.0, s);
  });
  run.repeat(25, 2, "recovery.sufficient_instances", [&](std::uint64_t s) {
    Rng rng(s);
    const StructuredInstance inst = structured_instance(random_shapes(rng.integer(2, 6), rng), derive_seed(s, 1));
    const BlockStructure st = decompose_channel(inst.channel, inst.sigma, {.seed = derive_seed(s, 2)});
    const DensityMatrix rho = build_sufficient_instance(st, derive_seed(s, 3));
    for (double a : {1.5, 2.0, 4.0}) {
      const SufficiencyReport r = main_theorem_experiment(inst.channel, rho, inst.sigma, a);
      run.check("sufficient.gap", 1e-9).observe(r.gap ? std::abs(*r.gap) : kInfinity, s);
      run.check("sufficient.recovery_error", 1e-8).observe(r.recovery_error, s);
      run.check("sufficient.tau_verified", 0.0).observe(r.tau_verified ? 0.0 : 1.0, s);
    }
    const InterpolationIsometryReport iso =
        isometry_along_interpolation(inst.channel, rho.matrix(), 2.0, inst.sigma, linspace(0.1, 0.9, 9));
    run.check("equality.propagation", 1e-8).observe(iso.applicable ? iso.max_residual : kInfinity, s);
  });
}

inline void suite_structure(std::uint64_t seed, VerifyResult& out) {
  SuiteRunner run("structure", seed, out);
  run.repeat(25, 1, "structure.instances", [&](std::uint64_t s) {
    Rng rng(s);
    const std::vector<BlockShape> shapes = random_shapes(rng.integer(2, 6), rng);
    const StructuredInstance inst = structured_instance(shapes, derive_seed(s, 1));
    const QuantumChannel omega = compose(petz_map(inst.channel, inst.sigma), inst.channel);
    const BlockStructure st = decompose(omega, inst.sigma, {.seed = derive_seed(s, 2)});
    const StructureCheck c = check_structure(st);
    run.check("decompose.reconstruction", 1e-8).observe(c.reconstruction, s);
    run.check("decompose.dimensions", 0.0).observe(c.dims_ok ? 0.0 : 1.0, s);
    run.check("decompose.block_count", 0.0).observe(st.blocks.size() == shapes.size() ? 0.0 : 1.0, s);

    const ConditionalExpectation e = conditional_expectation(omega, inst.sigma);
    const Index d = inst.sigma.dim();
    const ComplexMatrix& em = e.map.matrix();
    run.check("expectation.idempotent", 1e-8).observe((em * em - em).norm(), s);
    run.check("expectation.unital", 1e-10).observe((e(ComplexMatrix::Identity(d, d)) - ComplexMatrix::Identity(d, d)).norm(), s);
    run.check("expectation.preserves_sigma", 1e-9)
        .observe(trace_norm(e.adjoint().apply(inst.sigma.matrix()) - inst.sigma.matrix()), s);
    const ComplexMatrix a = detail::random_complex_combination(e.fixed_algebra_basis, rng);
    const ComplexMatrix b = detail::random_complex_combination(e.fixed_algebra_basis, rng);
    const ComplexMatrix x = complex_gaussian(d, d, rng);
    run.check("expectation.module_property", 1e-8).observe((e(a * x * b) - a * e(x) * b).norm(), s);
    run.check("fixed_points.principal_angle", 1e-7)
        .observe(max_principal_angle(fixed_space(SuperOperator::of_channel(omega)), fixed_space(e.adjoint())), s);

    const DensityMatrix member = build_sufficient_instance(st, derive_seed(s, 3));
    const DensityMatrix generic = random_state(d, d, derive_seed(s, 4));
    for (const DensityMatrix* rho : {&member, &generic, &inst.sigma}) {
      const bool in = membership_test(*rho, st, 1e-7);
      const bool suff = is_sufficient(inst.channel, *rho, inst.sigma, {.tol_suff = 1e-7}).sufficient;
      run.check("membership.agrees_with_sufficiency", 0.0).observe(in == suff ? 0.0 : 1.0, s);
    }
  });
}

}  // namespace detail

/// Runs one suite or "all". Throws DomainError for an unknown suite name.
inline VerifyResult run_verify(const std::string& suite, std::uint64_t seed = 20260101) {
  using Runner = void (*)(std::uint64_t, VerifyResult&);
  const std::vector<std::pair<std::string, Runner>> table{{"lp", detail::suite_lp},
                                                          {"divergences", detail::suite_divergences},
                                                          {"recovery", detail::suite_recovery},
                                                          {"structure", detail::suite_structure}};
  VerifyResult out;
  bool found = false;
  for (const auto& [name, runner] : table) {
    if (suite == "all" || suite == name) {
      runner(seed, out);
      found = true;
    }
  }
  if (!found) throw DomainError("unknown suite '" + suite + "'");
  return out;
}

}  // namespace qsuff

#endif  // QSUFF_VERIFY_HPP_
