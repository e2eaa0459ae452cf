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

// Randomized sweeps over (Phi, rho, sigma) with a deterministic JSON report.

#ifndef QSUFF_EXPERIMENT_HPP_
#define QSUFF_EXPERIMENT_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsuff/divergences.hpp"
#include "qsuff/fixed_point.hpp"
#include "qsuff/instances.hpp"
#include "qsuff/io.hpp"
#include "qsuff/quantum.hpp"
#include "qsuff/random.hpp"
#include "qsuff/recovery.hpp"
#include "qsuff/sigma_lp.hpp"

#ifndef QSUFF_VERSION
#define QSUFF_VERSION "0.1.0"
#endif

namespace qsuff {

enum class ExperimentMode { Mixed, Random, Sufficient, Identity };

inline std::string to_string(ExperimentMode m) {
  switch (m) {
    case ExperimentMode::Mixed: return "mixed";
    case ExperimentMode::Random: return "random";
    case ExperimentMode::Sufficient: return "sufficient";
    case ExperimentMode::Identity: return "identity";
  }
  return "unknown";
}

inline ExperimentMode parse_experiment_mode(const std::string& s) {
  if (s == "mixed") return ExperimentMode::Mixed;
  if (s == "random") return ExperimentMode::Random;
  if (s == "sufficient") return ExperimentMode::Sufficient;
  if (s == "identity") return ExperimentMode::Identity;
  throw DomainError("unknown experiment mode '" + s + "'");
}

struct ExperimentTolerances {
  double dpi = 1e-9;       // smallest admissible gap
  double suff = 1e-6;      // recovery error below which rho counts as recovered
  double gap_zero = 1e-10; // alpha = 2 gap treated as zero
  double constructed = 1e-8;
};

/// `dim` is the largest dimension drawn; `env_dim` the largest environment.
struct ExperimentConfig {
  Index dim = 4;
  Index env_dim = 2;
  int trials = 10;
  std::vector<double> alphas{1.5, 2.0, 4.0};
  std::uint64_t seed = 0;
  ExperimentMode mode = ExperimentMode::Mixed;
  ExperimentTolerances tolerances;
  std::string output_path;

  void validate() const {
    if (trials < 1) throw ValidationError("experiment: trials must be >= 1");
    if (dim < 2) throw ValidationError("experiment: dim must be >= 2");
    if (env_dim < 1) throw ValidationError("experiment: env_dim must be >= 1");
    if (alphas.empty()) throw ValidationError("experiment: alphas must not be empty");
    for (double a : alphas) {
      if (!(a > 1.0 + 1e-3) || std::isinf(a)) throw ValidationError("experiment: every alpha must exceed 1 + 1e-3");
    }
  }
};

struct TrialRecord {
  int index = 0;
  std::uint64_t seed = 0;
  std::string kind;  // random | sufficient | identity
  Index dim = 0;
  Index env_dim = 0;
  std::vector<std::pair<double, std::optional<double>>> gaps;  // (alpha, gap)
  std::optional<double> gap2;
  double recovery_error = 0.0;
  bool recovered = false;
  bool biconditional_ok = true;
  double three_lines_min_slack = kInfinity;
  bool passed = true;
  std::string error;
};

struct ExperimentAggregates {
  int total = 0;
  int passed = 0;
  int failed = 0;
  int errors = 0;
  int recovered = 0;
  int biconditional_violations = 0;
  double min_gap = kInfinity;
  double max_recovery_error_constructed = 0.0;
  double min_three_lines_slack = kInfinity;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  ExperimentAggregates aggregates;
  std::string version = QSUFF_VERSION;
};

inline ExperimentAggregates aggregate(const std::vector<TrialRecord>& records) {
  ExperimentAggregates a;
  for (const auto& r : records) {
    ++a.total;
    if (!r.error.empty()) {
      ++a.errors;
      ++a.failed;
      continue;
    }
    r.passed ? ++a.passed : ++a.failed;
    if (r.recovered) ++a.recovered;
    if (!r.biconditional_ok) ++a.biconditional_violations;
    for (const auto& [alpha, gap] : r.gaps) {
      if (gap) a.min_gap = std::min(a.min_gap, *gap);
    }
    if (r.kind != "random") a.max_recovery_error_constructed = std::max(a.max_recovery_error_constructed, r.recovery_error);
    a.min_three_lines_slack = std::min(a.min_three_lines_slack, r.three_lines_min_slack);
  }
  return a;
}

namespace detail {

struct TrialInstance {
  QuantumChannel channel;
  DensityMatrix rho;
  DensityMatrix sigma;
  std::string kind;
  Index env_dim;
};

inline TrialInstance draw_instance(const ExperimentConfig& cfg, int index, std::uint64_t seed) {
  Rng rng(seed);
  const Index dim = rng.integer(2, cfg.dim);
  const Index env = rng.integer(1, cfg.env_dim);
  ExperimentMode mode = cfg.mode;
  if (mode == ExperimentMode::Mixed) mode = index % 2 == 0 ? ExperimentMode::Random : ExperimentMode::Sufficient;
  switch (mode) {
    case ExperimentMode::Identity: {
      return {identity_channel(dim), random_state(dim, rng.integer(1, dim), derive_seed(seed, 1)),
              random_state(dim, dim, derive_seed(seed, 2)), "identity", 1};
    }
    case ExperimentMode::Sufficient: {
      const StructuredInstance inst = structured_instance(random_shapes(dim, rng), derive_seed(seed, 3), env);
      const BlockStructure s = decompose_channel(inst.channel, inst.sigma, {.seed = derive_seed(seed, 4)});
      return {inst.channel, build_sufficient_instance(s, derive_seed(seed, 5)), inst.sigma, "sufficient", env};
    }
    default: {
      // dim_out * env >= dim is required by the Stinespring construction.
      const Index dout = std::max<Index>(rng.integer(1, dim), (dim + env - 1) / env);
      return {random_channel(dim, dout, env, derive_seed(seed, 6)), random_state(dim, rng.integer(1, dim), derive_seed(seed, 7)),
              random_state(dim, dim, derive_seed(seed, 8)), "random", env};
    }
  }
}

}  // namespace detail

inline TrialRecord run_trial(const ExperimentConfig& cfg, int index) {
  TrialRecord r;
  r.index = index;
  r.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(index));
  try {
    const detail::TrialInstance inst = detail::draw_instance(cfg, index, r.seed);
    r.kind = inst.kind;
    r.dim = inst.rho.dim();
    r.env_dim = inst.env_dim;
    for (double alpha : cfg.alphas) {
      r.gaps.emplace_back(alpha, dpi_gap(inst.channel, inst.rho, inst.sigma, alpha, DivergenceKind::RenyiSandwiched).gap);
    }
    r.gap2 = dpi_gap(inst.channel, inst.rho, inst.sigma, 2.0, DivergenceKind::RenyiSandwiched).gap;
    r.recovery_error = recovery_error(inst.channel, inst.rho, inst.sigma);
    r.recovered = r.recovery_error <= cfg.tolerances.suff;
    const bool gap_zero = r.gap2 && std::abs(*r.gap2) <= cfg.tolerances.gap_zero;
    r.biconditional_ok = gap_zero == r.recovered;

    const SigmaLpContext ctx(inst.sigma);
    const InterpolationFunction f(inst.rho.matrix(), cfg.alphas.front(), ctx);
    const ThreeLinesReport tl = three_lines_check(f, ctx, linspace(0.1, 0.9, 9), {.t_grid = {-2.0, -1.0, 0.0, 1.0, 2.0}});
    r.three_lines_min_slack = tl.min_slack;

    bool ok = r.biconditional_ok && tl.holds;
    for (const auto& [alpha, gap] : r.gaps) ok = ok && gap && *gap >= -cfg.tolerances.dpi;
    if (r.kind != "random") {
      ok = ok && r.recovery_error <= cfg.tolerances.constructed;
      for (const auto& [alpha, gap] : r.gaps) ok = ok && gap && std::abs(*gap) <= cfg.tolerances.dpi;
    }
    r.passed = ok;
  } catch (const Error& e) {
    r.passed = false;
    r.error = e.what();
  }
  return r;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep;
  rep.config = cfg;
  for (int i = 0; i < cfg.trials; ++i) rep.records.push_back(run_trial(cfg, i));
  rep.aggregates = aggregate(rep.records);
  return rep;
}

namespace io {

inline Json config_to_json(const ExperimentConfig& c) {
  return {{"dim", c.dim},
          {"env_dim", c.env_dim},
          {"trials", c.trials},
          {"alphas", c.alphas},
          {"seed", c.seed},
          {"mode", to_string(c.mode)},
          {"tolerances",
           {{"dpi", c.tolerances.dpi},
            {"suff", c.tolerances.suff},
            {"gap_zero", c.tolerances.gap_zero},
            {"constructed", c.tolerances.constructed}}},
          {"output_path", c.output_path}};
}

/// Missing fields keep their defaults.
inline ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("experiment config must be a JSON object");
  ExperimentConfig c;
  try {
    if (j.contains("dim")) c.dim = j.at("dim").get<Index>();
    if (j.contains("env_dim")) c.env_dim = j.at("env_dim").get<Index>();
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("alphas")) c.alphas = j.at("alphas").get<std::vector<double>>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("mode")) c.mode = parse_experiment_mode(j.at("mode").get<std::string>());
    if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
    if (j.contains("tolerances")) {
      const Json& t = j.at("tolerances");
      if (t.contains("dpi")) c.tolerances.dpi = t.at("dpi").get<double>();
      if (t.contains("suff")) c.tolerances.suff = t.at("suff").get<double>();
      if (t.contains("gap_zero")) c.tolerances.gap_zero = t.at("gap_zero").get<double>();
      if (t.contains("constructed")) c.tolerances.constructed = t.at("constructed").get<double>();
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  return c;
}

inline Json record_to_json(const TrialRecord& r) {
  Json gaps = Json::array();
  for (const auto& [alpha, gap] : r.gaps) gaps.push_back({{"alpha", alpha}, {"gap", optional_real_to_json(gap)}});
  Json j = {{"index", r.index},
            {"seed", r.seed},
            {"kind", r.kind},
            {"dim", r.dim},
            {"env_dim", r.env_dim},
            {"gaps", std::move(gaps)},
            {"gap_alpha2", optional_real_to_json(r.gap2)},
            {"recovery_error", real_to_json(r.recovery_error)},
            {"recovered", r.recovered},
            {"biconditional_ok", r.biconditional_ok},
            {"three_lines_min_slack", real_to_json(r.three_lines_min_slack)},
            {"passed", r.passed}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline Json report_to_json(const ExperimentReport& rep) {
  Json records = Json::array();
  for (const auto& r : rep.records) records.push_back(record_to_json(r));
  const ExperimentAggregates& a = rep.aggregates;
  return {{"version", rep.version},
          {"config", config_to_json(rep.config)},
          {"records", std::move(records)},
          {"aggregates",
           {{"total", a.total},
            {"passed", a.passed},
            {"failed", a.failed},
            {"errors", a.errors},
            {"recovered", a.recovered},
            {"biconditional_violations", a.biconditional_violations},
            {"min_gap", real_to_json(a.min_gap)},
            {"max_recovery_error_constructed", real_to_json(a.max_recovery_error_constructed)},
            {"min_three_lines_slack", real_to_json(a.min_three_lines_slack)}}}};
}

}  // namespace io

}  // namespace qsuff

#endif  // QSUFF_EXPERIMENT_HPP_
