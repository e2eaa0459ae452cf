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

// qsuff command-line front end.
//
// Exit codes: 0 ok, 1 parse/validation error, 2 support violation,
// 3 decomposition retries exhausted, 4 verification failure.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qsuff/qsuff.hpp"

namespace {

enum ExitCode : int { kOk = 0, kInputError = 1, kSupportViolation = 2, kDecompositionFailed = 3, kVerifyFailed = 4 };

double env_tolerance(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0)) {
    throw qsuff::ParseError(std::string(name) + " must be a positive number, got '" + raw + "'");
  }
  return v;
}

void emit(const qsuff::io::Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << qsuff::io::dump(j);
  } else {
    qsuff::io::write_json_file(path, j);
  }
}

struct ComputeArgs {
  std::string rho;
  std::string sigma;
  std::string kind = "sandwiched";
  std::optional<double> alpha;
  bool bits = false;
};

int cmd_compute(const ComputeArgs& a) {
  const auto kind = qsuff::parse_divergence_kind(a.kind);
  const auto rho = qsuff::io::load_state(a.rho);
  const auto sigma = qsuff::io::load_state(a.sigma);
  const auto result = qsuff::divergence(kind, rho, sigma, qsuff::needs_alpha(kind) ? a.alpha : std::nullopt);
  std::cout << qsuff::io::dump(qsuff::io::divergence_to_json(result, a.bits));
  return result.support_violation ? kSupportViolation : kOk;
}

struct PetzArgs {
  std::string channel;
  std::string sigma;
  std::string output;
};

int cmd_petz(const PetzArgs& a) {
  const auto phi = qsuff::io::load_channel(a.channel);
  const auto sigma = qsuff::io::load_state(a.sigma);
  const auto petz = qsuff::petz_map(phi, sigma);
  const auto v = petz.validate();
  if (!v.ok) {
    throw qsuff::ValidationError("recovery map failed CPTP validation (trace residual " +
                                 std::to_string(v.trace_preservation_residual) + ", Choi minimum " +
                                 std::to_string(v.choi_min_eigenvalue) + ")");
  }
  emit(qsuff::io::channel_to_json(petz), a.output);
  return kOk;
}

struct SufficiencyArgs {
  std::string channel;
  std::string rho;
  std::string sigma;
  double alpha = 2.0;
  std::optional<double> tol;
};

int cmd_sufficiency(const SufficiencyArgs& a) {
  const auto phi = qsuff::io::load_channel(a.channel);
  const auto rho = qsuff::io::load_state(a.rho);
  const auto sigma = qsuff::io::load_state(a.sigma);
  qsuff::SufficiencyOptions opts;
  opts.tol_suff = a.tol.value_or(env_tolerance("QSUFF_TOL_SUFF", opts.tol_suff));
  opts.tol_gap = env_tolerance("QSUFF_TOL_GAP", opts.tol_gap);
  if (!(a.alpha > 1.0)) throw qsuff::DomainError("--alpha must exceed 1");
  const auto report = qsuff::main_theorem_experiment(phi, rho, sigma, a.alpha, opts);
  std::cout << qsuff::io::dump(qsuff::io::sufficiency_to_json(report));
  return kOk;
}

struct StructureArgs {
  std::string channel;
  std::string sigma;
  std::string output;
  std::uint64_t seed = qsuff::DecomposeOptions{}.seed;
};

int cmd_structure(const StructureArgs& a) {
  const auto phi = qsuff::io::load_channel(a.channel);
  const auto sigma = qsuff::io::load_state(a.sigma);
  qsuff::DecomposeOptions opts;
  opts.seed = a.seed;
  emit(qsuff::io::structure_to_json(qsuff::decompose_channel(phi, sigma, opts)), a.output);
  return kOk;
}

struct ExperimentArgs {
  std::string config;
  std::uint64_t seed = 0;
  std::optional<qsuff::Index> dim;
  std::optional<qsuff::Index> env_dim;
  std::optional<int> trials;
  std::vector<double> alphas;
  std::optional<std::string> mode;
  std::string output;
};

int cmd_experiment(const ExperimentArgs& a) {
  qsuff::ExperimentConfig cfg =
      a.config.empty() ? qsuff::ExperimentConfig{} : qsuff::io::config_from_json(qsuff::io::read_json_file(a.config));
  cfg.seed = a.seed;
  if (a.dim) cfg.dim = *a.dim;
  if (a.env_dim) cfg.env_dim = *a.env_dim;
  if (a.trials) cfg.trials = *a.trials;
  if (!a.alphas.empty()) cfg.alphas = a.alphas;
  if (a.mode) cfg.mode = qsuff::parse_experiment_mode(*a.mode);
  if (!a.output.empty()) cfg.output_path = a.output;
  const qsuff::ExperimentReport rep = qsuff::run_experiment(cfg);
  emit(qsuff::io::report_to_json(rep), cfg.output_path);
  const auto& g = rep.aggregates;
  std::cerr << "trials " << g.total << ", passed " << g.passed << ", failed " << g.failed << ", min gap "
            << g.min_gap << "\n";
  return kOk;
}

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 20260101;
};

int cmd_verify(const VerifyArgs& a) {
  const qsuff::VerifyResult r = qsuff::run_verify(a.suite, a.seed);
  for (const auto& c : r.checks) {
    std::cout << (c.passed() ? "PASS " : "FAIL ") << c.suite << '.' << c.name << "  worst " << c.worst
              << (c.at_most ? " <= " : " >= ") << c.threshold << "  (" << c.samples << " samples)";
    if (!c.passed()) {
      std::cout << "  seeds:";
      for (auto s : c.failing_seeds) std::cout << ' ' << s;
      if (!c.error.empty()) std::cout << "  error: " << c.error;
    }
    std::cout << '\n';
  }
  std::cout << (r.ok() ? "verify: ok" : "verify: FAILED") << '\n';
  return r.ok() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum sufficiency toolkit: divergences, Petz recovery, fixed-point structure"};
  app.set_version_flag("--version", std::string(QSUFF_VERSION));
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Divergence between two states");
  c->add_option("--rho", compute.rho, "State file")->required();
  c->add_option("--sigma", compute.sigma, "Reference state file")->required();
  c->add_option("--kind", compute.kind, "umegaki | standard | sandwiched | dmax")->capture_default_str();
  c->add_option("--alpha", compute.alpha, "Renyi order");
  c->add_flag("--bits", compute.bits, "Report in bits instead of nats");

  PetzArgs petz;
  auto* p = app.add_subcommand("petz", "Write the Petz recovery map of a channel");
  p->add_option("--channel", petz.channel, "Channel file")->required();
  p->add_option("--sigma", petz.sigma, "Reference state file")->required();
  p->add_option("-o,--output", petz.output, "Output channel file (stdout if omitted)");

  SufficiencyArgs suff;
  auto* s = app.add_subcommand("sufficiency", "Test sufficiency of a channel for {rho, sigma}");
  s->add_option("--channel", suff.channel, "Channel file")->required();
  s->add_option("--rho", suff.rho, "State file")->required();
  s->add_option("--sigma", suff.sigma, "Reference state file")->required();
  s->add_option("--alpha", suff.alpha, "Sandwiched Renyi order (> 1)")->capture_default_str();
  s->add_option("--tol", suff.tol, "Recovery-error tolerance (default 1e-8, or QSUFF_TOL_SUFF)");

  StructureArgs structure;
  auto* st = app.add_subcommand("structure", "Block factorization of the sufficient states");
  st->add_option("--channel", structure.channel, "Channel file")->required();
  st->add_option("--sigma", structure.sigma, "Faithful reference state file")->required();
  st->add_option("-o,--output", structure.output, "Output file (stdout if omitted)");
  st->add_option("--seed", structure.seed, "Seed for the random splitting elements")->capture_default_str();

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "Randomized sweep with a JSON report");
  e->add_option("--config", exp.config, "Experiment config file");
  e->add_option("--seed", exp.seed, "Base seed")->required();
  e->add_option("--dim", exp.dim, "Largest dimension");
  e->add_option("--env-dim", exp.env_dim, "Largest environment dimension");
  e->add_option("--trials", exp.trials, "Number of trials");
  e->add_option("--alphas", exp.alphas, "Sandwiched orders (> 1.001)")->delimiter(',');
  e->add_option("--mode", exp.mode, "mixed | random | sufficient | identity");
  e->add_option("-o,--output", exp.output, "Report file (stdout if omitted)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run invariant suites");
  v->add_option("--suite", verify.suite, "lp | divergences | recovery | structure | all")->capture_default_str();
  v->add_option("--seed", verify.seed, "Base seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kInputError;
  }

  try {
    if (*c) return cmd_compute(compute);
    if (*p) return cmd_petz(petz);
    if (*s) return cmd_sufficiency(suff);
    if (*st) return cmd_structure(structure);
    if (*e) return cmd_experiment(exp);
    if (*v) return cmd_verify(verify);
  } catch (const qsuff::SupportError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kSupportViolation;
  } catch (const qsuff::DecompositionError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kDecompositionFailed;
  } catch (const qsuff::Error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
