#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "evostab/analysis.hpp"
#include "evostab/axioms.hpp"

namespace {

using evostab::Json;

int write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot write " << path << "\n";
    return evostab::kExitInternal;
  }
  os << content;
  return 0;
}

std::string derive_decay_path(const std::string& csv_path) {
  const auto dot = csv_path.find_last_of('.');
  if (dot == std::string::npos || csv_path.find('/', dot) != std::string::npos) return csv_path + "_decay";
  return csv_path.substr(0, dot) + "_decay" + csv_path.substr(dot);
}

int cmd_analyze(const std::string& config_path, const std::string& out_path, const std::string& csv_path,
                const std::string& csv_decay_path) {
  Json doc;
  {
    std::ifstream is(config_path);
    if (!is) {
      std::cerr << "error: cannot read config " << config_path << "\n";
      return evostab::kExitConfig;
    }
    try {
      is >> doc;
    } catch (const std::exception& e) {
      std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
      return evostab::kExitConfig;
    }
  }

  evostab::AnalysisConfig config;
  try {
    config = evostab::parse_config(doc);
  } catch (const evostab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return evostab::kExitConfig;
  }

  evostab::AnalysisOutputs outputs;
  try {
    outputs = evostab::run_analysis(config);
  } catch (const evostab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return evostab::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return evostab::kExitInternal;
  }

  const std::string rendered = evostab::report_to_json(outputs.report).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << rendered;
  } else if (int rc = write_file(out_path, rendered); rc != 0) {
    return rc;
  }
  if (!csv_path.empty()) {
    if (int rc = write_file(csv_path, outputs.csv_sup); rc != 0) return rc;
    const std::string decay_path = csv_decay_path.empty() ? derive_decay_path(csv_path) : csv_decay_path;
    if (int rc = write_file(decay_path, outputs.csv_decay); rc != 0) return rc;
  }

  const auto& cert = outputs.report.certificate;
  if (cert.certified()) {
    std::fprintf(stderr, "certified: K1 = %.6g, alpha = %.6g (residual %.3g)\n", cert.decay_coeff, cert.decay_rate,
                 cert.verification_residual);
  } else {
    std::fprintf(stderr, "refused: %s\n", cert.refusal_reason.c_str());
  }
  return outputs.exit_code;
}

int cmd_axioms(const std::string& space_text, int budget, std::uint64_t seed) {
  evostab::SpaceSpec space = evostab::SpaceSpec::lp(2.0);
  try {
    space = evostab::SpaceSpec::parse(space_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return evostab::kExitConfig;
  }
  const evostab::AxiomSuiteResult result = evostab::run_axiom_suite(space, budget, seed);
  std::printf("axiom suite for %s (%d probes)\n", space.name().c_str(), budget);
  std::printf("  %-28s %-6s %s\n", "check", "status", "worst margin");
  for (const auto& check : result.checks) {
    std::printf("  %-28s %-6s %.3e%s%s\n", check.name.c_str(), check.passed ? "pass" : "FAIL", check.worst_margin,
                check.note.empty() ? "" : "  ", check.note.c_str());
  }
  std::printf("constants: m_avg = %.6g (%s), n_shift = %g, inf_chi = %.6g, lambda1_chi = %.6g\n",
              result.constants.m_avg, result.constants.m_avg_prov == evostab::Provenance::Analytic ? "analytic" : "estimated",
              result.constants.n_shift, result.constants.inf_chi, result.constants.lambda1_chi_norm);
  return result.all_passed() ? 0 : 1;
}

int cmd_corpus(bool as_json, const std::string& filter) {
  if (as_json) {
    std::cout << evostab::corpus_to_json(filter).dump(2) << "\n";
    return 0;
  }
  for (const auto& entry : evostab::corpus()) {
    if (!filter.empty() && entry.name.find(filter) == std::string::npos) continue;
    const char* cls = entry.truth.cls == evostab::StabilityClass::Stable          ? "stable"
                      : entry.truth.cls == evostab::StabilityClass::Unstable      ? "unstable"
                                                                                  : "marginally-stable";
    std::printf("%-18s %-18s", entry.name.c_str(), cls);
    if (entry.truth.decay_coeff) std::printf(" K1 = %-8.5g", *entry.truth.decay_coeff);
    if (entry.truth.decay_rate) std::printf(" alpha = %-8.5g", *entry.truth.decay_rate);
    std::printf("\n    %s\n", entry.oracle_note.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exponential-stability analysis of evolution families via trajectory norms"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path, csv_decay_path;
  auto* analyze = app.add_subcommand("analyze", "run the full analysis pipeline for a config");
  analyze->add_option("--config", config_path, "JSON config path")->required();
  analyze->add_option("--out", out_path, "report JSON output path (stdout when omitted)");
  analyze->add_option("--csv", csv_path, "CSV output path for the per-t0 trajectory norms");
  analyze->add_option("--csv-decay", csv_decay_path, "CSV output path for the decay profile");

  std::string space_text = "L2";
  int budget = 200;
  std::uint64_t seed = evostab::kDefaultSeed;
  auto* axioms = app.add_subcommand("axioms", "run the function-space axiom suite");
  axioms->add_option("--space", space_text, "space spec: L<p>, L<p>,<q>, M, Linf")->required();
  axioms->add_option("--budget", budget, "number of probes")->check(CLI::PositiveNumber);
  axioms->add_option("--seed", seed, "probe seed");

  bool as_json = false;
  std::string filter;
  auto* corpus_cmd = app.add_subcommand("corpus", "list the built-in system corpus");
  corpus_cmd->add_flag("--json", as_json, "machine-readable output");
  corpus_cmd->add_option("--name", filter, "substring filter");

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) return cmd_analyze(config_path, out_path, csv_path, csv_decay_path);
  if (axioms->parsed()) return cmd_axioms(space_text, budget, seed);
  return cmd_corpus(as_json, filter);
}
