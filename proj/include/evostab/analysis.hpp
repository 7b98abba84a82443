#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "evostab/corpus.hpp"
#include "evostab/datko.hpp"

namespace evostab {

using Json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct T0GridSpec {
  std::size_t count = 32;
  std::optional<double> lo;  // defaults: 0 on the half-line, -25 on the line
  std::optional<double> hi;  // defaults: 50 on the half-line, +25 on the line
};

struct ProbeSpec {
  int random_count = 8;
  std::uint64_t seed = kDefaultSeed;
};

struct VerifySpec {
  double duration = 100.0;
  double step = 0.05;
};

struct AnalysisConfig {
  std::string corpus_name;            // empty when an inline system is given
  std::optional<Json> inline_system;  // see family_from_json for the schema
  SpaceSpec space = SpaceSpec::lp(2.0);
  TimeDomain domain = TimeDomain::HalfLine;
  T0GridSpec t0_grid;
  HorizonPolicy horizon;
  ProbeSpec probes;
  double certificate_q = 0.5;
  VerifySpec verify;
};

/// Parses and validates the analyze config document. Throws ConfigError with
/// a message naming the offending field.
AnalysisConfig parse_config(const Json& doc);

/**
 * Builds an evolution family from an inline system definition:
 *   {"type":"scalar", "a":<entry>, "exp_bound":{"K":..,"c":..}}
 *   {"type":"ode", "dim":n, "matrix":[[<entry>,..],..], "step":h, "exp_bound":..}
 *   {"type":"semigroup", "matrix":[[num,..],..], "exp_bound":..}
 *   {"type":"periodic", "period":T, "base":<system>}
 * where <entry> is a number, {"constant":c},
 * {"sinusoidal":{"offset":a,"amplitude":b,"omega":w,"phase":p}} for
 * a + b sin(w t + p), or {"schedule":{"times":[..],"values":[..]}} for a
 * piecewise-constant coefficient.
 */
EvolutionFamily family_from_json(const Json& system, TimeDomain domain);

/// Typed mirror of the emitted report document, for exact round-tripping.
struct AnalysisReport {
  std::string system;
  SpaceSpec space = SpaceSpec::lp(2.0);
  SpaceConstants constants;
  DatkoReport datko;
  SeminormEstimate seminorms;
  StabilityCertificate certificate;
  double fit_decay_coeff = 0.0;  // empirical, never certified
  double fit_decay_rate = 0.0;

  bool operator==(const AnalysisReport& other) const;
};

Json report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const Json& doc);

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConstraint = 3;
inline constexpr int kExitDivergent = 4;

struct AnalysisOutputs {
  int exit_code = kExitInternal;
  AnalysisReport report;
  std::string csv_sup;    // RFC-4180, columns t0,M_x,flag
  std::string csv_decay;  // RFC-4180, columns s,norm_probe_max
};

/// Full pipeline: trajectory-norm sweep, uniform seminorm bound, certificate
/// chain, verification, and the empirical decay fit. Deterministic for a
/// fixed config (all randomness flows from the probe seed).
AnalysisOutputs run_analysis(const AnalysisConfig& config);

/// Corpus listing as a JSON array with ground-truth constants.
Json corpus_to_json(const std::string& name_filter = "");

}  // namespace evostab
