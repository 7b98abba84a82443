#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evostab/evolution.hpp"

namespace evostab {

enum class StabilityClass { Stable, MarginallyStable, Unstable };

struct GroundTruth {
  StabilityClass cls = StabilityClass::Stable;
  std::optional<double> decay_coeff;  // K1 satisfying the decay bound
  std::optional<double> decay_rate;   // alpha
};

struct CorpusEntry {
  std::string name;
  EvolutionFamily family;
  GroundTruth truth;
  std::string oracle_note;
};

/// Built-in families with known ground-truth stability, used as oracles and
/// for CLI demos.
const std::vector<CorpusEntry>& corpus();

const CorpusEntry& find_corpus_entry(const std::string& name);

/// One-period propagator of a periodic system's base family.
Eigen::MatrixXd monodromy_matrix(const EvolutionFamily& family, double period);

double spectral_radius(const Eigen::MatrixXd& m);

}  // namespace evostab
