#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "evostab/spaces.hpp"

namespace evostab {

struct AxiomCheck {
  std::string name;
  bool passed = false;
  double worst_margin = 0.0;  // smallest slack seen; negative means violated
  std::string note;
};

struct AxiomSuiteResult {
  std::vector<AxiomCheck> checks;
  SpaceConstants constants;
  bool all_passed() const;
};

using NormFn = std::function<double(const GridFunction&)>;

/**
 * Numerical verification of the function-space axioms on seeded probes:
 * monotone norm, window-characteristic positivity, the averaging inequality,
 * the embedding into the unit-window-average space, shift isometry, and
 * closedness under the sliding unit-window average.
 *
 * For spaces whose averaging constant is analytic the averaging/embedding
 * margins are hard theorems; for estimated constants they validate the
 * lower-bound bookkeeping (the estimator maximizes over the same probe and
 * window stream the suite replays).
 */
AxiomSuiteResult run_axiom_suite(const SpaceSpec& space, int probe_budget, std::uint64_t seed = kDefaultSeed,
                                 double dt = 1e-2);

/// Core of the suite with an injectable norm, for testing that the suite
/// catches broken norms. Runs every check that does not need a second space.
AxiomSuiteResult run_axiom_suite_on(const NormFn& norm_e, const SpaceConstants& constants, int probe_budget,
                                    std::uint64_t seed, double dt);

/// The window sequence the averaging checks and the constant estimator share:
/// full support, the best unit window, then eight random node-aligned windows.
std::vector<std::pair<double, double>> averaging_windows(const GridFunction& f, std::mt19937_64& rng);

/// Largest unit-window integral of |f| and the node where it starts.
std::pair<double, double> best_unit_window(const GridFunction& f);

}  // namespace evostab
