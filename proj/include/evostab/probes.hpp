#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "evostab/grid_function.hpp"

namespace evostab {

/// Deterministic uniform draw in [0, 1); pinned to the raw mt19937_64 stream
/// so seeded outputs are stable across standard libraries.
double uniform01(std::mt19937_64& rng);

double uniform_in(std::mt19937_64& rng, double lo, double hi);

/// Standard normal via Box-Muller on the pinned uniform stream.
double gaussian(std::mt19937_64& rng);

/**
 * The canonical probe family used both by constant estimation and by the
 * axiom suite: window characteristics, separated spike pairs, damped
 * oscillations, rough noise, exponential bumps, and truncated power decays.
 * Probe k is a pure function of (seed, k), so a larger budget extends a
 * smaller one instead of reshuffling it.
 */
std::vector<GridFunction> canonical_probes(int budget, std::uint64_t seed, double dt = 1e-2);

/// One probe of the family (0-indexed).
GridFunction canonical_probe(int index, std::uint64_t seed, double dt = 1e-2);

/// A node-aligned window [a, b] inside f's support, at least min_cells wide.
std::pair<double, double> random_node_window(const GridFunction& f, std::mt19937_64& rng, std::size_t min_cells = 4);

}  // namespace evostab
