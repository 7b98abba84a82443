#include "evostab/probes.hpp"

#include <cmath>

namespace evostab {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

GridFunction canonical_probe(int index, std::uint64_t seed, double dt) {
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(index + 1));
  const int family = index % 6;
  const double t0 = uniform_in(rng, -5.0, 5.0);
  switch (family) {
    case 0: {  // window characteristic
      const double len = uniform_in(rng, 0.2, 6.0);
      const double h = uniform_in(rng, 0.1, 3.0);
      return GridFunction::sample([h](double) { return h; }, t0, t0 + len, dt);
    }
    case 1: {  // two narrow spikes slightly more than a unit apart
      const double w = uniform_in(rng, 2.0, 6.0) * dt;
      const double gap = 1.0 + uniform_in(rng, 1.0, 10.0) * dt;
      const double h = uniform_in(rng, 0.5, 4.0) / w;
      return GridFunction::sample(
          [=](double t) {
            const double d1 = std::abs(t - t0 - 1.0);
            const double d2 = std::abs(t - t0 - 1.0 - gap);
            return (d1 <= w || d2 <= w) ? h : 0.0;
          },
          t0, t0 + gap + 2.0, dt);
    }
    case 2: {  // damped oscillation mix
      const double a1 = gaussian(rng), a2 = gaussian(rng), a3 = gaussian(rng);
      const double w1 = uniform_in(rng, 0.3, 4.0), w2 = uniform_in(rng, 0.3, 4.0), w3 = uniform_in(rng, 0.3, 4.0);
      const double len = uniform_in(rng, 2.0, 8.0);
      const double mid = t0 + 0.5 * len;
      return GridFunction::sample(
          [=](double t) {
            const double e = std::exp(-0.5 * (t - mid) * (t - mid));
            return e * (a1 * std::sin(w1 * t) + a2 * std::cos(w2 * t) + a3 * std::sin(w3 * t + 1.0));
          },
          t0, t0 + len, dt);
    }
    case 3: {  // rough noise
      const double len = uniform_in(rng, 1.0, 6.0);
      const std::size_t n = GridFunction::node_count(t0, t0 + len, dt);
      std::vector<double> v(n);
      for (auto& x : v) x = uniform_in(rng, -1.0, 1.0);
      return GridFunction(t0, dt, std::move(v));
    }
    case 4: {  // exponential bump
      const double lam = uniform_in(rng, 0.3, 3.0);
      const double len = uniform_in(rng, 3.0, 10.0);
      const double mid = t0 + 0.5 * len;
      const double h = uniform_in(rng, 0.2, 2.0);
      return GridFunction::sample([=](double t) { return h * std::exp(-lam * std::abs(t - mid)); }, t0, t0 + len, dt);
    }
    default: {  // truncated power decay, already nonincreasing on its support
      const double len = uniform_in(rng, 1.0, 6.0);
      const double expo = uniform_in(rng, 0.2, 0.8);
      return GridFunction::sample([=](double t) { return std::pow(t - t0 + dt, -expo); }, t0, t0 + len, dt);
    }
  }
}

std::vector<GridFunction> canonical_probes(int budget, std::uint64_t seed, double dt) {
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(budget));
  for (int k = 0; k < budget; ++k) out.push_back(canonical_probe(k, seed, dt));
  return out;
}

std::pair<double, double> random_node_window(const GridFunction& f, std::mt19937_64& rng, std::size_t min_cells) {
  const std::size_t n = f.size();
  if (n < 2) return {f.t_start(), f.t_start()};
  const std::size_t cells = n - 1;
  const std::size_t span = std::min(cells, std::max<std::size_t>(min_cells, 1));
  const std::size_t i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(cells - span + 1));
  const std::size_t j = i + span + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(cells - i - span + 1));
  return {f.node(i), f.node(std::min(j, cells))};
}

}  // namespace evostab
