#include "evostab/corpus.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace evostab {

namespace {

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> entries;

  entries.push_back({"scalar-decay",
                     EvolutionFamily::scalar([](double) { return -1.0; }, {1.0, 1.0}, TimeDomain::HalfLine,
                                             [](double t) { return -t; }),
                     {StabilityClass::Stable, 1.0, 1.0},
                     "x' = -x; ||U(t,s)|| = e^{-(t-s)} exactly"});

  entries.push_back({"identity",
                     EvolutionFamily::scalar([](double) { return 0.0; }, {1.0, 1.0}, TimeDomain::HalfLine,
                                             [](double) { return 0.0; }),
                     {StabilityClass::MarginallyStable, std::nullopt, std::nullopt},
                     "U(t,s) = Id; bounded but with no decay"});

  entries.push_back({"scalar-growth",
                     EvolutionFamily::scalar([](double) { return 0.1; }, {1.0, 0.2}, TimeDomain::HalfLine,
                                             [](double t) { return 0.1 * t; }),
                     {StabilityClass::Unstable, std::nullopt, std::nullopt},
                     "x' = 0.1 x; ||U(t,s)|| = e^{0.1 (t-s)} grows"});

  {
    Eigen::MatrixXd jordan(2, 2);
    jordan << -1.0, 4.0, 0.0, -1.0;
    entries.push_back({"jordan-transient",
                       EvolutionFamily::semigroup(jordan, {2.0, 1.0}),
                       {StabilityClass::Stable, 3.0, 0.5},
                       "e^{tA} = e^{-t} [[1,4t],[0,1]]; ||e^{tA}|| = e^{-t} (2t + sqrt(4t^2+1)), "
                       "transient peak ~1.57 at t~0.87, below 3 e^{-t/2}"});
  }

  {
    const double swing = std::exp(0.9 / M_PI);  // bound on the oscillating part of exp(-int a)
    auto base = EvolutionFamily::linear_ode(
        1,
        [](double t) {
          Eigen::MatrixXd a(1, 1);
          a(0, 0) = -1.0 + 0.9 * std::sin(2.0 * M_PI * t);
          return a;
        },
        {swing, 1.0});
    entries.push_back({"periodic-damped",
                       EvolutionFamily::periodic(std::move(base), 1.0),
                       {StabilityClass::Stable, swing, 1.0},
                       "x' = (-1 + 0.9 sin(2 pi t)) x; mean coefficient -1 per period, "
                       "||U(t,s)|| <= e^{0.9/pi} e^{-(t-s)}"});
  }

  {
    Eigen::MatrixXd rot(2, 2);
    rot << -0.2, 1.0, -1.0, -0.2;
    entries.push_back({"rotation-decay",
                       EvolutionFamily::semigroup(rot, {1.0, 0.2}),
                       {StabilityClass::Stable, 1.0, 0.2},
                       "rotation times scalar damping; ||U(t,s)|| = e^{-0.2 (t-s)} exactly"});
  }

  return entries;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

const CorpusEntry& find_corpus_entry(const std::string& name) {
  for (const auto& entry : corpus())
    if (entry.name == name) return entry;
  throw std::invalid_argument("unknown corpus entry '" + name + "'");
}

Eigen::MatrixXd monodromy_matrix(const EvolutionFamily& family, double period) {
  return propagator_matrix(family, period, 0.0);
}

double spectral_radius(const Eigen::MatrixXd& m) {
  return m.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace evostab
