#include <doctest.h>

#include <cmath>

#include "evostab/axioms.hpp"

using namespace evostab;

TEST_CASE("axiom suite passes for every implemented space") {
  for (const auto& space : {SpaceSpec::lp(1.0), SpaceSpec::lp(2.0), SpaceSpec::lp(4.0), SpaceSpec::lorentz(2.0, 1.0),
                            SpaceSpec::lorentz(3.0, 2.0), SpaceSpec::mspace(), SpaceSpec::linfty()}) {
    const AxiomSuiteResult result = run_axiom_suite(space, 60);
    INFO("space ", space.name());
    for (const auto& check : result.checks) {
      INFO("check ", check.name, " margin ", check.worst_margin);
      CHECK(check.passed);
    }
  }
}

TEST_CASE("averaging margin is a hard theorem for Lp spaces") {
  for (double p : {1.0, 2.0, 4.0}) {
    const AxiomSuiteResult result = run_axiom_suite(SpaceSpec::lp(p), 200);
    for (const auto& check : result.checks) {
      if (check.name == "averaging-bound" || check.name == "embedding-into-M") {
        CHECK(check.worst_margin >= -1e-6);
      }
      if (check.name == "shift-isometry") CHECK(check.worst_margin >= -1e-9);
    }
    CHECK(result.constants.m_avg == 1.0);
  }
}

TEST_CASE("estimated constants keep the suite coherent on lorentz spaces") {
  const AxiomSuiteResult result = run_axiom_suite(SpaceSpec::lorentz(2.0, 1.0), 120);
  CHECK(result.all_passed());
  CHECK(result.constants.m_avg_prov == Provenance::Estimated);
  for (const auto& check : result.checks)
    if (check.name == "averaging-bound") CHECK(check.worst_margin >= -1e-9);
}

TEST_CASE("the suite catches a norm with a corrupted quadrature weight") {
  // L2-like norm whose first sample carries a negative weight
  const NormFn broken = [](const GridFunction& f) {
    double acc = -f.value_at(0) * f.value_at(0) * f.dt();
    for (std::size_t i = 1; i < f.size(); ++i) acc += f.value_at(i) * f.value_at(i) * f.dt();
    return std::sqrt(std::abs(acc));
  };
  SpaceConstants constants;  // the honest L2 constants
  constants.lambda1_chi_norm = std::sqrt(2.0 / 3.0);
  const AxiomSuiteResult result = run_axiom_suite_on(broken, constants, 80, kDefaultSeed, 1e-2);
  CHECK_FALSE(result.all_passed());
}

TEST_CASE("the suite catches a norm that loses mass on shifts") {
  // norm that inspects the absolute position of the support
  const NormFn anchored = [](const GridFunction& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += f.value_at(i) * f.value_at(i) * f.dt();
    return std::sqrt(acc) * (1.0 + 0.01 * std::tanh(f.t_start()));
  };
  SpaceConstants constants;
  constants.lambda1_chi_norm = std::sqrt(2.0 / 3.0);
  const AxiomSuiteResult result = run_axiom_suite_on(anchored, constants, 80, kDefaultSeed, 1e-2);
  bool shift_failed = false;
  for (const auto& check : result.checks)
    if (check.name == "shift-isometry") shift_failed = !check.passed;
  CHECK(shift_failed);
}
