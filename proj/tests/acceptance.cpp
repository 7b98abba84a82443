// Acceptance suite: one pass/fail line per criterion, fixed tolerances.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "evostab/analysis.hpp"
#include "evostab/axioms.hpp"
#include "evostab/corpus.hpp"
#include "evostab/datko.hpp"
#include "evostab/probes.hpp"

using namespace evostab;

namespace {

int g_failures = 0;

void report(int id, const std::string& label, bool passed, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", passed ? "PASS" : "FAIL", id, label.c_str(), detail.c_str());
  if (!passed) ++g_failures;
}

double rel_err(double actual, double expected) { return std::abs(actual - expected) / std::abs(expected); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Eigen::VectorXd unit1() {
  Eigen::VectorXd x(1);
  x << 1.0;
  return x;
}

void criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const double dt = 1e-3;
  double worst = 0.0;
  auto track = [&](double actual, double expected) { worst = std::max(worst, rel_err(actual, expected)); };

  track(norm(SpaceSpec::lp(2.0), GridFunction::chi(0.0, 4.0, dt)), 2.0);
  track(norm(SpaceSpec::lorentz(2.0, 1.0), GridFunction::chi(0.0, 8.0, dt)), std::sqrt(8.0));
  track(norm(SpaceSpec::lp(2.0), lambda1(GridFunction::chi(0.0, 1.0, dt))), std::sqrt(2.0 / 3.0));
  const auto kernel = GridFunction::sample([](double t) { return std::exp(-std::abs(t)); }, -25.0, 25.0, dt);
  track(norm(SpaceSpec::lp(2.0), kernel), 1.0);
  track(norm(SpaceSpec::mspace(), kernel), 2.0 * (1.0 - std::exp(-0.5)));

  const double elapsed = seconds_since(start);
  char detail[128];
  std::snprintf(detail, sizeof(detail), "worst rel err %.2e, %.2f s", worst, elapsed);
  report(1, "analytic norm oracles at dt = 1e-3", worst <= 1e-3 && elapsed < 5.0, detail);
}

void criterion2() {
  double worst = 0.0;
  bool ok = true;
  std::string note;
  for (double alpha : {0.25, 1.0, 4.0}) {
    try {
      const ExpKernelCheck r = exp_kernel(SpaceSpec::lp(2.0), alpha);  // throws on any domination violation
      worst = std::max(worst, r.kernel_residual);
    } catch (const std::exception& e) {
      ok = false;
      note = e.what();
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail), "max |closed - quadrature| %.2e on [-5,5]%s%s", worst, ok ? "" : "; ",
                note.c_str());
  report(2, "kernel convolution internals, zero domination violations", ok && worst <= 1e-6, detail);
}

void criterion3() {
  const std::vector<SpaceSpec> spaces = {SpaceSpec::lp(1.0), SpaceSpec::lp(2.0), SpaceSpec::lorentz(2.0, 1.0),
                                         SpaceSpec::mspace()};
  int violations = 0;
  int checked = 0;
  double tightest = 1e300;
  for (const auto& entry : corpus()) {
    if (entry.truth.cls != StabilityClass::Stable) continue;
    const auto probes = default_probes(entry.family.dim(), 8, kDefaultSeed);
    for (const auto& space : spaces) {
      const SpaceConstants constants = space_constants(space, 64);
      const double bound = forward_bound(constants, *entry.truth.decay_coeff, *entry.truth.decay_rate);
      const DatkoReport rep = datko_sup(entry.family, space, uniform_grid(0.0, 50.0, 8), probes);
      for (double sup : rep.sup_per_probe) {
        ++checked;
        if (sup > bound) ++violations;
        tightest = std::min(tightest, bound - sup);
      }
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail), "%d sups checked, %d violations, smallest slack %.3f", checked, violations,
                tightest);
  report(3, "trajectory-norm sups below the derived bound", violations == 0, detail);
}

void criterion4() {
  const EvolutionFamily& decay = find_corpus_entry("scalar-decay").family;
  const SpaceSpec l2 = SpaceSpec::lp(2.0);
  const std::vector<Eigen::VectorXd> probes = {unit1()};
  const std::vector<double> grid = uniform_grid(0.0, 50.0, 8);

  const DatkoReport rep = datko_sup(decay, l2, grid, probes);
  std::vector<double> ts;
  for (double w = 0.5; w <= 64.0; w *= 2.0) ts.push_back(w);
  const SeminormEstimate sem = estimate_uniform_bound(decay, l2, ts, grid, probes);
  const StabilityCertificate cert = certify_stability(decay, l2, rep, sem, 0.5);

  bool ok = cert.certified();
  double worst = 0.0;
  auto track = [&](double actual, double expected) { worst = std::max(worst, rel_err(actual, expected)); };
  track(cert.derivation.uniform_bound, 0.7071);
  track(cert.derivation.uniform_growth, 2.71828);
  track(cert.derivation.contraction_time, 14.78);
  track(cert.decay_coeff, 5.4366);
  track(cert.decay_rate, 0.0469);

  double residual = 1.0;
  if (ok) residual = verify_certificate(decay, cert, {0.0, 5.0, 25.0}, 100.0, probes);
  ok = ok && worst <= 0.02 && residual <= 1e-9;
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "C %.4f, C1 %.5f, Delta %.2f, K1 %.4f, alpha %.5f; worst dev %.2g; residual %.2e",
                cert.derivation.uniform_bound, cert.derivation.uniform_growth, cert.derivation.contraction_time,
                cert.decay_coeff, cert.decay_rate, worst, residual);
  report(4, "certificate chain constants and soundness on the scalar decay flow", ok, detail);
}

void criterion5() {
  const EvolutionFamily& id = find_corpus_entry("identity").family;
  const std::vector<Eigen::VectorXd> probes = {unit1()};
  const std::vector<double> grid = uniform_grid(0.0, 20.0, 4);

  const DatkoReport rep = datko_sup(id, SpaceSpec::mspace(), grid, probes);
  std::vector<double> ts{1.0, 2.0, 4.0, 8.0, 16.0};
  const SeminormEstimate sem = estimate_uniform_bound(id, SpaceSpec::mspace(), ts, grid, probes);
  const StabilityCertificate cert = certify_stability(id, SpaceSpec::mspace(), rep, sem, 0.5);

  const bool finite_sup = std::abs(rep.sup_per_probe[0] - 1.0) <= 1e-3;
  const bool refused = !cert.certified() && cert.refusal_reason == kRefusalConstraint;

  const double ratio = phi_seminorm(id, 16.0, 0.0, unit1(), SpaceSpec::lp(2.0)) /
                       phi_seminorm(id, 8.0, 0.0, unit1(), SpaceSpec::lp(2.0));
  const bool sqrt_growth = std::abs(ratio - std::sqrt(2.0)) <= 0.01;

  char detail[160];
  std::snprintf(detail, sizeof(detail), "M_emp %.5f, refusal %s, window-doubling ratio %.4f", rep.sup_per_probe[0],
                cert.refusal_reason.c_str(), ratio);
  report(5, "growth constraint is necessary: bounded sups without it refuse", finite_sup && refused && sqrt_growth,
         detail);
}

void criterion6() {
  const EvolutionFamily& growth = find_corpus_entry("scalar-growth").family;
  const std::vector<SpaceSpec> spaces = {SpaceSpec::lp(1.0), SpaceSpec::lp(2.0), SpaceSpec::lp(4.0),
                                         SpaceSpec::lorentz(2.0, 1.0)};
  const std::vector<double> grid = uniform_grid(0.0, 10.0, 4);
  std::vector<double> ts{2.0, 8.0, 32.0};
  int refusals = 0;
  int configs = 0;
  for (int seed = 0; seed < 25; ++seed) {
    for (const auto& space : spaces) {
      ++configs;
      const auto probes = default_probes(1, 2, 1000u + static_cast<std::uint64_t>(seed));
      const DatkoReport rep = datko_sup(growth, space, grid, probes);
      const SeminormEstimate sem = estimate_uniform_bound(growth, space, ts, grid, probes);
      const StabilityCertificate cert = certify_stability(growth, space, rep, sem, 0.5);
      if (!cert.certified() && cert.refusal_reason == kRefusalDivergent) ++refusals;
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "%d/%d seeded configurations refused as divergent", refusals, configs);
  report(6, "instability always refuses in spaces with growing window norms", refusals == configs && configs == 100,
         detail);
}

void criterion7() {
  bool averaging_ok = true, shift_ok = true, embedding_ok = true;
  double worst_avg = 1e300, worst_shift = 1e300, worst_embed = 1e300;
  const std::vector<SpaceSpec> all = {SpaceSpec::lp(1.0),        SpaceSpec::lp(2.0),  SpaceSpec::lp(4.0),
                                      SpaceSpec::lorentz(2.0, 1.0), SpaceSpec::mspace(), SpaceSpec::linfty()};
  for (const auto& space : all) {
    const AxiomSuiteResult suite = run_axiom_suite(space, 200);
    const bool is_lp = space.kind() == SpaceKind::Lp;
    for (const auto& check : suite.checks) {
      if (check.name == "averaging-bound" && is_lp) {
        averaging_ok = averaging_ok && check.worst_margin >= -1e-6 && suite.constants.m_avg == 1.0;
        worst_avg = std::min(worst_avg, check.worst_margin);
      }
      if (check.name == "shift-isometry") {
        shift_ok = shift_ok && check.worst_margin >= -1e-9;
        worst_shift = std::min(worst_shift, check.worst_margin);
      }
      if (check.name == "embedding-into-M") {
        embedding_ok = embedding_ok && check.passed;
        worst_embed = std::min(worst_embed, check.worst_margin);
      }
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail), "margins: averaging %.2e, shift %.2e, embedding %.2e (200 probes each)",
                worst_avg, worst_shift, worst_embed);
  report(7, "axiom suite: averaging with M = 1 on Lp, shift isometry, embedding", averaging_ok && shift_ok && embedding_ok,
         detail);
}

void criterion8() {
  std::mt19937_64 rng(77);
  double worst_cocycle = 0.0;
  for (const auto& entry : corpus()) {
    for (int k = 0; k < 6; ++k) {
      const double s = uniform_in(rng, 0.0, 8.0);
      const double r = s + uniform_in(rng, 0.0, 4.0);
      const double t = r + uniform_in(rng, 0.0, 4.0);
      Eigen::VectorXd x(entry.family.dim());
      for (int i = 0; i < entry.family.dim(); ++i) x(i) = uniform_in(rng, -1.0, 1.0);
      const Eigen::VectorXd direct = entry.family.apply(t, s, x);
      const Eigen::VectorXd staged = entry.family.apply(t, r, entry.family.apply(r, s, x));
      worst_cocycle = std::max(worst_cocycle, (direct - staged).norm() / std::max(1.0, x.norm()));
    }
  }

  const EvolutionFamily& jordan = find_corpus_entry("jordan-transient").family;
  double worst_jordan = 0.0;
  for (double t = 0.05; t <= 5.0; t += 0.05) {
    const Eigen::MatrixXd u = propagator_matrix(jordan, t, 0.0);
    const double expected = std::exp(-t) * (2.0 * t + std::sqrt(4.0 * t * t + 1.0));
    const double actual = Eigen::JacobiSVD<Eigen::MatrixXd>(u).singularValues()(0);
    worst_jordan = std::max(worst_jordan, std::abs(actual - expected));
  }

  const EvolutionFamily& periodic = find_corpus_entry("periodic-damped").family;
  double worst_periodic = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double t0 = uniform_in(rng, 0.0, 9.0);
    const double xi = t0 + uniform_in(rng, 0.0, 5.0);
    const auto [n, tau] = periodic_reduce(t0, 1.0);
    (void)n;
    const double a = periodic.apply(xi, t0, unit1()).norm();
    const double b = periodic.apply(xi - t0 + tau, tau, unit1()).norm();
    worst_periodic = std::max(worst_periodic, std::abs(a - b));
  }

  char detail[160];
  std::snprintf(detail, sizeof(detail), "cocycle %.2e, transient norm %.2e, strip identity %.2e", worst_cocycle,
                worst_jordan, worst_periodic);
  report(8, "evolution correctness at h = 1e-3", worst_cocycle <= 1e-6 && worst_jordan <= 1e-6 && worst_periodic <= 1e-6,
         detail);
}

void criterion9() {
  double worst_sg = 0.0;
  for (const char* name : {"jordan-transient", "rotation-decay"}) {
    const EvolutionFamily& family = find_corpus_entry(name).family;
    const auto probes = default_probes(2, 2, kDefaultSeed);
    for (const auto& x : probes) {
      const double base = trajectory_space_norm(family, 0.0, x, SpaceSpec::lp(2.0)).value;
      for (double t0 : {7.3, 25.0})
        worst_sg = std::max(worst_sg,
                            std::abs(trajectory_space_norm(family, t0, x, SpaceSpec::lp(2.0)).value - base));
    }
  }

  const EvolutionFamily& periodic = find_corpus_entry("periodic-damped").family;
  HorizonPolicy policy;
  policy.dt = 0.02;
  const DatkoReport one = datko_sup(periodic, SpaceSpec::lp(2.0), uniform_grid(0.0, 1.0, 16), {unit1()}, policy);
  const DatkoReport three = datko_sup(periodic, SpaceSpec::lp(2.0), uniform_grid(0.0, 3.0, 16), {unit1()}, policy);
  const double gap = std::abs(one.sup_per_probe[0] - three.sup_per_probe[0]);

  char detail[128];
  std::snprintf(detail, sizeof(detail), "semigroup base-point spread %.2e, period-strip sup gap %.2e", worst_sg, gap);
  report(9, "sweep reductions: semigroups and periodic strips", worst_sg <= 1e-6 && gap <= 1e-4, detail);
}

void criterion10() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> first_outputs;
  bool exit_codes_ok = true;
  for (int pass = 0; pass < 2; ++pass) {
    std::size_t slot = 0;
    bool identical = true;
    for (const auto& entry : corpus()) {
      for (const char* space : {"L2", "M"}) {
        Json cfg;
        cfg["system"] = entry.name;
        cfg["space"] = space;
        cfg["probes"] = Json{{"count", 8}, {"seed", 20260810}};
        const AnalysisOutputs out = run_analysis(parse_config(cfg));
        if (pass == 0) {
          first_outputs.push_back(report_to_json(out.report).dump() + out.csv_sup + out.csv_decay);
          const bool refusal_expected = entry.truth.cls != StabilityClass::Stable || std::string(space) == "M";
          exit_codes_ok = exit_codes_ok && (refusal_expected ? out.exit_code != kExitSuccess
                                                             : out.exit_code == kExitSuccess);
        } else {
          identical = identical &&
                      first_outputs[slot] == report_to_json(out.report).dump() + out.csv_sup + out.csv_decay;
        }
        ++slot;
      }
    }
    if (pass == 1) {
      const double elapsed = seconds_since(start);
      char detail[128];
      std::snprintf(detail, sizeof(detail), "two full corpus sweeps in %.1f s total, byte-identical: %s", elapsed,
                    identical ? "yes" : "NO");
      report(10, "end-to-end determinism and runtime over the corpus x {L2, M}", identical && exit_codes_ok && elapsed / 2.0 < 60.0,
             detail);
    }
  }
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failures == 0) std::printf("all acceptance criteria passed\n");
  return g_failures;
}
