#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "evostab/probes.hpp"
#include "evostab/spaces.hpp"

using namespace evostab;

namespace {

// Independent Lorentz oracle: midpoint quadrature of the rearrangement
// integral, unaware of the implementation's exact cell sums.
double lorentz_bruteforce(double p, double q, const GridFunction& f) {
  std::vector<double> star(f.values().begin(), f.values().end());
  for (double& v : star) v = std::abs(v);
  std::sort(star.begin(), star.end(), std::greater<>());
  const double dt = f.dt();
  const int substeps = 500;
  double acc = 0.0;
  for (std::size_t k = 0; k < star.size(); ++k) {
    if (star[k] == 0.0) continue;
    for (int j = 0; j < substeps; ++j) {
      const double t = (static_cast<double>(k) + (j + 0.5) / substeps) * dt;
      acc += std::pow(t, q / p - 1.0) * std::pow(star[k], q) * dt / substeps;
    }
  }
  return std::pow(acc * q / p, 1.0 / q);
}

const std::vector<SpaceSpec> kAllSpaces = {
    SpaceSpec::lp(1.0),           SpaceSpec::lp(2.0), SpaceSpec::lp(4.0), SpaceSpec::lorentz(2.0, 1.0),
    SpaceSpec::lorentz(3.0, 2.0), SpaceSpec::mspace(), SpaceSpec::linfty()};

}  // namespace

TEST_CASE("space spec factories validate and normalize") {
  CHECK(SpaceSpec::lp(std::numeric_limits<double>::infinity()).kind() == SpaceKind::LInfty);
  CHECK_THROWS_AS(SpaceSpec::lp(0.5), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec::lorentz(std::numeric_limits<double>::infinity(), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec::lorentz(2.0, 0.0), std::invalid_argument);
  CHECK(SpaceSpec::parse("L2") == SpaceSpec::lp(2.0));
  CHECK(SpaceSpec::parse("L2,1") == SpaceSpec::lorentz(2.0, 1.0));
  CHECK(SpaceSpec::parse("M") == SpaceSpec::mspace());
  CHECK(SpaceSpec::parse("Linf") == SpaceSpec::linfty());
  CHECK_THROWS_AS(SpaceSpec::parse("bogus"), std::invalid_argument);
  CHECK(SpaceSpec::lp(2.0).name() == "L2");
  CHECK(SpaceSpec::lorentz(2.0, 1.0).name() == "L2,1");
}

TEST_CASE("norm oracles on characteristic and exponential profiles") {
  const double dt = 1e-3;
  CHECK(norm(SpaceSpec::lp(2.0), GridFunction::chi(0.0, 4.0, dt)) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(norm(SpaceSpec::lorentz(2.0, 1.0), GridFunction::chi(0.0, 8.0, dt)) ==
        doctest::Approx(std::sqrt(8.0)).epsilon(1e-3));

  const auto kernel = GridFunction::sample([](double t) { return std::exp(-std::abs(t)); }, -10.0, 10.0, dt);
  CHECK(norm(SpaceSpec::mspace(), kernel) == doctest::Approx(2.0 * (1.0 - std::exp(-0.5))).epsilon(1e-3));
  CHECK(norm(SpaceSpec::lp(2.0), kernel) == doctest::Approx(1.0).epsilon(1e-3));

  for (double len : {1.0, 2.5, 40.0})
    CHECK(norm(SpaceSpec::mspace(), GridFunction::chi(0.0, len, 1e-2)) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK(norm(SpaceSpec::linfty(), GridFunction(0.0, 0.1, {0.25, -3.5, 1.0})) == doctest::Approx(3.5));
  for (const auto& space : kAllSpaces) CHECK(norm(space, GridFunction::zero(0.0, 0.1, 50)) == 0.0);
}

TEST_CASE("lorentz norms agree with the brute-force rearrangement quadrature") {
  const GridFunction chi = GridFunction::chi(0.0, 8.0, 1e-3);
  CHECK(norm(SpaceSpec::lorentz(2.0, 1.0), chi) == doctest::Approx(lorentz_bruteforce(2.0, 1.0, chi)).epsilon(2e-3));

  for (int k = 0; k < 12; ++k) {
    const GridFunction f = canonical_probe(k, 7u, 1e-2);
    for (auto [p, q] : {std::pair{2.0, 1.0}, {3.0, 2.0}, {2.0, 2.0}, {1.5, 4.0}}) {
      const double impl = norm(SpaceSpec::lorentz(p, q), f);
      const double oracle = lorentz_bruteforce(p, q, f);
      CHECK(impl == doctest::Approx(oracle).epsilon(5e-3));
    }
  }
}

TEST_CASE("weak-type lorentz norm matches the window closed form") {
  const GridFunction chi = GridFunction::chi(0.0, 4.0, 1e-3);
  CHECK(norm(SpaceSpec::lorentz(2.0, std::numeric_limits<double>::infinity()), chi) ==
        doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("norm properties: homogeneity and triangle inequality") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 25; ++k) {
    const GridFunction f = canonical_probe(k, 99u, 1e-2);
    const double lambda = uniform_in(rng, -3.0, 3.0);
    std::vector<double> scaled(f.values().begin(), f.values().end());
    for (double& v : scaled) v *= lambda;
    const GridFunction g(f.t_start(), f.dt(), std::move(scaled));

    const GridFunction h = canonical_probe(k + 100, 99u, 1e-2);
    std::vector<double> sum(f.values().begin(), f.values().end());
    std::vector<double> hpad(f.size(), 0.0);
    for (std::size_t i = 0; i < f.size() && i < h.size(); ++i) {
      sum[i] += h.value_at(i);
      hpad[i] = h.value_at(i);
    }
    const GridFunction fs(f.t_start(), f.dt(), std::move(sum));
    const GridFunction hp(f.t_start(), f.dt(), std::move(hpad));

    for (const auto& space : kAllSpaces) {
      CHECK(norm(space, g) == doctest::Approx(std::abs(lambda) * norm(space, f)).epsilon(1e-9));
      CHECK(norm(space, fs) <= norm(space, f) + norm(space, hp) + 1e-9);
    }
  }
}

TEST_CASE("simpson-configured norms match the analytic values") {
  const auto smooth = GridFunction::sample([](double t) { return std::exp(-t); }, 0.0, 30.0, 1e-3);
  const SpaceSpec l2s = SpaceSpec::lp(2.0, Quadrature::Simpson);
  CHECK(l2s.quadrature() == Quadrature::Simpson);
  CHECK(norm(l2s, smooth) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  CHECK(norm(SpaceSpec::lp(1.0, Quadrature::Simpson), smooth) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("lp(inf) and the sup-norm space coincide") {
  const auto f = canonical_probe(3, 5u, 1e-2);
  CHECK(norm(SpaceSpec::lp(std::numeric_limits<double>::infinity()), f) == norm(SpaceSpec::linfty(), f));
}

TEST_CASE("sliding unit average of a window characteristic is the tent") {
  const GridFunction hat = lambda1(GridFunction::chi(0.0, 1.0, 1e-3));
  CHECK(hat.t_start() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(hat.t_end() == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < hat.size(); i += 37) {
    const double t = hat.node(i);
    CHECK(hat.value_at(i) == doctest::Approx(std::max(0.0, 1.0 - std::abs(t))).epsilon(1e-9));
  }
  CHECK(norm(SpaceSpec::lp(2.0), hat) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-3));
  CHECK(norm(SpaceSpec::lp(1.0), hat) == doctest::Approx(1.0).epsilon(1e-3));

  const GridFunction z = lambda1(GridFunction::zero(0.0, 1e-2, 100));
  CHECK(z.max_abs() == 0.0);
}

TEST_CASE("sliding unit average handles steps that do not divide one") {
  // the sampled characteristic snaps its endpoint up to the grid
  const GridFunction chi = GridFunction::chi(0.0, 1.0, 0.3);
  const double len = chi.t_end();
  const GridFunction av = lambda1(chi);
  for (std::size_t i = 0; i < av.size(); ++i) {
    const double t = av.node(i);
    const double overlap = std::max(0.0, std::min(t + 1.0, len) - std::max(t, 0.0));
    CHECK(av.value_at(i) == doctest::Approx(overlap).epsilon(1e-9));
  }
}

TEST_CASE("shift moves the support and preserves every norm") {
  const GridFunction chi = GridFunction::chi(2.0, 5.0, 1e-2);
  const GridFunction moved = shift(chi, 2.5);
  CHECK(moved.t_start() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(moved.value_at(17) == chi.value_at(17));

  std::mt19937_64 rng(21);
  for (int k = 0; k < 30; ++k) {
    const GridFunction f = canonical_probe(k, 3u, 1e-2);
    const double tau = uniform_in(rng, -40.0, 40.0);
    const GridFunction back = shift(shift(f, tau), -tau);
    CHECK(back.t_start() == doctest::Approx(f.t_start()).epsilon(1e-12));
    for (const auto& space : kAllSpaces) CHECK(std::abs(norm(space, shift(f, tau)) - norm(space, f)) <= 1e-9);
  }
}

TEST_CASE("decreasing rearrangement sorts magnitudes and is equimeasurable") {
  const GridFunction f(0.0, 0.5, {1.0, 3.0, -2.0});
  const GridFunction star = decreasing_rearrangement(f);
  CHECK(star.t_start() == 0.0);
  CHECK(star.value_at(0) == 3.0);
  CHECK(star.value_at(1) == 2.0);
  CHECK(star.value_at(2) == 1.0);

  const GridFunction chi = GridFunction::chi(0.0, 2.0, 1e-2);
  const GridFunction chi_star = decreasing_rearrangement(chi);
  CHECK(chi_star.max_abs() == 1.0);
  CHECK(norm(SpaceSpec::lp(1.0), chi_star) == doctest::Approx(norm(SpaceSpec::lp(1.0), chi)).epsilon(1e-9));

  for (int k = 0; k < 20; ++k) {
    const GridFunction g = canonical_probe(k, 31u, 1e-2);
    const GridFunction gs = decreasing_rearrangement(g);
    for (std::size_t i = 1; i < gs.size(); ++i) CHECK(gs.value_at(i) <= gs.value_at(i - 1));
    // the rearranged step norm is exactly the sample multiset norm
    for (double p : {1.0, 2.0, 4.0})
      CHECK(norm(SpaceSpec::lorentz(p, p), gs) == doctest::Approx(norm(SpaceSpec::lorentz(p, p), g)).epsilon(1e-12));
    // trapezoid Lp differs from it only through the half-weighted endpoints
    const double n_lp = norm(SpaceSpec::lp(2.0), g);
    const double n_sorted = norm(SpaceSpec::lp(2.0), gs);
    const double cap = 0.5 * g.dt() *
                       (g.value_at(0) * g.value_at(0) + g.value_at(g.size() - 1) * g.value_at(g.size() - 1) +
                        gs.value_at(0) * gs.value_at(0));
    CHECK(std::abs(n_lp * n_lp - n_sorted * n_sorted) <= cap + 1e-12);
  }
}

TEST_CASE("structural constants") {
  const SpaceConstants c2 = space_constants(SpaceSpec::lp(2.0), 8);
  CHECK(c2.m_avg == 1.0);
  CHECK(c2.m_avg_prov == Provenance::Analytic);
  CHECK(c2.n_shift == 1.0);
  CHECK(c2.inf_chi == 1.0);
  CHECK(c2.lambda1_chi_norm == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-3));

  const SpaceConstants c1 = space_constants(SpaceSpec::lp(1.0), 8);
  CHECK(c1.lambda1_chi_norm == doctest::Approx(1.0).epsilon(1e-3));

  const SpaceConstants cm = space_constants(SpaceSpec::mspace(), 64);
  CHECK(cm.inf_chi == 1.0);
  CHECK(cm.m_avg_prov == Provenance::Estimated);
  CHECK(cm.m_avg >= 1.0);
  CHECK(cm.m_avg <= 2.05);  // the averaging constant of this space is exactly 2

  const SpaceConstants cl = space_constants(SpaceSpec::lorentz(2.0, 1.0), 64);
  CHECK(cl.m_avg_prov == Provenance::Estimated);
  CHECK(cl.m_avg >= 1.0);
  CHECK(cl.m_avg <= 2.05);  // bounded by the conjugate exponent p' = 2

  CHECK_THROWS_AS(space_constants(SpaceSpec::lp(2.0), 0), std::invalid_argument);
}

TEST_CASE("window-characteristic growth") {
  CHECK(chi_growth(SpaceSpec::lp(2.0), 9.0) == doctest::Approx(3.0));
  CHECK(chi_growth(SpaceSpec::mspace(), 100.0) == doctest::Approx(1.0));
  CHECK(chi_growth(SpaceSpec::lorentz(2.0, 1.0), 4.0) == doctest::Approx(2.0));
  CHECK(chi_growth(SpaceSpec::linfty(), 1e6) == doctest::Approx(1.0));
  CHECK_THROWS_AS(chi_growth(SpaceSpec::lp(2.0), 0.0), std::invalid_argument);

  for (const auto& space : kAllSpaces) {
    CHECK(chi_growth_ratio_saturated(space) == !space.chi_norm_unbounded());
    for (double len : {0.5, 1.0, 3.0, 9.0})
      CHECK(norm(space, GridFunction::chi(0.0, len, 1e-3)) == doctest::Approx(chi_growth(space, len)).epsilon(2e-3));
  }
}

TEST_CASE("exponential kernel: closed form, bound, and norms") {
  CHECK(exp_kernel_convolution(1.0, 0.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  for (double alpha : {0.25, 1.0, 4.0}) {
    CHECK(exp_kernel_convolution(alpha, 1.0 - 1e-9) == doctest::Approx(exp_kernel_convolution(alpha, 1.0 + 1e-9)));
    CHECK(exp_kernel_convolution(alpha, -1e-9) == doctest::Approx(exp_kernel_convolution(alpha, 1e-9)));
  }

  // seam value: both outer branches give e^{-1}(e - 1) = 1 - e^{-1} at t = 1
  CHECK(exp_kernel_convolution(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));

  const ExpKernelCheck r = exp_kernel(SpaceSpec::lp(2.0), 1.0);
  CHECK(r.numeric_norm == doctest::Approx(1.0).epsilon(1e-3));
  const double expected_bound = 2.0 * std::sqrt(2.0 / 3.0) / std::pow(1.0 - std::exp(-1.0), 2);
  CHECK(r.series_bound == doctest::Approx(expected_bound).epsilon(1e-3));
  CHECK(r.series_bound == doctest::Approx(4.0868).epsilon(1e-3));
  CHECK(r.kernel_residual <= 1e-6);

  for (double alpha : {0.25, 4.0}) {
    const ExpKernelCheck k2 = exp_kernel(SpaceSpec::lp(2.0), alpha);
    CHECK(k2.numeric_norm == doctest::Approx(1.0 / std::sqrt(alpha)).epsilon(1e-3));
    CHECK(k2.numeric_norm <= k2.series_bound);
  }

  const ExpKernelCheck m = exp_kernel(SpaceSpec::mspace(), 1.0);
  CHECK(m.numeric_norm == doctest::Approx(2.0 * (1.0 - std::exp(-0.5))).epsilon(1e-3));

  CHECK_THROWS_AS(exp_kernel(SpaceSpec::lp(2.0), 0.0), std::invalid_argument);
}
