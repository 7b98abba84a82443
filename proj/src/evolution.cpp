#include "evostab/evolution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "evostab/matrix_exp.hpp"
#include "evostab/probes.hpp"

namespace evostab {

namespace {

// floor-based strip reduction; valid for negative arguments as well
std::pair<long long, double> reduce_any(double t0, double period) {
  auto n = static_cast<long long>(std::floor(t0 / period));
  double tau = t0 - static_cast<double>(n) * period;
  if (tau >= period) {
    ++n;
    tau -= period;
  }
  if (tau < 0.0) tau = 0.0;
  return {n, tau};
}

Eigen::VectorXd random_unit_vector(int dim, std::mt19937_64& rng) {
  Eigen::VectorXd x(dim);
  do {
    for (int i = 0; i < dim; ++i) x(i) = gaussian(rng);
  } while (x.norm() == 0.0);
  return x / x.norm();
}

}  // namespace

EvolutionFamily::EvolutionFamily(Variant v, int dim, ExpBound bound, TimeDomain domain)
    : variant_(std::move(v)), dim_(dim), bound_(bound), domain_(domain) {
  if (dim_ < 1) throw std::invalid_argument("EvolutionFamily: dimension must be >= 1");
  if (!(bound_.growth_coeff >= 1.0)) throw std::invalid_argument("EvolutionFamily: bound needs K >= 1");
  if (!(bound_.growth_rate > 0.0)) throw std::invalid_argument("EvolutionFamily: bound needs c > 0");
}

EvolutionFamily EvolutionFamily::scalar(ScalarCoeff a, ExpBound bound, TimeDomain domain, ScalarCoeff antiderivative) {
  if (!a) throw std::invalid_argument("EvolutionFamily::scalar: coefficient required");
  return EvolutionFamily(Scalar{std::move(a), std::move(antiderivative)}, 1, bound, domain);
}

EvolutionFamily EvolutionFamily::linear_ode(int dim, MatrixCoeff a, ExpBound bound, TimeDomain domain,
                                            IntegratorSettings integrator) {
  if (!a) throw std::invalid_argument("EvolutionFamily::linear_ode: coefficient required");
  if (!(integrator.step > 0.0)) throw std::invalid_argument("EvolutionFamily::linear_ode: step must be positive");
  const Eigen::MatrixXd probe = a(0.0);
  if (probe.rows() != dim || probe.cols() != dim)
    throw std::invalid_argument("EvolutionFamily::linear_ode: coefficient shape mismatch");
  return EvolutionFamily(LinearOde{std::move(a), integrator}, dim, bound, domain);
}

EvolutionFamily EvolutionFamily::semigroup(Eigen::MatrixXd a, ExpBound bound, TimeDomain domain) {
  if (a.rows() != a.cols() || a.rows() < 1) throw std::invalid_argument("EvolutionFamily::semigroup: square matrix required");
  const int dim = static_cast<int>(a.rows());
  return EvolutionFamily(Semigroup{std::move(a)}, dim, bound, domain);
}

EvolutionFamily EvolutionFamily::periodic(EvolutionFamily base, double period) {
  if (!(period > 0.0)) throw std::invalid_argument("EvolutionFamily::periodic: period must be positive");
  const int dim = base.dim();
  const ExpBound bound = base.exp_bound();
  const TimeDomain domain = base.domain();
  auto holder = std::make_shared<const EvolutionFamily>(std::move(base));
  return EvolutionFamily(Periodic{std::move(holder), period}, dim, bound, domain);
}

bool EvolutionFamily::is_semigroup() const { return std::holds_alternative<Semigroup>(variant_); }

bool EvolutionFamily::is_periodic() const { return std::holds_alternative<Periodic>(variant_); }

double EvolutionFamily::period() const {
  if (const auto* p = std::get_if<Periodic>(&variant_)) return p->period;
  throw std::logic_error("EvolutionFamily::period: not a periodic family");
}

void EvolutionFamily::check_pair(double t, double s) const {
  if (!(t >= s)) throw std::invalid_argument("EvolutionFamily: requires t >= s");
  if (domain_ == TimeDomain::HalfLine && s < 0.0)
    throw std::invalid_argument("EvolutionFamily: arguments outside the half-line domain");
}

double EvolutionFamily::scalar_integral(const Scalar& sc, double s, double t) const {
  if (sc.antiderivative) return sc.antiderivative(t) - sc.antiderivative(s);
  if (t <= s) return 0.0;
  auto cells = static_cast<std::size_t>(std::ceil((t - s) / 1e-3));
  cells += cells % 2;
  cells = std::max<std::size_t>(cells, 2);
  const double h = (t - s) / static_cast<double>(cells);
  double acc = sc.a(s) + sc.a(t);
  for (std::size_t i = 1; i < cells; ++i) acc += sc.a(s + static_cast<double>(i) * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

Eigen::VectorXd EvolutionFamily::propagate_ode(const LinearOde& ode, double s, double t, Eigen::VectorXd x) const {
  if (t <= s) return x;
  const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((t - s) / ode.integrator.step - 1e-12)));
  const double h = (t - s) / static_cast<double>(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double ti = s + static_cast<double>(i) * h;
    const Eigen::VectorXd k1 = ode.a(ti) * x;
    const Eigen::VectorXd k2 = ode.a(ti + 0.5 * h) * (x + 0.5 * h * k1);
    const Eigen::VectorXd k3 = ode.a(ti + 0.5 * h) * (x + 0.5 * h * k2);
    const Eigen::VectorXd k4 = ode.a(ti + h) * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

Eigen::VectorXd EvolutionFamily::apply(double t, double s, const Eigen::VectorXd& x) const {
  check_pair(t, s);
  if (x.size() != dim_) throw std::invalid_argument("EvolutionFamily::apply: state dimension mismatch");
  if (const auto* sc = std::get_if<Scalar>(&variant_)) return x * std::exp(scalar_integral(*sc, s, t));
  if (const auto* ode = std::get_if<LinearOde>(&variant_)) return propagate_ode(*ode, s, t, x);
  if (const auto* sg = std::get_if<Semigroup>(&variant_)) return matrix_exponential((t - s) * sg->a) * x;
  const auto& per = std::get<Periodic>(variant_);
  const auto [n, tau] = reduce_any(s, per.period);
  const double offset = static_cast<double>(n) * per.period;
  return per.base->apply(t - offset, tau, x);
}

TrajectoryResult EvolutionFamily::trajectory(double t0, const Eigen::VectorXd& x, double horizon, double dt) const {
  check_pair(t0, t0);
  if (!(horizon > 0.0) || !(dt > 0.0)) throw std::invalid_argument("EvolutionFamily::trajectory: needs horizon > 0, dt > 0");
  if (x.size() != dim_) throw std::invalid_argument("EvolutionFamily::trajectory: state dimension mismatch");

  if (const auto* per = std::get_if<Periodic>(&variant_)) {
    const auto [n, tau] = reduce_any(t0, per->period);
    (void)n;
    TrajectoryResult base = per->base->trajectory(tau, x, horizon, dt);
    std::vector<double> values(base.norms.values().begin(), base.norms.values().end());
    return {GridFunction(t0, dt, std::move(values)), base.overflow};
  }

  const auto samples = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(samples);
  bool overflow = false;

  auto push = [&](double v) {
    if (!std::isfinite(v) || v > kOverflowGuard) {
      overflow = true;
      return false;
    }
    values.push_back(v);
    return true;
  };

  if (const auto* sc = std::get_if<Scalar>(&variant_)) {
    double log_gain = 0.0;
    push(x.cwiseAbs().maxCoeff());  // dim 1: |x|
    for (std::size_t k = 1; k < samples; ++k) {
      const double a = t0 + static_cast<double>(k - 1) * dt;
      log_gain += scalar_integral(*sc, a, a + dt);
      if (!push(std::abs(x(0)) * std::exp(log_gain))) break;
    }
  } else if (const auto* ode = std::get_if<LinearOde>(&variant_)) {
    Eigen::VectorXd state = x;
    push(state.norm());
    for (std::size_t k = 1; k < samples && !overflow; ++k) {
      const double a = t0 + static_cast<double>(k - 1) * dt;
      state = propagate_ode(*ode, a, a + dt, std::move(state));
      if (!push(state.norm())) break;
    }
  } else {
    const auto& sg = std::get<Semigroup>(variant_);
    const Eigen::MatrixXd step = matrix_exponential(dt * sg.a);
    Eigen::VectorXd state = x;
    push(state.norm());
    for (std::size_t k = 1; k < samples && !overflow; ++k) {
      state = step * state;
      if (!push(state.norm())) break;
    }
  }

  if (values.empty()) values.push_back(0.0);  // non-finite input guard; callers see overflow
  return {GridFunction(t0, dt, std::move(values)), overflow};
}

std::pair<long long, double> periodic_reduce(double t0, double period) {
  if (!(t0 >= 0.0)) throw std::invalid_argument("periodic_reduce: t0 must be >= 0");
  if (!(period > 0.0)) throw std::invalid_argument("periodic_reduce: period must be positive");
  return reduce_any(t0, period);
}

ExpBoundCheck exp_bound_check(const EvolutionFamily& family, int sample_pairs, std::uint64_t seed) {
  if (sample_pairs < 1) throw std::invalid_argument("exp_bound_check: sample_pairs must be >= 1");
  std::mt19937_64 rng(seed);
  ExpBoundCheck out;
  out.rate_emp = -std::numeric_limits<double>::infinity();
  const double k_declared = family.exp_bound().growth_coeff;
  const double c_declared = family.exp_bound().growth_rate;
  for (int i = 0; i < sample_pairs; ++i) {
    const double s = family.domain() == TimeDomain::HalfLine ? uniform_in(rng, 0.0, 20.0) : uniform_in(rng, -20.0, 20.0);
    const double gap = uniform_in(rng, 0.0, 10.0);
    const Eigen::VectorXd x = random_unit_vector(family.dim(), rng);
    const double grown = family.apply(s + gap, s, x).norm();
    out.coeff_emp = std::max(out.coeff_emp, grown / std::exp(c_declared * gap));
    if (gap > 1e-2 && grown > 0.0) out.rate_emp = std::max(out.rate_emp, std::log(grown / k_declared) / gap);
  }
  out.violated = out.coeff_emp > k_declared * (1.0 + 1e-6);
  return out;
}

Eigen::MatrixXd propagator_matrix(const EvolutionFamily& family, double t, double s) {
  Eigen::MatrixXd m(family.dim(), family.dim());
  for (int j = 0; j < family.dim(); ++j)
    m.col(j) = family.apply(t, s, Eigen::VectorXd::Unit(family.dim(), j));
  return m;
}

}  // namespace evostab
