#include "evostab/datko.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "evostab/probes.hpp"

namespace evostab {

namespace {

Eigen::VectorXd unit_probe(const Eigen::VectorXd& x) {
  const double n = x.norm();
  if (!(n > 0.0)) throw std::invalid_argument("probe vectors must be nonzero");
  return x / n;
}

GridFunction prefix_part(const GridFunction& g, double upto) {
  const auto last = static_cast<std::size_t>(std::floor((upto - g.t_start()) / g.dt() + 1e-9));
  const std::size_t n = std::min(g.size(), last + 1);
  return GridFunction(g.t_start(), g.dt(), std::vector<double>(g.values().begin(), g.values().begin() + n));
}

GridFunction suffix_part(const GridFunction& g, double from) {
  const double offset = (from - g.t_start()) / g.dt();
  std::size_t first = offset <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(offset - 1e-9));
  if (first >= g.size()) first = g.size() - 1;
  return GridFunction(g.node(first), g.dt(), std::vector<double>(g.values().begin() + first, g.values().end()));
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  if (count == 0) throw std::invalid_argument("uniform_grid: count must be positive");
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

std::vector<Eigen::VectorXd> default_probes(int dim, int random_count, std::uint64_t seed) {
  std::vector<Eigen::VectorXd> probes;
  for (int i = 0; i < dim; ++i) probes.push_back(Eigen::VectorXd::Unit(dim, i));
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_count; ++i) {
    Eigen::VectorXd x(dim);
    double n = 0.0;
    do {
      for (int j = 0; j < dim; ++j) x(j) = gaussian(rng);
      n = x.norm();
    } while (!(n > 0.0));
    probes.push_back(x / n);
  }
  return probes;
}

TrajectoryNorm trajectory_space_norm(const EvolutionFamily& family, double t0, const Eigen::VectorXd& x,
                                     const SpaceSpec& space, const HorizonPolicy& policy) {
  const Eigen::VectorXd probe = unit_probe(x) * x.norm();  // validates x != 0, keeps scale
  double horizon = std::min(policy.initial, policy.cap);
  for (;;) {
    const TrajectoryResult traj = family.trajectory(t0, probe, horizon, policy.dt);
    const double value = norm(space, traj.norms);
    if (traj.overflow) return {value, TruncationFlag::Capped, true, horizon};

    const double tail = norm(space, suffix_part(traj.norms, t0 + horizon - 1.0));
    if (tail <= policy.rel_tol * std::max(value, 1e-300))
      return {value, TruncationFlag::Converged, false, horizon};

    if (horizon >= policy.cap) {
      const double half = norm(space, prefix_part(traj.norms, t0 + 0.5 * horizon));
      const bool diverging = half > 0.0 ? value / half > policy.growth_ratio_limit : value > 0.0;
      return {value, TruncationFlag::Capped, diverging, horizon};
    }
    horizon = std::min(2.0 * horizon, policy.cap);
  }
}

DatkoReport datko_sup(const EvolutionFamily& family, const SpaceSpec& space, const std::vector<double>& t0_grid,
                      const std::vector<Eigen::VectorXd>& probes, const HorizonPolicy& policy) {
  if (t0_grid.empty() || probes.empty()) throw std::invalid_argument("datko_sup: grid and probes must be nonempty");

  DatkoReport report;
  report.space = space;
  report.horizon_cap = policy.cap;
  for (const auto& x : probes) report.probes.push_back(unit_probe(x));

  if (family.is_semigroup()) {
    // The trajectory norm is a function of t - t0 only and the norms are
    // shift-isometric, so one base point carries the sup.
    report.t0_grid = {family.domain() == TimeDomain::HalfLine ? 0.0 : t0_grid.front()};
    report.semigroup_reduced = true;
  } else if (family.is_periodic()) {
    // Values depend on t0 only through its offset in the period strip; sweep
    // a canonical grid on [0, T).
    const double period = family.period();
    const auto count = t0_grid.size();
    report.t0_grid.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
      report.t0_grid.push_back(static_cast<double>(k) * period / static_cast<double>(count));
    report.periodic_reduced = true;
  } else {
    report.t0_grid = t0_grid;
  }

  report.sup_per_probe.assign(report.probes.size(), 0.0);
  report.cells.reserve(report.t0_grid.size());
  for (const double t0 : report.t0_grid) {
    std::vector<TrajectoryNorm> row;
    row.reserve(report.probes.size());
    for (std::size_t j = 0; j < report.probes.size(); ++j) {
      TrajectoryNorm cell = trajectory_space_norm(family, t0, report.probes[j], space, policy);
      report.sup_per_probe[j] = std::max(report.sup_per_probe[j], cell.value);
      report.divergent = report.divergent || cell.divergent;
      row.push_back(cell);
    }
    report.cells.push_back(std::move(row));
  }
  return report;
}

bool DatkoReport::operator==(const DatkoReport& other) const {
  if (!(space == other.space) || t0_grid != other.t0_grid || sup_per_probe != other.sup_per_probe ||
      cells != other.cells || horizon_cap != other.horizon_cap || divergent != other.divergent ||
      semigroup_reduced != other.semigroup_reduced || periodic_reduced != other.periodic_reduced)
    return false;
  if (probes.size() != other.probes.size()) return false;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (probes[i].size() != other.probes[i].size()) return false;
    for (Eigen::Index j = 0; j < probes[i].size(); ++j)
      if (probes[i](j) != other.probes[i](j)) return false;
  }
  return true;
}

double phi_seminorm(const EvolutionFamily& family, double t, double t0, const Eigen::VectorXd& x,
                    const SpaceSpec& space, double dt) {
  if (!(t > t0)) throw std::invalid_argument("phi_seminorm: requires t > t0");
  const TrajectoryResult traj = family.trajectory(t0, x, t - t0, dt);
  return norm(space, traj.norms);
}

SeminormEstimate estimate_uniform_bound(const EvolutionFamily& family, const SpaceSpec& space,
                                        const std::vector<double>& t_grid, const std::vector<double>& t0_grid,
                                        const std::vector<Eigen::VectorXd>& probes, double dt,
                                        double growth_ratio_limit) {
  if (t_grid.empty() || t0_grid.empty() || probes.empty())
    throw std::invalid_argument("estimate_uniform_bound: grids and probes must be nonempty");

  SeminormEstimate est;
  est.t_count = t_grid.size();
  est.t0_count = t0_grid.size();
  est.probe_count = probes.size();

  for (const double t0 : t0_grid) {
    double widest = 0.0;
    for (const double t : t_grid) widest = std::max(widest, t - t0);
    if (!(widest > 0.0)) continue;

    for (std::size_t j = 0; j < probes.size(); ++j) {
      const Eigen::VectorXd x = unit_probe(probes[j]);
      const TrajectoryResult traj = family.trajectory(t0, x, widest, dt);
      if (traj.overflow) est.divergent = true;

      for (const double t : t_grid) {
        if (!(t > t0)) continue;
        const double value = norm(space, prefix_part(traj.norms, t));
        if (value > est.bound) {
          est.bound = value;
          est.argmax_t = t;
          est.argmax_t0 = t0;
          est.argmax_probe = static_cast<int>(j);
        }
      }

      const double full = norm(space, prefix_part(traj.norms, t0 + widest));
      const double half = norm(space, prefix_part(traj.norms, t0 + 0.5 * widest));
      if (half > 0.0 && full / half > growth_ratio_limit) est.divergent = true;
    }
  }
  return est;
}

double forward_bound(const SpaceConstants& constants, double k1, double alpha) {
  if (!(k1 >= 1.0)) throw std::invalid_argument("forward_bound: needs K1 >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("forward_bound: needs alpha > 0");
  const double decay = 1.0 - std::exp(-alpha);
  return 2.0 * constants.n_shift * constants.n_shift * k1 * alpha * constants.lambda1_chi_norm / (decay * decay);
}

namespace {

double residual_sweep(const EvolutionFamily& family, double k1, double alpha, const std::vector<double>& t0_grid,
                      double duration, const std::vector<Eigen::VectorXd>& probes, double step) {
  double residual = -std::numeric_limits<double>::infinity();
  for (const double t0 : t0_grid) {
    for (const auto& raw : probes) {
      const Eigen::VectorXd x = unit_probe(raw);
      const TrajectoryResult traj = family.trajectory(t0, x, duration, step);
      for (std::size_t k = 0; k < traj.norms.size(); ++k) {
        const double s = static_cast<double>(k) * step;
        residual = std::max(residual, traj.norms.value_at(k) - k1 * std::exp(-alpha * s));
      }
      if (traj.overflow) residual = std::max(residual, kOverflowGuard);
    }
  }
  return residual;
}

std::vector<double> verification_t0s(const std::vector<double>& grid) {
  if (grid.empty()) return {0.0};
  std::vector<double> out{grid.front()};
  if (grid.size() > 2) out.push_back(grid[grid.size() / 2]);
  if (grid.size() > 1) out.push_back(grid.back());
  return out;
}

}  // namespace

StabilityCertificate certify_stability(const EvolutionFamily& family, const SpaceSpec& space,
                                       const DatkoReport& report, const SeminormEstimate& seminorms, double q,
                                       const CertifyOptions& opts) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("certify_stability: q must lie in (0, 1)");

  StabilityCertificate cert;
  cert.derivation.contraction = q;
  cert.derivation.uniform_bound = seminorms.bound;
  cert.derivation.constants = space_constants(space, 64);

  if (!space.chi_norm_unbounded()) {
    cert.refusal_reason = kRefusalConstraint;
    return cert;
  }
  if (report.divergent || seminorms.divergent) {
    cert.refusal_reason = kRefusalDivergent;
    return cert;
  }

  const double growth_coeff = family.exp_bound().growth_coeff;
  const double growth_rate = family.exp_bound().growth_rate;
  const SpaceConstants& sc = cert.derivation.constants;
  const double bound_c = std::max(seminorms.bound, 1e-300);

  const double averaged_branch =
      growth_coeff * bound_c * sc.m_avg * growth_rate / ((1.0 - std::exp(-growth_rate)) * sc.inf_chi);
  const double uniform_growth = std::max(growth_coeff * std::exp(growth_rate), averaged_branch);
  cert.derivation.uniform_growth = uniform_growth;

  auto contracts = [&](double delta) { return sc.n_shift * uniform_growth * bound_c <= q * chi_growth(space, delta); };

  double hi = 1.0;
  int doublings = 0;
  while (!contracts(hi)) {
    hi *= 2.0;
    if (++doublings > 60) {
      cert.refusal_reason = kRefusalConstraint;  // window norms saturated numerically
      return cert;
    }
  }
  double lo = hi > 1.0 ? 0.5 * hi : 0.0;
  while (hi - lo > opts.delta_refine) {
    const double mid = 0.5 * (lo + hi);
    (contracts(mid) ? hi : lo) = mid;
  }
  cert.derivation.contraction_time = hi;
  cert.decay_coeff = uniform_growth / q;
  cert.decay_rate = std::log(1.0 / q) / hi;

  cert.verification_residual = residual_sweep(family, cert.decay_coeff, cert.decay_rate,
                                              verification_t0s(report.t0_grid), opts.verify_duration, report.probes,
                                              opts.verify_step);
  if (cert.verification_residual > opts.residual_tol) {
    cert.refusal_reason = kRefusalVerification;
    return cert;
  }
  cert.status = CertStatus::Certified;
  return cert;
}

double verify_certificate(const EvolutionFamily& family, const StabilityCertificate& cert,
                          const std::vector<double>& t0_grid, double duration,
                          const std::vector<Eigen::VectorXd>& probes, double step) {
  if (!cert.certified()) throw std::invalid_argument("verify_certificate: certificate is not certified");
  if (t0_grid.empty() || probes.empty()) throw std::invalid_argument("verify_certificate: grid and probes required");
  return residual_sweep(family, cert.decay_coeff, cert.decay_rate, t0_grid, duration, probes, step);
}

EmpiricalFit empirical_decay_fit(const EvolutionFamily& family, const std::vector<double>& t0_grid, double duration,
                                 const std::vector<Eigen::VectorXd>& probes, double step) {
  if (t0_grid.empty() || probes.empty()) throw std::invalid_argument("empirical_decay_fit: grid and probes required");
  EmpiricalFit fit;
  const auto samples = static_cast<std::size_t>(std::floor(duration / step + 1e-9)) + 1;
  fit.offsets.resize(samples);
  fit.norm_probe_max.assign(samples, 0.0);
  for (std::size_t k = 0; k < samples; ++k) fit.offsets[k] = static_cast<double>(k) * step;

  for (const double t0 : t0_grid) {
    for (const auto& raw : probes) {
      const Eigen::VectorXd x = unit_probe(raw);
      const TrajectoryResult traj = family.trajectory(t0, x, duration, step);
      for (std::size_t k = 0; k < traj.norms.size() && k < samples; ++k)
        fit.norm_probe_max[k] = std::max(fit.norm_probe_max[k], traj.norms.value_at(k));
    }
  }

  // log-linear least squares on the positive part of the profile
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    if (!(fit.norm_probe_max[k] > 0.0)) continue;
    const double xk = fit.offsets[k];
    const double yk = std::log(fit.norm_probe_max[k]);
    sx += xk;
    sy += yk;
    sxx += xk * xk;
    sxy += xk * yk;
    ++n;
  }
  if (n >= 2) {
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    if (denom > 0.0) {
      const double slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
      const double intercept = (sy - slope * sx) / static_cast<double>(n);
      fit.decay_rate = -slope;
      fit.decay_coeff = std::exp(intercept);
    }
  }
  return fit;
}

}  // namespace evostab
