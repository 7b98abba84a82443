#include "evostab/grid_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace evostab {

GridFunction::GridFunction(double t_start, double dt, std::vector<double> values)
    : t_start_(t_start), dt_(dt), values_(std::move(values)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("GridFunction: dt must be positive and finite");
  if (!std::isfinite(t_start)) throw std::invalid_argument("GridFunction: t_start must be finite");
  if (values_.empty()) throw std::invalid_argument("GridFunction: needs at least one sample");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: samples must be finite");
  }
}

GridFunction GridFunction::zero(double t_start, double dt, std::size_t n) {
  return GridFunction(t_start, dt, std::vector<double>(std::max<std::size_t>(n, 1), 0.0));
}

std::size_t GridFunction::node_count(double a, double b, double dt) {
  if (!(b >= a)) throw std::invalid_argument("GridFunction: window end before start");
  // Round so that an exactly divisible window keeps its endpoint on the grid.
  return static_cast<std::size_t>(std::ceil((b - a) / dt - 1e-9)) + 1;
}

GridFunction GridFunction::chi(double a, double b, double dt) {
  return GridFunction(a, dt, std::vector<double>(node_count(a, b, dt), 1.0));
}

double GridFunction::operator()(double t) const {
  if (t < t_start_ || t > t_end()) return 0.0;
  const double u = (t - t_start_) / dt_;
  const auto i = static_cast<std::size_t>(u);
  if (i + 1 >= values_.size()) return values_.back();
  const double w = u - static_cast<double>(i);
  return values_[i] * (1.0 - w) + values_[i + 1] * w;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double integrate_samples(std::span<const double> values, double dt, Quadrature rule) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  if (rule == Quadrature::Trapezoid) {
    double s = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < n; ++i) s += values[i];
    return s * dt;
  }
  // Composite Simpson over interval pairs; odd leftover handled by trapezoid.
  double s = 0.0;
  std::size_t i = 0;
  while (i + 2 < n) {
    s += (values[i] + 4.0 * values[i + 1] + values[i + 2]) * (dt / 3.0);
    i += 2;
  }
  if (i + 1 < n) s += 0.5 * (values[i] + values[i + 1]) * dt;
  return s;
}

double GridFunction::integral(Quadrature rule) const { return integrate_samples(values_, dt_, rule); }

double GridFunction::integral_abs_pow(double p, Quadrature rule) const {
  std::vector<double> w(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) w[i] = std::pow(std::abs(values_[i]), p);
  return integrate_samples(w, dt_, rule);
}

std::vector<double> cumulative_trapezoid(std::span<const double> values, double dt) {
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t i = 1; i < values.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (values[i - 1] + values[i]) * dt;
  return out;
}

namespace {

// Evaluates a prefix-integral table at an arbitrary time, clamping outside.
double interp_prefix(const std::vector<double>& prefix, double t_start, double dt, double t) {
  if (prefix.empty()) return 0.0;
  const double u = (t - t_start) / dt;
  if (u <= 0.0) return 0.0;
  if (u >= static_cast<double>(prefix.size() - 1)) return prefix.back();
  const auto i = static_cast<std::size_t>(u);
  const double w = u - static_cast<double>(i);
  return prefix[i] * (1.0 - w) + prefix[i + 1] * w;
}

double window_integral_impl(const GridFunction& f, double a, double b, bool absolute) {
  if (!(b >= a)) throw std::invalid_argument("window integral: b < a");
  std::vector<double> v(f.values().begin(), f.values().end());
  if (absolute)
    for (double& x : v) x = std::abs(x);
  const std::vector<double> prefix = cumulative_trapezoid(v, f.dt());
  return interp_prefix(prefix, f.t_start(), f.dt(), b) - interp_prefix(prefix, f.t_start(), f.dt(), a);
}

}  // namespace

double GridFunction::window_integral_abs(double a, double b) const { return window_integral_impl(*this, a, b, true); }

double GridFunction::window_integral(double a, double b) const { return window_integral_impl(*this, a, b, false); }

}  // namespace evostab
