#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace evostab {

enum class Quadrature { Trapezoid, Simpson };

/**
 * A real-valued function sampled on a uniform grid with compact support.
 *
 * The support window is [t_start, t_start + (size()-1)*dt]. Inside it the
 * function is the linear interpolant of the samples; outside it the function
 * is exactly zero. Construction rejects non-finite samples and dt <= 0.
 */
class GridFunction {
 public:
  GridFunction(double t_start, double dt, std::vector<double> values);

  static GridFunction zero(double t_start, double dt, std::size_t n);

  /// Characteristic function of [a, b] sampled at step dt (value 1 on the
  /// window, including both endpoints; 0 outside by the support convention).
  static GridFunction chi(double a, double b, double dt);

  /// Samples fn at the grid nodes of [a, b].
  template <typename Fn>
  static GridFunction sample(Fn&& fn, double a, double b, double dt) {
    std::vector<double> v;
    const std::size_t n = node_count(a, b, dt);
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(fn(a + static_cast<double>(i) * dt));
    return GridFunction(a, dt, std::move(v));
  }

  double t_start() const { return t_start_; }
  double dt() const { return dt_; }
  double t_end() const { return t_start_ + static_cast<double>(values_.size() - 1) * dt_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double value_at(std::size_t i) const { return values_[i]; }
  double node(std::size_t i) const { return t_start_ + static_cast<double>(i) * dt_; }

  /// Pointwise evaluation; exactly 0 outside the support window.
  double operator()(double t) const;

  double max_abs() const;

  /// Signed integral over the support window.
  double integral(Quadrature rule = Quadrature::Trapezoid) const;

  /// Integral of |f|^p over the support window.
  double integral_abs_pow(double p, Quadrature rule = Quadrature::Trapezoid) const;

  /// Integral of |f| over [a, b]. Exact (trapezoid) when a, b are grid nodes,
  /// linear interpolation of the cumulative integral in between.
  double window_integral_abs(double a, double b) const;

  /// Signed counterpart of window_integral_abs.
  double window_integral(double a, double b) const;

  static std::size_t node_count(double a, double b, double dt);

 private:
  double t_start_;
  double dt_;
  std::vector<double> values_;
};

/// Prefix trapezoid integrals at the grid nodes: out[i] = integral over the
/// first i cells; out[0] = 0, out[n-1] = full integral.
std::vector<double> cumulative_trapezoid(std::span<const double> values, double dt);

/// Composite quadrature of uniformly sampled values. Simpson falls back to a
/// trapezoid cell when the interval count is odd.
double integrate_samples(std::span<const double> values, double dt, Quadrature rule);

}  // namespace evostab
