#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <variant>

#include "evostab/grid_function.hpp"

namespace evostab {

enum class TimeDomain { HalfLine, Line };

struct IntegratorSettings {
  double step = 1e-3;  // fixed RK4 step
};

/// Exponential-bound metadata: ||U(t,s)x|| <= K e^{c (t-s)} ||x||.
struct ExpBound {
  double growth_coeff = 1.0;  // K >= 1
  double growth_rate = 1.0;   // c > 0
};

struct TrajectoryResult {
  GridFunction norms;   // t -> ||U(t, t0) x||, sampled on [t0, t0 + horizon]
  bool overflow = false;  // propagation exceeded the overflow guard; the
                          // samples are truncated at the last finite value
};

/**
 * A two-parameter family U(t, s), t >= s, acting on R^n, in one of four
 * variants: a scalar flow with coefficient a(t), a matrix ODE x' = A(t) x
 * propagated by fixed-step RK4, a constant-coefficient semigroup e^{(t-s)A},
 * or a periodic wrapper that reduces both arguments into the base strip.
 * Immutable after construction; evaluation is pure.
 */
class EvolutionFamily {
 public:
  using ScalarCoeff = std::function<double(double)>;
  using MatrixCoeff = std::function<Eigen::MatrixXd(double)>;

  /// Scalar flow x -> x * exp(integral of a over [s, t]). When an
  /// antiderivative of a is supplied the flow is evaluated in closed form,
  /// otherwise the integral is computed by composite Simpson.
  static EvolutionFamily scalar(ScalarCoeff a, ExpBound bound, TimeDomain domain = TimeDomain::HalfLine,
                                ScalarCoeff antiderivative = nullptr);

  static EvolutionFamily linear_ode(int dim, MatrixCoeff a, ExpBound bound, TimeDomain domain = TimeDomain::HalfLine,
                                    IntegratorSettings integrator = {});

  static EvolutionFamily semigroup(Eigen::MatrixXd a, ExpBound bound, TimeDomain domain = TimeDomain::HalfLine);

  static EvolutionFamily periodic(EvolutionFamily base, double period);

  int dim() const { return dim_; }
  TimeDomain domain() const { return domain_; }
  const ExpBound& exp_bound() const { return bound_; }
  bool is_semigroup() const;
  bool is_periodic() const;
  double period() const;  // throws unless periodic

  /// U(t, s) x. Requires t >= s and both arguments inside the domain.
  Eigen::VectorXd apply(double t, double s, const Eigen::VectorXd& x) const;

  /// Samples t -> ||U(t, t0) x|| on [t0, t0 + horizon] with one forward
  /// propagation. Overflow is reported through the result flag, not thrown.
  TrajectoryResult trajectory(double t0, const Eigen::VectorXd& x, double horizon, double dt) const;

 private:
  struct Scalar {
    ScalarCoeff a;
    ScalarCoeff antiderivative;  // may be null
  };
  struct LinearOde {
    MatrixCoeff a;
    IntegratorSettings integrator;
  };
  struct Semigroup {
    Eigen::MatrixXd a;
  };
  struct Periodic {
    std::shared_ptr<const EvolutionFamily> base;
    double period;
  };
  using Variant = std::variant<Scalar, LinearOde, Semigroup, Periodic>;

  EvolutionFamily(Variant v, int dim, ExpBound bound, TimeDomain domain);

  void check_pair(double t, double s) const;
  double scalar_integral(const Scalar& sc, double s, double t) const;
  Eigen::VectorXd propagate_ode(const LinearOde& ode, double s, double t, Eigen::VectorXd x) const;

  Variant variant_;
  int dim_;
  ExpBound bound_;
  TimeDomain domain_;
};

/// Decomposes t0 = n * period + tau with tau in [0, period).
std::pair<long long, double> periodic_reduce(double t0, double period);

struct ExpBoundCheck {
  double coeff_emp = 0.0;  // smallest K fitting the declared rate
  double rate_emp = 0.0;   // smallest growth rate fitting the declared K
  bool violated = false;
};

/// Samples random (t, s, x) pairs and checks the declared exponential bound.
ExpBoundCheck exp_bound_check(const EvolutionFamily& family, int sample_pairs, std::uint64_t seed = 20260810ull);

/// Matrix of U(t, s) assembled column by column from basis vectors.
Eigen::MatrixXd propagator_matrix(const EvolutionFamily& family, double t, double s);

/// Overflow guard for trajectory propagation.
inline constexpr double kOverflowGuard = 1e150;

}  // namespace evostab
