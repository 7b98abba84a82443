#pragma once

#include <cstdint>
#include <string>

#include "evostab/grid_function.hpp"

namespace evostab {

inline constexpr std::uint64_t kDefaultSeed = 20260810ull;

enum class SpaceKind { Lp, Lorentz, MSpace, LInfty };

/**
 * Which norm to put on sampled functions. Supported families:
 *   - Lp(p), p in [1, inf]  (p = inf is normalized to LInfty)
 *   - Lorentz(p, q), p in [1, inf), q in [1, inf]
 *   - MSpace: sup over t of the unit-window integral of |f|
 *   - LInfty: sup norm
 */
class SpaceSpec {
 public:
  static SpaceSpec lp(double p, Quadrature quad = Quadrature::Trapezoid);
  static SpaceSpec lorentz(double p, double q, Quadrature quad = Quadrature::Trapezoid);
  static SpaceSpec mspace();
  static SpaceSpec linfty();

  /// Parses the CLI syntax: "L1", "L2.5", "Linf", "L2,1" (Lorentz), "M".
  static SpaceSpec parse(const std::string& text);

  SpaceKind kind() const { return kind_; }
  double p() const { return p_; }
  double q() const { return q_; }
  Quadrature quadrature() const { return quad_; }
  SpaceSpec with_quadrature(Quadrature quad) const;

  std::string name() const;

  /// Whether ||chi_[0,t]|| grows without bound as t -> inf. Decided in closed
  /// form for every implemented family (Lp and Lorentz with p < inf grow like
  /// t^{1/p}; MSpace and LInfty saturate).
  bool chi_norm_unbounded() const;

  bool operator==(const SpaceSpec& other) const;

 private:
  SpaceSpec(SpaceKind kind, double p, double q, Quadrature quad) : kind_(kind), p_(p), q_(q), quad_(quad) {}
  SpaceKind kind_;
  double p_;
  double q_;
  Quadrature quad_;
};

enum class Provenance { Analytic, Estimated };

/// Structural constants of a space: the averaging constant, the shift
/// operator bound, the infimum of unit-window characteristic norms, and the
/// norm of the sliding-average image of a unit characteristic function.
struct SpaceConstants {
  double m_avg = 1.0;
  double n_shift = 1.0;
  double inf_chi = 1.0;
  double lambda1_chi_norm = 0.0;
  Provenance m_avg_prov = Provenance::Analytic;
  Provenance n_shift_prov = Provenance::Analytic;
  Provenance inf_chi_prov = Provenance::Analytic;
  Provenance lambda1_chi_prov = Provenance::Analytic;

  bool operator==(const SpaceConstants&) const = default;
};

/// Norm of f in the given space. Rejects Lorentz spaces with p = inf (the
/// SpaceSpec factory already does) and propagates GridFunction validation.
double norm(const SpaceSpec& space, const GridFunction& f);

/// Sliding unit-window average: (lambda1 f)(t) = integral of f over [t, t+1].
/// The result support covers every t whose window touches f's support.
GridFunction lambda1(const GridFunction& f);

/// Shift operator: (shift(f, tau))(t) = f(t + tau). Moves t_start only; the
/// samples are untouched, so every implemented norm is exactly preserved.
GridFunction shift(const GridFunction& f, double tau);

/// Nonincreasing equimeasurable rearrangement of |f|, laid out on [0, len*dt).
GridFunction decreasing_rearrangement(const GridFunction& f);

/// Closed-form ||chi_[0,t]||: t^{1/p} for Lp and Lorentz(p, .), min(t, 1) for
/// MSpace, 1 for LInfty.
double chi_growth(const SpaceSpec& space, double t);

/// Generic fallback for the growth decision: doubling ratio test on
/// chi_growth. Saturated means three consecutive doublings grew by less than
/// ratio_limit. Agrees with SpaceSpec::chi_norm_unbounded on every
/// implemented space with the default limit (largest supported Lp ratio is
/// 2^{1/p}, so the test is meaningful for p well below ~70).
bool chi_growth_ratio_saturated(const SpaceSpec& space, double ratio_limit = 1.01, int max_doublings = 24);

/**
 * Structural constants for a space. Shift bound and window-characteristic
 * infimum are analytic for every implemented space (translation invariance);
 * the averaging constant is analytic (= 1, via the Hoelder bound) for Lp and
 * LInfty and otherwise estimated as a flagged lower bound by maximizing the
 * averaging ratio over the canonical probe family.
 */
SpaceConstants space_constants(const SpaceSpec& space, int probe_budget, std::uint64_t seed = kDefaultSeed,
                               double dt = 1e-2);

struct ExpKernelCheck {
  double numeric_norm = 0.0;      // ||e^{-alpha|.|}|| on the truncated window
  double series_bound = 0.0;      // 2 N alpha ||lambda1 chi_[0,1]|| / (1 - e^{-alpha})^2
  double kernel_residual = 0.0;   // max |v_closed(t) - v_quadrature(t)| on [-5, 5]
};

/**
 * Builds the two-sided exponential kernel e^{-alpha|t|}, evaluates its norm,
 * and cross-checks the closed-form convolution v(t) of the kernel with
 * chi_[0,1] against direct quadrature. Throws if either of the two provable
 * inequalities (norm <= series bound; e^{alpha|t|} v(t) >= (1-e^{-alpha})/alpha)
 * fails beyond floating-point tolerance, since that can only be a bug.
 */
ExpKernelCheck exp_kernel(const SpaceSpec& space, double alpha, double dt = 1e-3);

/// Piecewise closed form of the kernel/window convolution used by exp_kernel.
double exp_kernel_convolution(double alpha, double t);

}  // namespace evostab
