#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "evostab/evolution.hpp"
#include "evostab/spaces.hpp"

namespace evostab {

/// Truncation policy for tail norms: the horizon doubles from `initial` until
/// the norm of the trajectory piece in the last unit window drops below
/// rel_tol times the total, or the cap is reached.
struct HorizonPolicy {
  double rel_tol = 1e-4;
  double cap = 200.0;
  double initial = 8.0;
  double dt = 1e-2;
  double growth_ratio_limit = 1.01;  // doubling ratio above this at the cap flags divergence
};

enum class TruncationFlag { Converged, Capped };

struct TrajectoryNorm {
  double value = 0.0;
  TruncationFlag flag = TruncationFlag::Converged;
  bool divergent = false;
  double horizon = 0.0;

  bool operator==(const TrajectoryNorm&) const = default;
};

/// Norm of the forward trajectory t -> ||U(t, t0) x|| on [t0, inf), truncated
/// per the policy. Overflow and unbounded horizon growth set the divergence
/// flag; the returned value is always finite (norm of the truncated part).
TrajectoryNorm trajectory_space_norm(const EvolutionFamily& family, double t0, const Eigen::VectorXd& x,
                                     const SpaceSpec& space, const HorizonPolicy& policy = {});

struct DatkoReport {
  SpaceSpec space = SpaceSpec::lp(2.0);
  std::vector<double> t0_grid;           // effective grid after reductions
  std::vector<Eigen::VectorXd> probes;   // unit vectors
  std::vector<std::vector<TrajectoryNorm>> cells;  // [t0 index][probe index]
  std::vector<double> sup_per_probe;     // sup over t0 of the trajectory norm
  double horizon_cap = 0.0;
  bool divergent = false;
  bool semigroup_reduced = false;
  bool periodic_reduced = false;

  bool operator==(const DatkoReport& other) const;
};

/**
 * Sup over the t0 grid of the trajectory norms, per probe. Semigroup
 * families are evaluated at t0 = 0 only (shift isometry makes the value
 * t0-independent); periodic families sweep a canonical grid on one period
 * strip, since the value depends on t0 only through its strip offset.
 */
DatkoReport datko_sup(const EvolutionFamily& family, const SpaceSpec& space, const std::vector<double>& t0_grid,
                      const std::vector<Eigen::VectorXd>& probes, const HorizonPolicy& policy = {});

/// Norm of the trajectory restricted to [t0, t], zero outside.
double phi_seminorm(const EvolutionFamily& family, double t, double t0, const Eigen::VectorXd& x,
                    const SpaceSpec& space, double dt = 1e-2);

struct SeminormEstimate {
  double bound = 0.0;  // empirical uniform constant C
  bool divergent = false;
  double argmax_t = 0.0;
  double argmax_t0 = 0.0;
  int argmax_probe = 0;
  std::size_t t_count = 0;
  std::size_t t0_count = 0;
  std::size_t probe_count = 0;

  bool operator==(const SeminormEstimate&) const = default;
};

/// Empirical uniform bound of the window seminorms: max over sampled
/// (t, t0, x) of phi_seminorm / ||x||. Flags divergence when the widest
/// window still grows by more than the policy ratio over a doubling.
SeminormEstimate estimate_uniform_bound(const EvolutionFamily& family, const SpaceSpec& space,
                                        const std::vector<double>& t_grid, const std::vector<double>& t0_grid,
                                        const std::vector<Eigen::VectorXd>& probes, double dt = 1e-2,
                                        double growth_ratio_limit = 1.01);

/// Theoretical per-unit-state bound on the trajectory norm of an
/// exponentially stable family: 2 N^2 K1 alpha ||lambda1 chi01|| / (1-e^{-alpha})^2.
double forward_bound(const SpaceConstants& constants, double k1, double alpha);

enum class CertStatus { Certified, Refused };

inline constexpr const char* kRefusalConstraint = "ConstraintFailed";
inline constexpr const char* kRefusalDivergent = "Divergent";
inline constexpr const char* kRefusalVerification = "VerificationFailed";

struct StabilityCertificate {
  CertStatus status = CertStatus::Refused;
  std::string refusal_reason;  // empty when certified
  double decay_coeff = 0.0;    // K1 >= 1
  double decay_rate = 0.0;     // alpha > 0
  struct Derivation {
    double uniform_bound = 0.0;    // C
    double uniform_growth = 0.0;   // C1
    double contraction = 0.0;      // q
    double contraction_time = 0.0; // Delta
    SpaceConstants constants;

    bool operator==(const Derivation&) const = default;
  } derivation;
  double verification_residual = 0.0;
  bool certified() const { return status == CertStatus::Certified; }

  bool operator==(const StabilityCertificate&) const = default;
};

struct CertifyOptions {
  double delta_refine = 1e-2;     // bisection width for the contraction time
  double residual_tol = 1e-9;     // demote to refused beyond this
  double verify_duration = 100.0;
  double verify_step = 0.05;
};

/**
 * Explicit certificate chain: uniform growth constant
 * C1 = max(K e^c, K C M c / ((1-e^{-c}) inf_chi)), smallest Delta with
 * N C1 C / ||chi_[0,Delta]|| <= q, then K1 = C1/q and alpha = ln(1/q)/Delta.
 * Refuses when the space's window norms saturate, when the report or the
 * seminorm estimate flags divergence, or (never expected) when the derived
 * bound fails its own verification sweep.
 */
StabilityCertificate certify_stability(const EvolutionFamily& family, const SpaceSpec& space, const DatkoReport& report,
                                       const SeminormEstimate& seminorms, double q, const CertifyOptions& opts = {});

/// Max over the sampling grid of ||U(t0+s, t0) x|| - K1 e^{-alpha s} ||x||.
/// Negative means the certificate holds with slack. Requires a certified input.
double verify_certificate(const EvolutionFamily& family, const StabilityCertificate& cert,
                          const std::vector<double>& t0_grid, double duration,
                          const std::vector<Eigen::VectorXd>& probes, double step = 0.05);

struct EmpiricalFit {
  double decay_coeff = 0.0;  // K1 from log-linear regression; not certified
  double decay_rate = 0.0;   // alpha from the fit
  std::vector<double> offsets;          // s grid
  std::vector<double> norm_probe_max;   // max over (t0, x) of ||U(t0+s,t0)x||/||x||
};

/// Tightness diagnostic: log-linear fit of the probe-maximum decay profile.
EmpiricalFit empirical_decay_fit(const EvolutionFamily& family, const std::vector<double>& t0_grid, double duration,
                                 const std::vector<Eigen::VectorXd>& probes, double step = 0.25);

/// Canonical basis plus seeded random unit vectors.
std::vector<Eigen::VectorXd> default_probes(int dim, int random_count, std::uint64_t seed);

/// Uniform grid of `count` points on [lo, hi] (endpoint included).
std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

}  // namespace evostab
