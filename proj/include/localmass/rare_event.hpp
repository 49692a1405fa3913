#pragma once

// Lower-tail probabilities of the local mass and their exponential decay
// rates: direct Monte Carlo, an importance-sampling estimator of the
// branch-suppression strategy (a lower bound), and a weighted slope fit.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "localmass/bbm_engine.hpp"

namespace localmass {

enum class EventKind { LowerTailInsideMovingBall, EmptyMovingBall, LowerTailOutsideExpandingBall };

std::string to_string(EventKind kind);
EventKind parse_event_kind(const std::string& text);

class EventSpec {
 public:
  /// {Z_t(B_t) < e^{beta a t}}.
  static EventSpec inside_moving_ball(MovingBallSpec moving, double a);
  /// {Z_t(B_t) = 0}.
  static EventSpec empty_moving_ball(MovingBallSpec moving);
  /// {Z_t(B(0, x_t)^c) < e^{beta a t}}, x_t = theta sqrt(2 beta) t.
  static EventSpec outside_expanding_ball(double theta, double a, int dim);

  EventKind kind() const noexcept { return kind_; }
  const std::optional<MovingBallSpec>& moving() const noexcept { return moving_; }
  double theta() const noexcept { return theta_; }
  double a() const noexcept { return a_; }
  int dim() const noexcept { return dim_; }
  bool is_moving_kind() const noexcept { return kind_ != EventKind::LowerTailOutsideExpandingBall; }

 private:
  EventSpec(EventKind kind, std::optional<MovingBallSpec> moving, double theta, double a, int dim);

  EventKind kind_;
  std::optional<MovingBallSpec> moving_;
  double theta_;
  double a_;
  int dim_;
};

enum class EstimatorMethod { Naive, ImportanceLowerBound };

std::string to_string(EstimatorMethod method);

struct EstimateResult {
  double t{0.0};
  double p_hat{0.0};
  double std_error{0.0};
  std::uint64_t replicas{0};
  EstimatorMethod method{EstimatorMethod::Naive};
};

struct SlopeFit {
  double slope{0.0};
  double intercept{0.0};
  double slope_stderr{0.0};
};

struct RunOptions {
  unsigned threads{0};
  std::size_t max_particles{kDefaultMaxParticles};
};

/// Count that the event compares against its threshold.
std::size_t event_mass(const ParticleSnapshot& snapshot, const EventSpec& spec, double beta,
                       double t);

bool event_indicator(const ParticleSnapshot& snapshot, const EventSpec& spec, double beta,
                     double t);

EstimateResult naive_mc(const EventSpec& spec, double beta, int dim, double t,
                        std::uint64_t replicas, std::uint64_t seed, const RunOptions& options = {});

struct ImportanceOptions {
  std::optional<double> rho;
  /// Replace the event indicator by 1; the mean weight then estimates
  /// e^{-beta rho t}.
  bool force_indicator{false};
};

/// Default strategy fraction: the rate minimizer for moving-ball kinds and
/// rho_bar for the expanding-ball kind.
double default_rho(const EventSpec& spec, double beta);

/// Constant drift of the lone particle on [0, rho t].
Eigen::VectorXd strategy_drift(const EventSpec& spec, double beta, double rho);

EstimateResult importance_lower_bound(const EventSpec& spec, double beta, int dim, double t,
                                      std::uint64_t replicas, std::uint64_t seed,
                                      const ImportanceOptions& importance = {},
                                      const RunOptions& options = {});

/// Inverse-variance weighted least squares of log p_hat on t.
SlopeFit decay_slope(std::span<const EstimateResult> estimates);

/// beta * I(theta, a) for moving-ball kinds, beta * rho_bar for the
/// expanding-ball kind.
double theory_rate(const EventSpec& spec, double beta);

}  // namespace localmass
