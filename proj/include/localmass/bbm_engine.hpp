#pragma once

// Exact simulation of strictly dyadic branching Brownian motion in R^d started
// from a single particle at the origin, plus fixed-time local-mass observables.

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "localmass/random.hpp"

namespace localmass {

inline constexpr std::size_t kDefaultMaxParticles = 20'000'000;

struct SimConfig {
  double beta{1.0};
  int dim{1};
  double t_end{0.0};
  std::size_t max_particles{kDefaultMaxParticles};
  std::uint64_t seed{0};
};

void validate(const SimConfig& config);

/// Population at a fixed time; one column per particle.
struct ParticleSnapshot {
  double time{0.0};
  Eigen::MatrixXd positions;

  std::size_t size() const noexcept { return static_cast<std::size_t>(positions.cols()); }
  int dim() const noexcept { return static_cast<int>(positions.rows()); }
};

/// Open ball B(center, radius).
struct Ball {
  Eigen::VectorXd center;
  double radius{1.0};

  Ball() = default;
  Ball(Eigen::VectorXd c, double r);

  static Ball origin(int dim, double radius) { return Ball(Eigen::VectorXd::Zero(dim), radius); }
};

/// Ball translated radially at speed theta * sqrt(2 beta).
class MovingBallSpec {
 public:
  /// Direction is taken from base.center; for a ball centred at the origin the
  /// first coordinate axis is used.
  MovingBallSpec(Ball base, double theta, double beta);

  /// Explicit direction; normalised here and required to be parallel to
  /// base.center when the centre is not the origin.
  MovingBallSpec(Ball base, double theta, double beta, Eigen::VectorXd direction);

  const Ball& base() const noexcept { return base_; }
  double theta() const noexcept { return theta_; }
  double beta() const noexcept { return beta_; }
  const Eigen::VectorXd& direction() const noexcept { return direction_; }
  int dim() const noexcept { return static_cast<int>(base_.center.size()); }

 private:
  void check() const;

  Ball base_;
  double theta_;
  double beta_;
  Eigen::VectorXd direction_;
};

/// Stream id used for replica `replica` of a campaign keyed on config.seed.
RandomStream replica_stream(std::uint64_t seed, std::uint64_t replica);

/// Runs replica `replica` of the configured process up to config.t_end.
ParticleSnapshot simulate(const SimConfig& config, std::uint64_t replica = 0);

/// Evolves a BBM that starts with the particles in `initial` at time
/// `start_time` for `duration`, drawing from `rng`. Returns the population at
/// start_time + duration. Throws CapacityError when the population would
/// exceed max_particles.
ParticleSnapshot evolve(const Eigen::MatrixXd& initial, double start_time, double duration,
                        double beta, std::size_t max_particles, RandomStream& rng);

/// Z_t(ball): particles strictly inside the open ball.
std::size_t local_mass(const ParticleSnapshot& snapshot, const Ball& ball);

Ball moving_ball_at(const MovingBallSpec& spec, double t);

/// Particles with |x| >= radius.
std::size_t mass_outside(const ParticleSnapshot& snapshot, double radius);

/// M_t = max |x| over the population.
double support_radius(const ParticleSnapshot& snapshot);

}  // namespace localmass
