#include "localmass/bbm_engine.hpp"

#include <cmath>
#include <vector>

#include "localmass/errors.hpp"

namespace localmass {

void validate(const SimConfig& config) {
  if (!(config.beta > 0.0) || !std::isfinite(config.beta)) {
    throw DomainError("beta must be > 0");
  }
  if (config.dim < 1) throw DomainError("dim must be >= 1");
  if (!(config.t_end >= 0.0) || !std::isfinite(config.t_end)) {
    throw DomainError("t_end must be >= 0");
  }
  if (config.max_particles < 1) throw DomainError("max_particles must be >= 1");
}

Ball::Ball(Eigen::VectorXd c, double r) : center(std::move(c)), radius(r) {
  if (!(radius > 0.0)) throw DomainError("ball radius must be > 0");
  if (center.size() < 1) throw DomainError("ball centre must have dimension >= 1");
}

MovingBallSpec::MovingBallSpec(Ball base, double theta, double beta)
    : base_(std::move(base)), theta_(theta), beta_(beta) {
  const double norm = base_.center.norm();
  if (norm > 0.0) {
    direction_ = base_.center / norm;
  } else {
    direction_ = Eigen::VectorXd::Unit(base_.center.size(), 0);
  }
  check();
}

MovingBallSpec::MovingBallSpec(Ball base, double theta, double beta, Eigen::VectorXd direction)
    : base_(std::move(base)), theta_(theta), beta_(beta), direction_(std::move(direction)) {
  if (direction_.size() != base_.center.size()) {
    throw DomainError("moving ball direction has the wrong dimension");
  }
  const double norm = direction_.norm();
  if (!(norm > 0.0)) throw DomainError("moving ball direction must be non-zero");
  direction_ /= norm;
  const double cnorm = base_.center.norm();
  if (cnorm > 0.0) {
    // Parallel and pointing the same way as the centre.
    if (std::abs(direction_.dot(base_.center) / cnorm - 1.0) > 1e-12) {
      throw DomainError("moving ball direction must point along the ball centre");
    }
  }
  check();
}

void MovingBallSpec::check() const {
  if (!(theta_ >= 0.0) || !(theta_ < 1.0)) throw DomainError("theta must satisfy 0 <= theta < 1");
  if (!(beta_ > 0.0)) throw DomainError("beta must be > 0");
  if (std::abs(direction_.norm() - 1.0) > 1e-12) throw DomainError("direction must be a unit vector");
}

RandomStream replica_stream(std::uint64_t seed, std::uint64_t replica) {
  return RandomStream(seed, replica);
}

ParticleSnapshot simulate(const SimConfig& config, std::uint64_t replica) {
  validate(config);
  auto rng = replica_stream(config.seed, replica);
  const Eigen::MatrixXd origin = Eigen::MatrixXd::Zero(config.dim, 1);
  return evolve(origin, 0.0, config.t_end, config.beta, config.max_particles, rng);
}

// Superposition of the N independent Exp(beta) clocks: the next branching
// happens after Exp(beta N) and involves a uniformly chosen particle. Positions
// are advanced lazily, only when a particle branches and at the final time,
// with an exact Gaussian increment of variance (elapsed time) per coordinate.
ParticleSnapshot evolve(const Eigen::MatrixXd& initial, double start_time, double duration,
                        double beta, std::size_t max_particles, RandomStream& rng) {
  if (!(beta > 0.0)) throw DomainError("beta must be > 0");
  if (!(duration >= 0.0)) throw DomainError("duration must be >= 0");
  const auto dim = static_cast<std::size_t>(initial.rows());
  std::size_t n = static_cast<std::size_t>(initial.cols());
  if (dim < 1 || n < 1) throw DomainError("initial population must be non-empty");
  if (n > max_particles) throw CapacityError(start_time, max_particles);

  std::vector<double> pos(initial.data(), initial.data() + dim * n);
  std::vector<double> last(n, 0.0);
  pos.reserve(dim * 64);
  last.reserve(64);

  double now = 0.0;
  while (true) {
    now += rng.exponential(beta * static_cast<double>(n));
    if (now >= duration) break;
    const std::size_t parent = rng.index(n);
    const double scale = std::sqrt(now - last[parent]);
    double* p = pos.data() + parent * dim;
    for (std::size_t k = 0; k < dim; ++k) p[k] += scale * rng.normal();
    last[parent] = now;
    if (n + 1 > max_particles) throw CapacityError(start_time + now, max_particles);
    pos.resize(pos.size() + dim);
    for (std::size_t k = 0; k < dim; ++k) pos[n * dim + k] = pos[parent * dim + k];
    last.push_back(now);
    ++n;
  }

  ParticleSnapshot snap;
  snap.time = start_time + duration;
  snap.positions.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = std::sqrt(duration - last[i]);
    for (std::size_t k = 0; k < dim; ++k) {
      snap.positions(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
          pos[i * dim + k] + scale * rng.normal();
    }
  }
  return snap;
}

std::size_t local_mass(const ParticleSnapshot& snapshot, const Ball& ball) {
  if (ball.center.size() != snapshot.positions.rows()) {
    throw UsageError("ball dimension does not match snapshot dimension");
  }
  const double r2 = ball.radius * ball.radius;
  const auto d2 = (snapshot.positions.colwise() - ball.center).colwise().squaredNorm();
  return static_cast<std::size_t>((d2.array() < r2).count());
}

Ball moving_ball_at(const MovingBallSpec& spec, double t) {
  if (!(t >= 0.0)) throw DomainError("moving_ball_at requires t >= 0");
  const double shift = spec.theta() * std::sqrt(2.0 * spec.beta()) * t;
  return Ball(spec.base().center + shift * spec.direction(), spec.base().radius);
}

std::size_t mass_outside(const ParticleSnapshot& snapshot, double radius) {
  if (!(radius >= 0.0)) throw DomainError("mass_outside requires radius >= 0");
  const double r2 = radius * radius;
  const auto n2 = snapshot.positions.colwise().squaredNorm();
  return static_cast<std::size_t>((n2.array() >= r2).count());
}

double support_radius(const ParticleSnapshot& snapshot) {
  if (snapshot.size() == 0) throw UsageError("support_radius of an empty snapshot");
  return snapshot.positions.colwise().norm().maxCoeff();
}

}  // namespace localmass
