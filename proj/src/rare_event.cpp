#include "localmass/rare_event.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "localmass/errors.hpp"
#include "localmass/parallel.hpp"
#include "localmass/rate_function.hpp"
#include "localmass/statistics.hpp"

namespace localmass {

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::LowerTailInsideMovingBall:
      return "inside";
    case EventKind::EmptyMovingBall:
      return "empty";
    case EventKind::LowerTailOutsideExpandingBall:
      return "outside";
  }
  return "unknown";
}

EventKind parse_event_kind(const std::string& text) {
  if (text == "inside") return EventKind::LowerTailInsideMovingBall;
  if (text == "empty") return EventKind::EmptyMovingBall;
  if (text == "outside") return EventKind::LowerTailOutsideExpandingBall;
  throw ConfigError("unknown event kind '" + text + "' (expected inside, empty or outside)");
}

std::string to_string(EstimatorMethod method) {
  return method == EstimatorMethod::Naive ? "naive" : "importance_lower_bound";
}

namespace {

void check_lower_tail(double theta, double a) {
  if (!(theta >= 0.0) || !(theta < 1.0)) throw DomainError("theta must satisfy 0 <= theta < 1");
  if (!(a >= 0.0) || !(a < 1.0 - theta * theta)) {
    std::ostringstream os;
    os << "a must satisfy 0 <= a < 1 - theta^2 (theta=" << theta << ", a=" << a << ")";
    throw DomainError(os.str());
  }
}

void check_run(const EventSpec& spec, double beta, int dim, double t, std::uint64_t replicas) {
  if (!(beta > 0.0)) throw DomainError("beta must be > 0");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("t must be >= 0");
  if (replicas < 1) throw DomainError("replicas must be >= 1");
  if (dim != spec.dim()) throw UsageError("dim does not match the event specification");
  if (spec.moving() && spec.moving()->beta() != beta) {
    throw UsageError("beta does not match the moving ball's beta");
  }
}

}  // namespace

EventSpec::EventSpec(EventKind kind, std::optional<MovingBallSpec> moving, double theta, double a,
                     int dim)
    : kind_(kind), moving_(std::move(moving)), theta_(theta), a_(a), dim_(dim) {}

EventSpec EventSpec::inside_moving_ball(MovingBallSpec moving, double a) {
  check_lower_tail(moving.theta(), a);
  const double theta = moving.theta();
  const int dim = moving.dim();
  return EventSpec(EventKind::LowerTailInsideMovingBall, std::move(moving), theta, a, dim);
}

EventSpec EventSpec::empty_moving_ball(MovingBallSpec moving) {
  const double theta = moving.theta();
  const int dim = moving.dim();
  return EventSpec(EventKind::EmptyMovingBall, std::move(moving), theta, 0.0, dim);
}

EventSpec EventSpec::outside_expanding_ball(double theta, double a, int dim) {
  check_lower_tail(theta, a);
  if (dim < 1) throw DomainError("dim must be >= 1");
  return EventSpec(EventKind::LowerTailOutsideExpandingBall, std::nullopt, theta, a, dim);
}

std::size_t event_mass(const ParticleSnapshot& snapshot, const EventSpec& spec, double beta,
                       double t) {
  if (std::abs(snapshot.time - t) > 1e-9 * std::max(1.0, std::abs(t))) {
    std::ostringstream os;
    os << "snapshot taken at time " << snapshot.time << " but event evaluated at t=" << t;
    throw UsageError(os.str());
  }
  if (snapshot.dim() != spec.dim()) throw UsageError("snapshot dimension does not match event");
  if (spec.is_moving_kind()) {
    if (spec.moving()->beta() != beta) throw UsageError("beta does not match the moving ball's beta");
    return local_mass(snapshot, moving_ball_at(*spec.moving(), t));
  }
  return mass_outside(snapshot, spec.theta() * std::sqrt(2.0 * beta) * t);
}

bool event_indicator(const ParticleSnapshot& snapshot, const EventSpec& spec, double beta,
                     double t) {
  const std::size_t mass = event_mass(snapshot, spec, beta, t);
  if (spec.kind() == EventKind::EmptyMovingBall) return mass == 0;
  return static_cast<double>(mass) < std::exp(beta * spec.a() * t);
}

EstimateResult naive_mc(const EventSpec& spec, double beta, int dim, double t,
                        std::uint64_t replicas, std::uint64_t seed, const RunOptions& options) {
  check_run(spec, beta, dim, t, replicas);
  std::vector<unsigned char> hits(replicas, 0);
  SimConfig config{beta, dim, t, options.max_particles, seed};
  validate(config);
  for_each_replica(replicas, options.threads, [&](std::uint64_t i) {
    try {
      hits[i] = event_indicator(simulate(config, i), spec, beta, t) ? 1 : 0;
    } catch (const CapacityError& e) {
      throw e.with_replica(i);
    }
  });
  const auto count = static_cast<double>(std::count(hits.begin(), hits.end(), 1));
  const double n = static_cast<double>(replicas);
  const double p = count / n;
  return {t, p, std::sqrt(p * (1.0 - p) / n), replicas, EstimatorMethod::Naive};
}

double default_rho(const EventSpec& spec, double beta) {
  const RateInput<double> in{spec.theta(), spec.a(), beta};
  if (spec.is_moving_kind()) return minimize_rate(in).rho_hat;
  return rho_bar(in);
}

Eigen::VectorXd strategy_drift(const EventSpec& spec, double beta, double rho) {
  if (!spec.is_moving_kind()) return Eigen::VectorXd::Zero(spec.dim());
  const RateInput<double> in{spec.theta(), spec.a(), beta};
  const double upper = rho_bar(in);
  if (!(rho > 0.0) || rho > upper) {
    std::ostringstream os;
    os.precision(17);
    os << "strategy fraction rho must satisfy 0 < rho <= rho_bar=" << upper << ", got " << rho;
    throw DomainError(os.str());
  }
  const double reach = std::sqrt(std::max(0.0, (1.0 - rho) * (1.0 - spec.a() - rho)));
  const double speed = std::sqrt(2.0 * beta) / rho * (reach - spec.theta());
  return -speed * spec.moving()->direction();
}

EstimateResult importance_lower_bound(const EventSpec& spec, double beta, int dim, double t,
                                      std::uint64_t replicas, std::uint64_t seed,
                                      const ImportanceOptions& importance,
                                      const RunOptions& options) {
  check_run(spec, beta, dim, t, replicas);
  const double rho = importance.rho ? *importance.rho : default_rho(spec, beta);
  if (!spec.is_moving_kind() && (!(rho >= 0.0) || rho > 1.0)) {
    throw DomainError("strategy fraction rho must lie in [0, 1]");
  }
  const Eigen::VectorXd drift = strategy_drift(spec, beta, rho);
  const double suppressed = rho * t;
  const double drift_sq = drift.squaredNorm();

  std::vector<double> weights(replicas, 0.0);
  for_each_replica(replicas, options.threads, [&](std::uint64_t i) {
    auto rng = replica_stream(seed, i);
    Eigen::VectorXd start = Eigen::VectorXd::Zero(dim);
    double log_weight = 0.0;
    if (suppressed > 0.0) {
      const double spread = std::sqrt(suppressed);
      for (int k = 0; k < dim; ++k) start(k) = drift(k) * suppressed + spread * rng.normal();
      // No branching on [0, rho t], and the Girsanov density of the drifted path.
      log_weight = -beta * suppressed - drift.dot(start) + 0.5 * drift_sq * suppressed;
    }
    if (importance.force_indicator) {
      weights[i] = std::exp(log_weight);
      return;
    }
    try {
      const auto snap = evolve(start, suppressed, t - suppressed, beta, options.max_particles, rng);
      weights[i] = event_indicator(snap, spec, beta, t) ? std::exp(log_weight) : 0.0;
    } catch (const CapacityError& e) {
      throw e.with_replica(i);
    }
  });

  const auto stats = sample_statistics(weights);
  return {t, std::clamp(stats.mean, 0.0, 1.0), stats.standard_error, replicas,
          EstimatorMethod::ImportanceLowerBound};
}

SlopeFit decay_slope(std::span<const EstimateResult> estimates) {
  std::vector<double> zero_t;
  for (const auto& e : estimates) {
    if (!(e.p_hat > 0.0)) zero_t.push_back(e.t);
  }
  if (!zero_t.empty()) {
    throw InsufficientDataError("decay_slope: zero probability estimates cannot be fitted",
                                zero_t);
  }
  std::vector<double> ts;
  for (const auto& e : estimates) ts.push_back(e.t);
  std::sort(ts.begin(), ts.end());
  const bool distinct = std::adjacent_find(ts.begin(), ts.end()) == ts.end();
  if (estimates.size() < 3 || !distinct) {
    throw InsufficientDataError("decay_slope needs at least 3 estimates at distinct t", ts);
  }

  const auto n = static_cast<Eigen::Index>(estimates.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd y(n);
  Eigen::VectorXd w(n);
  bool known_variance = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& e = estimates[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = e.t;
    y(i) = std::log(e.p_hat);
    // Delta method: sd(log p_hat) ~ stderr / p_hat.
    const double rel = e.std_error / e.p_hat;
    if (!(rel > 0.0)) known_variance = false;
    w(i) = rel > 0.0 ? 1.0 / (rel * rel) : 1.0;
  }
  if (!known_variance) w.setOnes();

  const Eigen::MatrixXd normal = design.transpose() * w.asDiagonal() * design;
  const Eigen::Vector2d coef = normal.ldlt().solve(design.transpose() * w.asDiagonal() * y);
  Eigen::Matrix2d cov = normal.inverse();
  if (!known_variance) {
    // Unweighted fit: scale by the residual variance.
    const double rss = (y - design * coef).squaredNorm();
    cov *= rss / static_cast<double>(n - 2);
  }
  return {coef(1), coef(0), std::sqrt(std::max(0.0, cov(1, 1)))};
}

double theory_rate(const EventSpec& spec, double beta) {
  const RateInput<double> in{spec.theta(), spec.a(), beta};
  if (spec.is_moving_kind()) return beta * minimize_rate(in).I_value;
  return rate_theorem2(in);
}

}  // namespace localmass
