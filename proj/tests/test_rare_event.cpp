#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "localmass/errors.hpp"
#include "localmass/rare_event.hpp"
#include "localmass/rate_function.hpp"
#include "localmass/statistics.hpp"

using namespace localmass;

namespace {

MovingBallSpec fixed_unit_ball(int dim = 1) { return MovingBallSpec(Ball::origin(dim, 1.0), 0.0, 1.0); }

ParticleSnapshot points(double time, std::initializer_list<double> xs) {
  ParticleSnapshot s;
  s.time = time;
  s.positions = Eigen::MatrixXd(1, static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) s.positions(0, i++) = x;
  return s;
}

double combined(const EstimateResult& x, const EstimateResult& y) {
  return std::hypot(x.std_error, y.std_error);
}

}  // namespace

TEST_CASE("indicator thresholds") {
  const auto empty = EventSpec::empty_moving_ball(fixed_unit_ball());
  CHECK(event_indicator(points(1.0, {5.0}), empty, 1.0, 1.0));
  CHECK_FALSE(event_indicator(points(1.0, {0.5}), empty, 1.0, 1.0));

  const auto half = EventSpec::inside_moving_ball(fixed_unit_ball(), 0.5);
  CHECK(event_indicator(points(2.0, {0.1, -0.2}), half, 1.0, 2.0));  // 2 < e
  CHECK_FALSE(event_indicator(points(2.0, {0.1, -0.2, 0.3}), half, 1.0, 2.0));
  const double t_eq = 2 * std::log(2.0);  // e^{0.5 t} = 2 exactly
  CHECK_FALSE(event_indicator(points(t_eq, {0.1, -0.2}), half, 1.0, t_eq));

  const auto outside = EventSpec::outside_expanding_ball(0.5, 0.0, 1);
  const double x_t = 0.5 * std::sqrt(2.0) * 2.0;
  CHECK(event_indicator(points(2.0, {x_t - 1e-9}), outside, 1.0, 2.0));
  CHECK_FALSE(event_indicator(points(2.0, {-x_t}), outside, 1.0, 2.0));

  CHECK_THROWS_AS(event_indicator(points(1.0, {0.0}), empty, 1.0, 2.0), UsageError);
  CHECK_THROWS_AS(event_mass(points(1.0, {0.0}), EventSpec::empty_moving_ball(fixed_unit_ball(2)), 1.0, 1.0),
                  UsageError);
}

TEST_CASE("event spec validation") {
  CHECK_THROWS_AS(EventSpec::inside_moving_ball(fixed_unit_ball(), 1.0), DomainError);
  CHECK_THROWS_AS(theory_rate(EventSpec::outside_expanding_ball(0.0, 0.0, 1), 1.0), DomainError);
  CHECK(parse_event_kind("outside") == EventKind::LowerTailOutsideExpandingBall);
  CHECK_THROWS_AS(parse_event_kind("sideways"), ConfigError);
}

TEST_CASE("theory rates") {
  CHECK(theory_rate(EventSpec::empty_moving_ball(fixed_unit_ball()), 1.0) ==
        doctest::Approx(0.8284271247461901).epsilon(1e-12));
  CHECK(theory_rate(EventSpec::inside_moving_ball(fixed_unit_ball(), 0.5), 1.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(theory_rate(EventSpec::outside_expanding_ball(0.5, 0.0, 1), 1.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("naive estimator edge cases and determinism") {
  const auto easy = EventSpec::inside_moving_ball(fixed_unit_ball(), 0.9);
  const auto all = naive_mc(easy, 1.0, 1, 0.01, 200, 3);
  CHECK(all.p_hat == 1.0);
  CHECK(all.std_error == 0.0);

  const auto empty = EventSpec::empty_moving_ball(fixed_unit_ball());
  const auto one = naive_mc(empty, 1.0, 1, 1.0, 1, 3);
  CHECK((one.p_hat == 0.0 || one.p_hat == 1.0));
  CHECK(one.std_error == 0.0);

  const auto x = naive_mc(empty, 1.0, 1, 3.0, 2000, 77, {1, kDefaultMaxParticles});
  const auto y = naive_mc(empty, 1.0, 1, 3.0, 2000, 77, {4, kDefaultMaxParticles});
  CHECK(x.p_hat == y.p_hat);
  CHECK(x.std_error == y.std_error);
  CHECK(x.std_error == doctest::Approx(std::sqrt(x.p_hat * (1 - x.p_hat) / 2000)));

  try {
    naive_mc(empty, 1.0, 1, 12.0, 5, 1, {1, 50});
    FAIL("expected a capacity error");
  } catch (const CapacityError& e) {
    REQUIRE(e.replica().has_value());
    CHECK(*e.replica() == 0);
  }
}

TEST_CASE("importance sampling degenerates to naive without tilt") {
  const auto empty = EventSpec::empty_moving_ball(fixed_unit_ball());
  const auto outside = EventSpec::outside_expanding_ball(0.5, 0.0, 1);
  ImportanceOptions none;
  none.rho = 0.0;
  const auto is = importance_lower_bound(outside, 1.0, 1, 3.0, 3000, 8, none);
  const auto nv = naive_mc(outside, 1.0, 1, 3.0, 3000, 8);
  CHECK(is.p_hat == nv.p_hat);
  CHECK(is.std_error == doctest::Approx(nv.std_error).epsilon(1e-3));
  // For moving kinds the displacement mu rho t does not shrink with rho, so a
  // tiny rho forces an implausibly fast excursion and the sub-event vanishes.
  ImportanceOptions tiny;
  tiny.rho = 1e-4;
  CHECK(importance_lower_bound(empty, 1.0, 1, 3.0, 2000, 8, tiny).p_hat < 1e-100);
}

TEST_CASE("tilt integrates to the no-branching probability") {
  const auto empty = EventSpec::empty_moving_ball(fixed_unit_ball());
  ImportanceOptions forced;
  forced.force_indicator = true;
  for (double t : {2.0, 6.0}) {
    const auto r = importance_lower_bound(empty, 1.0, 1, t, 50000, 4, forced);
    CHECK(std::abs(r.p_hat - std::exp(-default_rho(empty, 1.0) * t)) < 3 * r.std_error);
  }
  const auto moving = EventSpec::inside_moving_ball(
      MovingBallSpec(Ball(Eigen::VectorXd::Unit(2, 0), 1.0), 0.3, 1.0), 0.2);
  const double rho = default_rho(moving, 1.0);
  CHECK(rho == minimize_rate(RateInput<double>{0.3, 0.2, 1.0}).rho_hat);
  const auto r = importance_lower_bound(moving, 1.0, 2, 5.0, 50000, 4, forced);
  CHECK(std::abs(r.p_hat - std::exp(-rho * 5.0)) < 3 * r.std_error);
}

TEST_CASE("importance estimator is unbiased for its sub-event") {
  // Untilted reference: with no branching on [0, rho t] (probability
  // e^{-beta rho t}) the lone particle sits at N(0, rho t); restart BBM there.
  const auto empty = EventSpec::empty_moving_ball(fixed_unit_ball());
  const double t = 3.0;
  const double rho = default_rho(empty, 1.0);
  const std::size_t n = 40000;
  std::vector<double> hits(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = replica_stream(1234, i);
    Eigen::MatrixXd start(1, 1);
    start(0, 0) = std::sqrt(rho * t) * rng.normal();
    const auto snap = evolve(start, rho * t, t - rho * t, 1.0, kDefaultMaxParticles, rng);
    hits[i] = event_indicator(snap, empty, 1.0, t) ? 1.0 : 0.0;
  }
  const auto st = sample_statistics(hits);
  const double ref = std::exp(-rho * t) * st.mean;
  const double ref_se = std::exp(-rho * t) * st.standard_error;
  const auto is = importance_lower_bound(empty, 1.0, 1, t, n, 55);
  CHECK(std::abs(is.p_hat - ref) < 3 * std::hypot(is.std_error, ref_se));
  const auto nv = naive_mc(empty, 1.0, 1, t, n, 56);
  CHECK(is.p_hat <= nv.p_hat + 3 * combined(is, nv));
}

TEST_CASE("strategy drift") {
  const auto empty = EventSpec::empty_moving_ball(fixed_unit_ball());
  const double rho = 1 / std::sqrt(2.0);
  const auto mu = strategy_drift(empty, 1.0, rho);
  CHECK(mu(0) == doctest::Approx(-(std::sqrt(2.0) / rho) * (1 - rho)));
  CHECK_THROWS_AS(strategy_drift(empty, 1.0, 1.5), DomainError);
  CHECK_THROWS_AS(strategy_drift(empty, 1.0, 0.0), DomainError);
  CHECK(strategy_drift(EventSpec::outside_expanding_ball(0.5, 0.0, 2), 1.0, 0.5).norm() == 0.0);
}

TEST_CASE("slope fit") {
  std::vector<EstimateResult> e;
  for (double t : {1.0, 2.0, 3.0}) e.push_back({t, std::exp(-2 * t), 0.01 * std::exp(-2 * t), 100, EstimatorMethod::Naive});
  auto fit = decay_slope(e);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.slope_stderr == doctest::Approx(0.01 / std::sqrt(2.0)).epsilon(1e-9));

  auto scaled = e;
  for (auto& x : scaled) x.p_hat *= 0.3;
  CHECK(decay_slope(scaled).slope == doctest::Approx(-2.0).epsilon(1e-12));

  std::vector<EstimateResult> exact;
  for (double t : {1.0, 2.0, 3.0}) exact.push_back({t, std::exp(-2 * t), 0.0, 1, EstimatorMethod::Naive});
  fit = decay_slope(exact);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.slope_stderr == doctest::Approx(0.0).epsilon(1e-9));

  std::mt19937_64 gen(2);
  std::normal_distribution<double> noise(0.0, 1.0);
  int inside = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<EstimateResult> d;
    for (double t = 1; t <= 8; ++t) {
      const double p = 0.7 * std::exp(-0.6 * t);
      const double se = 0.05 * p;
      d.push_back({t, p + se * noise(gen), se, 1000, EstimatorMethod::Naive});
    }
    const auto f = decay_slope(d);
    inside += std::abs(f.slope + 0.6) < 2 * f.slope_stderr;
  }
  CHECK(inside >= 88);

  e[1].p_hat = 0.0;
  try {
    decay_slope(e);
    FAIL("expected insufficient data");
  } catch (const InsufficientDataError& err) {
    CHECK(err.offending_t() == std::vector<double>{2.0});
  }
  e.resize(2);
  e[1].p_hat = 0.1;
  CHECK_THROWS_AS(decay_slope(e), InsufficientDataError);
}
