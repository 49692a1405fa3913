#include <doctest.h>

#include <cmath>
#include <random>

#include "localmass/errors.hpp"
#include "localmass/rate_function.hpp"
#include "localmass/rate_table.hpp"

using namespace localmass;
using Input = RateInput<double>;

namespace {

// Independent objective written from the definition, and a golden-section
// search over it. Used as an oracle for the bisection solver.
double objective(double theta, double a, double rho) {
  const double disp = std::sqrt(std::max(0.0, (1 - rho) * (1 - rho) - a * (1 - rho))) - theta;
  return rho + disp * disp / rho;
}

double golden_minimum(double theta, double a, double hi) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double lo = 1e-12;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  for (int i = 0; i < 200; ++i) {
    if (objective(theta, a, x1) < objective(theta, a, x2)) {
      hi = x2;
      x2 = x1;
      x1 = hi - g * (hi - lo);
    } else {
      lo = x1;
      x1 = x2;
      x2 = lo + g * (hi - lo);
    }
  }
  return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("frozen high-precision values") {
  const Input in{0.3, 0.4, 1.0};
  CHECK(rho_bar(in) == doctest::Approx(0.43944487245360107).epsilon(1e-15));
  CHECK(f_value(in, 0.3) == doctest::Approx(0.38348486100883200).epsilon(1e-14));
  CHECK(f_prime(in, 0.2) == doctest::Approx(-3.5827381104219658).epsilon(1e-13));
  const auto sol = minimize_rate(in);
  CHECK(sol.rho_hat == doctest::Approx(0.32873759288649463).epsilon(1e-12));
  CHECK(sol.I_value == doctest::Approx(0.37758339971568266).epsilon(1e-14));
  CHECK_FALSE(sol.at_boundary);
  CHECK(poly_P(in, (std::sqrt(0.6) - 0.3) / std::sqrt(2.0)) ==
        doctest::Approx(-0.0016217423888767918).epsilon(1e-12));
  const Input other{0.2, 0.1, 1.0};
  CHECK(poly_P(other, 0.9 * minimize_rate(other).rho_hat) ==
        doctest::Approx(0.020526040539388585).epsilon(1e-12));
}

TEST_CASE("documented examples") {
  CHECK(decay_rate(Input{0.0, 0.0, 1.0}) == doctest::Approx(2 * (std::sqrt(2.0) - 1)).epsilon(1e-12));
  CHECK(decay_rate(Input{0.0, 0.5, 1.0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rate_corollary2(0.5, 2.0) == doctest::Approx(2 * (std::sqrt(2.0) - 1)).epsilon(1e-15));
  CHECK(rate_theorem2(Input{0.5, 0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rate_theorem2(Input{0.3, 0.4, 1.0}) == doctest::Approx(0.8 - std::sqrt(0.13)).epsilon(1e-15));
  const double eps = 1e-6;
  CHECK(rate_corollary2(1 - eps, 1.0) == doctest::Approx(2 * (std::sqrt(2.0) - 1) * eps).epsilon(1e-8));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(minimize_rate(Input{0.5, 0.75, 1.0}), DomainError);
  CHECK_THROWS_AS(minimize_rate(Input{1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(minimize_rate(Input{0.1, -0.1, 1.0}), DomainError);
  CHECK_THROWS_AS(minimize_rate(Input{0.1, 0.1, 0.0}), DomainError);
  CHECK_THROWS_AS(rate_theorem2(Input{0.0, 0.1, 1.0}), DomainError);
  CHECK_THROWS_AS(f_value(Input{0.1, 0.1, 1.0}, 0.0), DomainError);
  try {
    minimize_rate(Input{0.0, 1.5, 1.0});
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("a < 1 - theta^2") != std::string::npos);
  }
}

TEST_CASE("closed forms over 50-point grids") {
  for (int i = 0; i < 50; ++i) {
    const double a = i / 50.0;
    const auto sol = minimize_rate(Input{0.0, a, 1.0});
    CHECK(sol.I_value == doctest::Approx(rate_corollary1(a, 1.0)).epsilon(1e-9));
    CHECK(std::abs(sol.rho_hat - rho_hat_corollary1(a)) < 1e-9);
    CHECK(sol.at_boundary == (a >= 0.5));
  }
  for (int i = 0; i < 50; ++i) {
    const double theta = i / 50.0;
    const auto sol = minimize_rate(Input{theta, 0.0, 3.0});
    CHECK(3.0 * sol.I_value == doctest::Approx(rate_corollary2(theta, 3.0)).epsilon(1e-9));
    CHECK(std::abs(sol.rho_hat - rho_hat_corollary2(theta)) < 1e-9);
  }
}

TEST_CASE("bisection agrees with golden-section oracle") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double theta = 0.95 * u(gen);
    const double a = (1 - theta * theta) * 0.98 * u(gen);
    const Input in{theta, a, 1.0};
    const auto sol = minimize_rate(in);
    const double oracle = golden_minimum(theta, a, rho_bar(in));
    CHECK(std::abs(sol.rho_hat - oracle) < 1e-7);
    CHECK(sol.I_value <= objective(theta, a, oracle) + 1e-14);
  }
}

TEST_CASE("minimizer position, bound and stationarity") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double theta = 0.01 + 0.98 * u(gen);
    const double a = (1 - theta * theta) * (0.001 + 0.998 * u(gen));
    const Input in{theta, a, 1.0};
    const auto sol = minimize_rate(in);
    CHECK(sol.rho_hat > 0.0);
    CHECK(sol.rho_hat < rho_bar(in));
    CHECK(sol.rho_hat < std::sqrt((1 - theta * theta - a) / 2));
    CHECK(std::abs(poly_P(in, sol.rho_hat)) <= 1e-8);
    CHECK(f_prime(in, rho_bar(in)) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("sign of f' opposes sign of P below the quadratic turning point") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int compared = 0;
  for (int i = 0; i < 20000; ++i) {
    const double theta = 0.01 + 0.98 * u(gen);
    const double a = (1 - theta * theta) * (0.001 + 0.998 * u(gen));
    const Input in{theta, a, 1.0};
    const double cap = std::min(1 - a, std::sqrt((1 - a + theta * theta) / 2));
    const double rho = cap * (0.001 + 0.998 * u(gen));
    const double fp = f_prime(in, rho);
    const double p = poly_P(in, rho);
    if (std::abs(p) < 1e-12 || fp == 0.0) continue;
    ++compared;
    CHECK((fp > 0) == (p < 0));
  }
  CHECK(compared > 19000);
}

TEST_CASE("convexity by central differences") {
  for (const auto& [theta, a] : {std::pair{0.3, 0.4}, {0.0, 0.2}, {0.7, 0.1}, {0.1, 0.9}}) {
    const Input in{theta, a, 1.0};
    const double h = 1e-5;
    for (int i = 1; i <= 100; ++i) {
      const double rho = (1 - a) * i / 101.0;
      if (rho - h <= 0 || rho + h > 1 - a) continue;
      const double fpp = (f_value(in, rho + h) - 2 * f_value(in, rho) + f_value(in, rho - h)) / (h * h);
      CHECK(fpp > 0.0);
    }
  }
}

TEST_CASE("strict monotonicity on 0.05 grids") {
  for (double theta = 0.0; theta < 0.999; theta += 0.05) {
    double prev_rho = 2, prev_I = 2;
    for (double a = 0.0; a < 1 - theta * theta; a += 0.05) {
      const auto sol = minimize_rate(Input{theta, a, 1.0});
      CHECK(sol.rho_hat < prev_rho);
      CHECK(sol.I_value < prev_I);
      prev_rho = sol.rho_hat;
      prev_I = sol.I_value;
    }
  }
  for (double a = 0.0; a < 0.999; a += 0.05) {
    double prev_rho = 2, prev_I = 2;
    for (double theta = 0.0; theta < std::sqrt(1 - a); theta += 0.05) {
      const auto sol = minimize_rate(Input{theta, a, 1.0});
      CHECK(sol.rho_hat < prev_rho);
      CHECK(sol.I_value < prev_I);
      prev_rho = sol.rho_hat;
      prev_I = sol.I_value;
    }
  }
}

TEST_CASE("boundary limits at offset 1e-4") {
  const double d = 1e-4;
  for (double theta : {0.1, 0.4, 0.8}) {
    const auto sol = minimize_rate(Input{theta, d, 1.0});
    CHECK(std::abs(sol.rho_hat - (1 - theta) / std::sqrt(2.0)) < 1e-2);
    CHECK(std::abs(sol.I_value - 2 * (std::sqrt(2.0) - 1) * (1 - theta)) < 1e-2);
    CHECK(minimize_rate(Input{theta, 1 - theta * theta - d, 1.0}).I_value < 1e-2);
  }
  for (double a : {0.1, 0.3, 0.45}) {
    const auto sol = minimize_rate(Input{d, a, 1.0});
    CHECK(std::abs(sol.rho_hat - std::sqrt((1 - a) / 2)) < 1e-2);
    CHECK(std::abs(sol.I_value - (2 * std::sqrt(2 * (1 - a)) - (2 - a))) < 1e-2);
  }
}

TEST_CASE("continuity in a") {
  for (double theta : {0.0, 0.2, 0.6}) {
    for (double a = 0.05; a < 1 - theta * theta - 0.01; a += 0.1) {
      const double r0 = minimize_rate(Input{theta, a, 1.0}).rho_hat;
      const double r1 = minimize_rate(Input{theta, a + 1e-6, 1.0}).rho_hat;
      CHECK(std::abs(r1 - r0) < 1e-4);
    }
  }
}

TEST_CASE("phase transition at a = 1/2") {
  const auto mid = minimize_rate(Input{0.0, 0.5, 1.0});
  CHECK(mid.rho_hat == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(mid.I_value == doctest::Approx(0.5).epsilon(1e-9));
  const auto left = minimize_rate(Input{0.0, 0.5 - 1e-9, 1.0});
  const auto right = minimize_rate(Input{0.0, 0.5 + 1e-9, 1.0});
  CHECK(std::abs(left.rho_hat - right.rho_hat) < 1e-6);
}

TEST_CASE("outside-ball rate equals beta rho_bar") {
  for (double theta : {0.1, 0.5, 0.9}) {
    for (double a : {0.0, 0.1}) {
      const Input in{theta, a, 1.7};
      CHECK(rate_theorem2(in) == 1.7 * rho_bar(in));
    }
  }
}

TEST_CASE("long double instantiation matches double") {
  const RateInput<long double> in{0.3L, 0.4L, 1.0L};
  const auto sol = minimize_rate(in);
  CHECK(static_cast<double>(sol.rho_hat) == doctest::Approx(0.32873759288649463).epsilon(1e-14));
  CHECK(static_cast<double>(sol.I_value) == doctest::Approx(0.37758339971568266).epsilon(1e-15));
}

TEST_CASE("rate table") {
  const std::vector<double> zero{0.0};
  auto rows = rate_table(zero, zero, 1.0);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].I == doctest::Approx(0.8284271247).epsilon(1e-9));

  const std::vector<double> theta{0.5}, a{0.8};
  rows = rate_table(theta, a, 1.0);
  CHECK_FALSE(rows[0].valid);
  CHECK(rate_table_csv(rows) == "theta,a,rho_hat,I,rate\n0.5,0.8,domain_error,domain_error,domain_error\n");

  const std::vector<double> g{0.1, 0.2, 0.3};
  rows = rate_table(g, g, 2.0);
  REQUIRE(rows.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(rows[i].theta == g[i / 3]);
    CHECK(rows[i].a == g[i % 3]);
    const auto sol = minimize_rate(Input{rows[i].theta, rows[i].a, 2.0});
    CHECK(rows[i].rho_hat == sol.rho_hat);
    CHECK(rows[i].rate == 2.0 * sol.I_value);
  }
  const auto json = rate_table_json(rows);
  CHECK(json.size() == 9);
  CHECK(json[0]["provenance"] == "numeric_minimizer");
  CHECK(rate_table(std::vector<double>{}, g, 1.0).empty());
}
