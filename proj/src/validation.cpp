#include "localmass/validation.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "localmass/bbm_engine.hpp"
#include "localmass/campaign.hpp"
#include "localmass/errors.hpp"
#include "localmass/gaussian_measure.hpp"
#include "localmass/rare_event.hpp"
#include "localmass/rate_function.hpp"
#include "localmass/rate_table.hpp"
#include "localmass/statistics.hpp"

namespace localmass {

namespace {

class SuiteBuilder {
 public:
  explicit SuiteBuilder(std::string name) { suite_.name = std::move(name); }

  // Runs `body`, which returns an empty string on success or a failure
  // description. Exceptions count as failures.
  void check(const std::string& name, const std::function<std::string()>& body) {
    ValidationCheck c{name, false, ""};
    try {
      c.detail = body();
      c.passed = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = std::string("threw: ") + e.what();
    }
    suite_.checks.push_back(std::move(c));
  }

  ValidationSuite take() { return std::move(suite_); }

 private:
  ValidationSuite suite_;
};

std::string mismatch(const std::string& what, double got, double want, double tol) {
  if (std::abs(got - want) <= tol) return "";
  std::ostringstream os;
  os.precision(17);
  os << what << ": got " << got << ", want " << want << " (tol " << tol << ")";
  return os.str();
}

using Input = RateInput<double>;

ValidationSuite rate_suite() {
  SuiteBuilder s("rate_function");
  s.check("corollary1_closed_form", [] {
    for (int i = 0; i < 50; ++i) {
      const double a = 0.98 * i / 49.0;
      const auto sol = minimize_rate(Input{0.0, a, 1.0});
      if (auto m = mismatch("I(0," + format_number(a) + ")", sol.I_value, rate_corollary1(a, 1.0), 1e-9); !m.empty()) return m;
      if (auto m = mismatch("rho_hat(0," + format_number(a) + ")", sol.rho_hat, rho_hat_corollary1(a), 1e-9); !m.empty()) return m;
    }
    return std::string();
  });
  s.check("corollary2_closed_form", [] {
    for (int i = 0; i < 50; ++i) {
      const double theta = 0.98 * i / 49.0;
      const auto sol = minimize_rate(Input{theta, 0.0, 1.0});
      if (auto m = mismatch("I(" + format_number(theta) + ",0)", sol.I_value, rate_corollary2(theta, 1.0), 1e-9); !m.empty()) return m;
      if (auto m = mismatch("rho_hat", sol.rho_hat, rho_hat_corollary2(theta), 1e-9); !m.empty()) return m;
    }
    return std::string();
  });
  s.check("minimizer_position_and_bound", [] {
    for (double theta = 0.05; theta < 0.99; theta += 0.1) {
      for (double a = 0.05; a < 1.0 - theta * theta; a += 0.1) {
        const Input in{theta, a, 1.0};
        const auto sol = minimize_rate(in);
        if (!(sol.rho_hat > 0.0 && sol.rho_hat < rho_bar(in))) return "rho_hat outside (0, rho_bar) at " + detail::describe(in);
        if (!(sol.rho_hat < std::sqrt((1.0 - theta * theta - a) / 2.0))) return "minimizer bound violated at " + detail::describe(in);
        if (std::abs(poly_P(in, sol.rho_hat)) > 1e-8) return "|P(rho_hat)| > 1e-8 at " + detail::describe(in);
        if (auto m = mismatch("f'(rho_bar)", f_prime(in, rho_bar(in)), 1.0, 1e-9); !m.empty()) return m;
      }
    }
    return std::string();
  });
  s.check("monotone_in_a_and_theta", [] {
    for (double theta = 0.0; theta < 0.96; theta += 0.15) {
      double prev_rho = 2.0, prev_I = 2.0;
      for (double a = 0.0; a < 1.0 - theta * theta; a += 0.05) {
        const auto sol = minimize_rate(Input{theta, a, 1.0});
        if (!(sol.rho_hat < prev_rho && sol.I_value < prev_I)) return "not decreasing in a at theta=" + format_number(theta);
        prev_rho = sol.rho_hat;
        prev_I = sol.I_value;
      }
    }
    return std::string();
  });
  s.check("convexity_finite_difference", [] {
    const Input in{0.3, 0.4, 1.0};
    const double h = 1e-4;
    for (int i = 1; i < 100; ++i) {
      const double rho = 0.01 + (0.6 - 0.02) * i / 100.0 - 0.0;
      const double fpp = (f_value(in, rho + h) - 2.0 * f_value(in, rho) + f_value(in, rho - h)) / (h * h);
      if (!(fpp > 0.0)) return "f'' <= 0 at rho=" + format_number(rho);
    }
    return std::string();
  });
  s.check("theorem2_identity", [] {
    const Input in{0.3, 0.4, 2.0};
    return mismatch("rate_theorem2", rate_theorem2(in), 2.0 * rho_bar(in), 0.0);
  });
  s.check("domain_rejection", [] {
    try {
      minimize_rate(Input{0.5, 0.8, 1.0});
    } catch (const DomainError&) {
      return std::string();
    }
    return std::string("a >= 1 - theta^2 accepted");
  });
  return s.take();
}

ValidationSuite engine_suite() {
  SuiteBuilder s("bbm_engine");
  s.check("initial_condition", [] {
    const auto snap = simulate(SimConfig{1.0, 2, 0.0, kDefaultMaxParticles, 7});
    if (snap.size() != 1 || snap.positions.norm() != 0.0) return std::string("t_end=0 is not one particle at the origin");
    return std::string();
  });
  s.check("determinism", [] {
    const SimConfig cfg{1.0, 2, 3.0, kDefaultMaxParticles, 11};
    return simulate(cfg, 5).positions == simulate(cfg, 5).positions ? std::string() : std::string("same seed gave different snapshots");
  });
  s.check("partition_identity", [] {
    const SimConfig cfg{1.0, 1, 4.0, kDefaultMaxParticles, 3};
    for (std::uint64_t r = 0; r < 20; ++r) {
      const auto snap = simulate(cfg, r);
      for (double radius : {0.5, 1.0, 3.0}) {
        if (local_mass(snap, Ball::origin(1, radius)) + mass_outside(snap, radius) != snap.size()) return std::string("partition broken");
      }
    }
    return std::string();
  });
  s.check("mean_population", [] {
    const SimConfig cfg{1.0, 1, 2.0, kDefaultMaxParticles, 21};
    std::vector<double> n(20000);
    for (std::size_t r = 0; r < n.size(); ++r) n[r] = static_cast<double>(simulate(cfg, r).size());
    const auto st = sample_statistics(n);
    return mismatch("mean N_2", st.mean, std::exp(2.0), 3.0 * st.standard_error);
  });
  s.check("capacity_error", [] {
    try {
      simulate(SimConfig{1.0, 1, 20.0, 100, 1});
    } catch (const CapacityError& e) {
      return e.time() > 0.0 && e.time() < 20.0 ? std::string() : std::string("bad overflow time");
    }
    return std::string("no capacity error");
  });
  return s.take();
}

ValidationSuite measure_suite() {
  SuiteBuilder s("gaussian_measure");
  s.check("unit_ball_d1", [] {
    const auto m = expected_local_mass(1.0, 1.0, Ball::origin(1, 1.0), 1);
    return mismatch("E Z_1(B(0,1))", m.value, std::exp(1.0) * std::erf(1.0 / std::sqrt(2.0)), 1e-12);
  });
  s.check("large_ball_limit", [] {
    const auto m = expected_local_mass(1.0, 2.0, Ball::origin(3, 60.0), 3);
    return mismatch("E Z_2(B(0,60))", m.value, std::exp(2.0), 1e-9);
  });
  s.check("radial_chi_square", [] {
    // P(|X|^2 < 1) for X ~ N(0, I_2) is 1 - e^{-1/2}.
    const auto m = gaussian_ball_measure(1.0, Ball::origin(2, 1.0));
    return mismatch("p_1(0,B(0,1)) d=2", m.value, 1.0 - std::exp(-0.5), 1e-10);
  });
  return s.take();
}

ValidationSuite rare_suite(unsigned threads) {
  SuiteBuilder s("rare_event");
  s.check("theory_rates", [] {
    const MovingBallSpec fixed(Ball::origin(1, 1.0), 0.0, 1.0);
    if (auto m = mismatch("empty ball", theory_rate(EventSpec::empty_moving_ball(fixed), 1.0), 2.0 * (std::sqrt(2.0) - 1.0), 1e-9); !m.empty()) return m;
    if (auto m = mismatch("a=1/2", theory_rate(EventSpec::inside_moving_ball(fixed, 0.5), 1.0), 0.5, 1e-9); !m.empty()) return m;
    return mismatch("outside", theory_rate(EventSpec::outside_expanding_ball(0.5, 0.0, 1), 1.0), 0.5, 1e-12);
  });
  s.check("strict_threshold", [] {
    ParticleSnapshot snap;
    snap.time = 2.0;
    snap.positions = Eigen::MatrixXd::Zero(1, 2);
    const MovingBallSpec fixed(Ball::origin(1, 1.0), 0.0, 1.0);
    if (!event_indicator(snap, EventSpec::inside_moving_ball(fixed, 0.5), 1.0, 2.0)) return std::string("2 < e should hold");
    snap.time = std::log(2.0) / 0.5;
    if (event_indicator(snap, EventSpec::inside_moving_ball(fixed, 0.5), 1.0, snap.time)) return std::string("2 < 2 should fail");
    return std::string();
  });
  s.check("seed_determinism", [threads] {
    const auto spec = EventSpec::empty_moving_ball(MovingBallSpec(Ball::origin(1, 1.0), 0.0, 1.0));
    const auto x = naive_mc(spec, 1.0, 1, 2.0, 500, 9, {threads, kDefaultMaxParticles});
    const auto y = naive_mc(spec, 1.0, 1, 2.0, 500, 9, {1, kDefaultMaxParticles});
    return x.p_hat == y.p_hat && x.std_error == y.std_error ? std::string() : std::string("results depend on threads");
  });
  s.check("tilt_unbiased", [threads] {
    const auto spec = EventSpec::empty_moving_ball(MovingBallSpec(Ball::origin(1, 1.0), 0.0, 1.0));
    ImportanceOptions opt;
    opt.force_indicator = true;
    const auto r = importance_lower_bound(spec, 1.0, 1, 4.0, 20000, 5, opt, {threads, kDefaultMaxParticles});
    const double rho = default_rho(spec, 1.0);
    return mismatch("mean weight", r.p_hat, std::exp(-rho * 4.0), 3.0 * r.std_error);
  });
  s.check("exact_slope", [] {
    std::vector<EstimateResult> e;
    for (double t : {1.0, 2.0, 3.0}) e.push_back({t, std::exp(-2.0 * t), 1e-3 * std::exp(-2.0 * t), 100, EstimatorMethod::Naive});
    return mismatch("slope", decay_slope(e).slope, -2.0, 1e-12);
  });
  return s.take();
}

ValidationSuite cli_suite() {
  SuiteBuilder s("cli_report");
  s.check("domain_violation_names_constraint", [] {
    try {
      parse_config({"rate", "--a", "1.5"});
    } catch (const DomainError& e) {
      return std::string(e.what()).find("a < 1 - theta^2") != std::string::npos ? std::string() : std::string("message lacks constraint");
    }
    return std::string("accepted a=1.5");
  });
  s.check("unknown_flag", [] {
    try {
      parse_config({"rate", "--gamma", "1"});
    } catch (const ConfigError&) {
      return std::string();
    }
    return std::string("unknown flag accepted");
  });
  s.check("rate_output", [] {
    std::ostringstream out, err;
    const int code = run_cli({"rate", "--theta", "0", "--a", "0", "--beta", "1"}, out, err);
    if (code != kExitOk) return "exit " + std::to_string(code);
    return out.str().find("I = 0.828427124746") != std::string::npos ? std::string() : "unexpected output: " + out.str();
  });
  return s.take();
}

}  // namespace

std::vector<ValidationSuite> run_validation_suites(unsigned threads) {
  return {rate_suite(), engine_suite(), measure_suite(), rare_suite(threads), cli_suite()};
}

}  // namespace localmass
