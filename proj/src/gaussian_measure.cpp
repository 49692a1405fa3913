#include "localmass/gaussian_measure.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "localmass/errors.hpp"
#include "localmass/random.hpp"
#include "localmass/statistics.hpp"

namespace localmass {

std::string to_string(MeasureMethod m) {
  switch (m) {
    case MeasureMethod::ErrorFunction:
      return "error_function";
    case MeasureMethod::RadialQuadrature:
      return "radial_quadrature";
    case MeasureMethod::QuasiMonteCarlo:
      return "quasi_monte_carlo";
  }
  return "unknown";
}

namespace {

constexpr int kQmcShifts = 10;
constexpr std::uint64_t kQmcShiftSeed = 0x5eed'0f'5b'1f7ULL;

std::vector<unsigned> first_primes(int count) {
  std::vector<unsigned> primes;
  for (unsigned candidate = 2; static_cast<int>(primes.size()) < count; ++candidate) {
    bool prime = true;
    for (unsigned p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

MeasureResult measure_1d(double t, const Ball& ball) {
  const double s = std::sqrt(2.0 * t);
  const double c = ball.center(0);
  const double r = ball.radius;
  const double value = 0.5 * (std::erf((c + r) / s) - std::erf((c - r) / s));
  return {value, 4.0 * std::numeric_limits<double>::epsilon(), MeasureMethod::ErrorFunction};
}

MeasureResult measure_radial(double t, const Ball& ball) {
  const double d = static_cast<double>(ball.center.size());
  const double log_norm = (d / 2.0 - 1.0) * std::numbers::ln2 + std::lgamma(d / 2.0);
  auto chi_density = [&](double s) {
    if (s <= 0.0) return d == 1.0 ? std::exp(-log_norm) : 0.0;
    return std::exp((d - 1.0) * std::log(s) - 0.5 * s * s - log_norm);
  };
  // The chi density is below 1e-300 past sqrt(d) + 40.
  const double upper = std::min(ball.radius / std::sqrt(t), std::sqrt(d) + 40.0);
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      chi_density, 0.0, upper, 20, 1e-14, &error);
  return {std::min(value, 1.0), std::abs(error), MeasureMethod::RadialQuadrature};
}

MeasureResult measure_qmc(double t, const Ball& ball) {
  const int dim = static_cast<int>(ball.center.size());
  const auto primes = first_primes(dim);
  const double r = ball.radius;
  const double r2 = r * r;
  const double cube_volume = std::pow(2.0 * r, dim);
  const double log_density_norm = -0.5 * dim * std::log(2.0 * std::numbers::pi * t);
  const std::size_t per_shift = kQmcNodes / kQmcShifts;

  RandomStream shifts(kQmcShiftSeed, 0);
  std::vector<double> estimates;
  estimates.reserve(kQmcShifts);
  Eigen::VectorXd shift(dim);
  Eigen::VectorXd x(dim);
  for (int s = 0; s < kQmcShifts; ++s) {
    for (int k = 0; k < dim; ++k) shift(k) = shifts.uniform();
    CompensatedSum sum;
    for (std::size_t i = 1; i <= per_shift; ++i) {
      double in_ball = 0.0;
      for (int k = 0; k < dim; ++k) {
        double u = radical_inverse(i, primes[static_cast<std::size_t>(k)]) + shift(k);
        if (u >= 1.0) u -= 1.0;
        const double offset = (2.0 * u - 1.0) * r;
        in_ball += offset * offset;
        x(k) = ball.center(k) + offset;
      }
      if (in_ball < r2) sum.add(std::exp(log_density_norm - x.squaredNorm() / (2.0 * t)));
    }
    estimates.push_back(cube_volume * sum.value() / static_cast<double>(per_shift));
  }
  const auto stats = sample_statistics(estimates);
  return {stats.mean, 3.0 * stats.standard_error, MeasureMethod::QuasiMonteCarlo};
}

}  // namespace

MeasureResult gaussian_ball_measure(double t, const Ball& ball) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("Gaussian ball measure requires t > 0");
  if (ball.center.size() == 1) return measure_1d(t, ball);
  if (ball.center.isZero(0.0)) return measure_radial(t, ball);
  return measure_qmc(t, ball);
}

MeasureResult expected_local_mass(double beta, double t, const Ball& ball, int dim) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("expected_local_mass requires t > 0");
  if (!(beta > 0.0)) throw DomainError("beta must be > 0");
  if (ball.center.size() != dim) throw UsageError("ball dimension does not match dim");
  auto p = gaussian_ball_measure(t, ball);
  const double growth = std::exp(beta * t);
  p.value *= growth;
  p.error_bound *= growth;
  return p;
}

}  // namespace localmass
