#pragma once

#include <string>

#include "localmass/bbm_engine.hpp"

namespace localmass {

enum class MeasureMethod { ErrorFunction, RadialQuadrature, QuasiMonteCarlo };

std::string to_string(MeasureMethod m);

/// Gaussian measure of a ball (or its expectation-weighted count) together with
/// the error estimate of the route used to compute it.
struct MeasureResult {
  double value{0.0};
  double error_bound{0.0};
  MeasureMethod method{MeasureMethod::ErrorFunction};
};

inline constexpr std::size_t kQmcNodes = 1'000'000;

/// p_t(0, B): probability that a standard Brownian motion started at the
/// origin lies in the open ball B at time t.
///   dim == 1            erf, exact to rounding
///   origin-centred      adaptive Gauss-Kronrod on the radial (chi) density
///   otherwise           randomly shifted Halton rule with kQmcNodes nodes;
///                       error_bound is three standard errors over the shifts
MeasureResult gaussian_ball_measure(double t, const Ball& ball);

/// E[Z_t(B)] = e^{beta t} p_t(0, B).
MeasureResult expected_local_mass(double beta, double t, const Ball& ball, int dim);

}  // namespace localmass
