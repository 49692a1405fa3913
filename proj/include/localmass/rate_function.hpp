#pragma once

// Lower-tail rate functions for the local mass of dyadic BBM.
//
// For a ball moving radially at speed theta*sqrt(2*beta) and a mass threshold
// exp(beta*a*t), the decay rate of P(Z_t(B_t) < e^{beta a t}) is beta*I(theta,a)
// with
//
//   I(theta, a) = inf_{0 < rho <= rho_bar} f(rho),
//   f(rho)      = rho + (sqrt((1-rho)^2 - a(1-rho)) - theta)^2 / rho,
//   rho_bar     = 1 - a/2 - sqrt((a/2)^2 + theta^2).
//
// Everything here is a pure function of its arguments and is templated on the
// scalar type (double by default; long double works for reference values).

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "localmass/errors.hpp"

namespace localmass {

template <typename Scalar = double>
struct RateInput {
  Scalar theta{0};
  Scalar a{0};
  Scalar beta{1};
};

template <typename Scalar = double>
struct RateSolution {
  Scalar rho_hat{0};
  Scalar I_value{0};
  bool at_boundary{false};
};

namespace detail {

template <typename Scalar>
std::string describe(const RateInput<Scalar>& in) {
  std::ostringstream os;
  os.precision(17);
  os << "(theta=" << in.theta << ", a=" << in.a << ", beta=" << in.beta << ")";
  return os.str();
}

// (1-rho)^2 - a(1-rho) in factored form; clamps the rounding-level negative
// values that appear at rho = 1 - a.
template <typename Scalar>
Scalar displacement_radicand(Scalar a, Scalar rho) {
  const Scalar v = (Scalar(1) - rho) * (Scalar(1) - a - rho);
  return v < Scalar(0) ? Scalar(0) : v;
}

}  // namespace detail

/// Throws DomainError unless 0 <= theta < 1, 0 <= a < 1 - theta^2, beta > 0.
template <typename Scalar>
void validate(const RateInput<Scalar>& in) {
  using std::isfinite;
  if (!isfinite(in.theta) || !isfinite(in.a) || !isfinite(in.beta)) {
    throw DomainError("non-finite rate input " + detail::describe(in));
  }
  if (in.theta < Scalar(0) || in.theta >= Scalar(1)) {
    throw DomainError("theta must satisfy 0 <= theta < 1, got " + detail::describe(in));
  }
  if (in.a < Scalar(0) || in.a >= Scalar(1) - in.theta * in.theta) {
    throw DomainError("a must satisfy 0 <= a < 1 - theta^2, got " + detail::describe(in));
  }
  if (!(in.beta > Scalar(0))) {
    throw DomainError("beta must be > 0, got " + detail::describe(in));
  }
}

template <typename Scalar>
bool is_valid(const RateInput<Scalar>& in) {
  try {
    validate(in);
  } catch (const DomainError&) {
    return false;
  }
  return true;
}

/// Feasibility boundary: the rho at which the displacement term of f vanishes,
/// i.e. (1-rho)^2 - a(1-rho) = theta^2.
template <typename Scalar>
Scalar rho_bar(const RateInput<Scalar>& in) {
  validate(in);
  using std::sqrt;
  using std::min;
  const Scalar half_a = in.a / Scalar(2);
  // At theta = 0 the exact value is 1 - a; rounding can land one ulp above it.
  return min(Scalar(1) - half_a - sqrt(half_a * half_a + in.theta * in.theta), Scalar(1) - in.a);
}

/// f_{theta,a}(rho) on (0, 1-a].
template <typename Scalar>
Scalar f_value(const RateInput<Scalar>& in, Scalar rho) {
  validate(in);
  if (!(rho > Scalar(0)) || rho > Scalar(1) - in.a) {
    throw DomainError("f is defined for 0 < rho <= 1 - a " + detail::describe(in));
  }
  using std::sqrt;
  const Scalar gap = sqrt(detail::displacement_radicand(in.a, rho)) - in.theta;
  return rho + gap * gap / rho;
}

/// f'_{theta,a}(rho) on the open interval (0, 1-a).
template <typename Scalar>
Scalar f_prime(const RateInput<Scalar>& in, Scalar rho) {
  validate(in);
  if (!(rho > Scalar(0)) || !(rho < Scalar(1) - in.a)) {
    throw DomainError("f' is defined for 0 < rho < 1 - a " + detail::describe(in));
  }
  using std::sqrt;
  const Scalar theta = in.theta;
  const Scalar a = in.a;
  Scalar bracket = Scalar(2) * rho * rho - Scalar(1) + a - theta * theta;
  if (theta != Scalar(0)) {
    bracket += theta * (Scalar(2) * (Scalar(1) - a - rho) + a * rho) /
               sqrt(detail::displacement_radicand(a, rho));
  }
  return bracket / (rho * rho);
}

/// Sixth-degree polynomial whose sign is opposite to f' wherever
/// 2 rho^2 <= 1 - a + theta^2 (the squaring step is sign-preserving there).
/// Requires 0 < a < 1 - theta^2 < 1.
template <typename Scalar>
Scalar poly_P(const RateInput<Scalar>& in, Scalar rho) {
  validate(in);
  if (!(in.a > Scalar(0)) || !(in.theta > Scalar(0))) {
    throw DomainError("P requires 0 < a < 1 - theta^2 < 1 " + detail::describe(in));
  }
  const Scalar t2 = in.theta * in.theta;
  const Scalar a = in.a;
  const Scalar r2 = rho * rho;
  const Scalar quartic = Scalar(4) * r2 * r2 - Scalar(4) * (Scalar(1) + t2 - a) * r2 +
                         (Scalar(1) - t2 - a) * (Scalar(1) - t2 - a);
  const Scalar quadratic = r2 - (Scalar(2) - a) * rho + (Scalar(1) - a);
  const Scalar ta = in.theta * a;
  return quartic * quadratic - ta * ta * r2;
}

/// Unique minimizer of f over (0, rho_bar] by bisection on the strictly
/// increasing f'. The bracket is [eps, rho_bar - eps] with eps = 1e-14 (1-a).
template <typename Scalar>
RateSolution<Scalar> minimize_rate(const RateInput<Scalar>& in) {
  validate(in);
  const Scalar upper_limit = rho_bar(in);
  const Scalar eps = Scalar(1e-14) * (Scalar(1) - in.a);
  Scalar lo = eps;
  Scalar hi = upper_limit - eps;

  if (!(hi > lo) || f_prime(in, hi) <= Scalar(0)) {
    return {upper_limit, f_value(in, upper_limit), true};
  }
  if (!(f_prime(in, lo) < Scalar(0))) {
    throw NumericalError("minimize_rate: f' does not change sign on the bracket " +
                         detail::describe(in));
  }

  // Bisect to exhaustion of the double grid (well below the 1e-12 target).
  for (int iter = 0; iter < 400; ++iter) {
    const Scalar mid = lo + (hi - lo) / Scalar(2);
    if (!(mid > lo) || !(mid < hi)) break;
    if (f_prime(in, mid) > Scalar(0)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const Scalar root = lo + (hi - lo) / Scalar(2);
  return {root, f_value(in, root), false};
}

/// beta * I(theta, a).
template <typename Scalar>
Scalar decay_rate(const RateInput<Scalar>& in) {
  return in.beta * minimize_rate(in).I_value;
}

/// Fixed-ball closed form (theta = 0). Phase transition at a = 1/2.
template <typename Scalar>
Scalar rate_corollary1(Scalar a, Scalar beta) {
  if (!(a >= Scalar(0)) || !(a < Scalar(1))) {
    throw DomainError("rate_corollary1 requires 0 <= a < 1");
  }
  if (!(beta > Scalar(0))) throw DomainError("beta must be > 0");
  using std::sqrt;
  if (a < Scalar(0.5)) {
    return beta * (Scalar(2) * sqrt(Scalar(2) * (Scalar(1) - a)) - Scalar(2) + a);
  }
  return beta * (Scalar(1) - a);
}

/// Minimizer matching rate_corollary1.
template <typename Scalar>
Scalar rho_hat_corollary1(Scalar a) {
  if (!(a >= Scalar(0)) || !(a < Scalar(1))) {
    throw DomainError("rho_hat_corollary1 requires 0 <= a < 1");
  }
  using std::sqrt;
  return a < Scalar(0.5) ? sqrt((Scalar(1) - a) / Scalar(2)) : Scalar(1) - a;
}

/// Empty moving ball closed form (a = 0).
template <typename Scalar>
Scalar rate_corollary2(Scalar theta, Scalar beta) {
  if (!(theta >= Scalar(0)) || !(theta < Scalar(1))) {
    throw DomainError("rate_corollary2 requires 0 <= theta < 1");
  }
  if (!(beta > Scalar(0))) throw DomainError("beta must be > 0");
  using std::sqrt;
  return Scalar(2) * beta * (sqrt(Scalar(2)) - Scalar(1)) * (Scalar(1) - theta);
}

template <typename Scalar>
Scalar rho_hat_corollary2(Scalar theta) {
  if (!(theta >= Scalar(0)) || !(theta < Scalar(1))) {
    throw DomainError("rho_hat_corollary2 requires 0 <= theta < 1");
  }
  using std::sqrt;
  return (Scalar(1) - theta) / sqrt(Scalar(2));
}

/// Decay rate for the mass outside B(0, theta sqrt(2 beta) t). Needs theta > 0.
template <typename Scalar>
Scalar rate_theorem2(const RateInput<Scalar>& in) {
  if (!(in.theta > Scalar(0))) {
    throw DomainError(
        "rate_theorem2 requires 0 < theta < 1 (theta = 0 gives an empty inner ball) " +
        detail::describe(in));
  }
  return in.beta * rho_bar(in);
}

}  // namespace localmass
