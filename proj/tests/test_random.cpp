#include <doctest.h>

#include <cmath>
#include <vector>

#include "localmass/random.hpp"
#include "localmass/statistics.hpp"

using namespace localmass;

TEST_CASE("philox known-answer vectors") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::encrypt(C{0, 0, 0, 0}, K{0, 0}) ==
        C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32::encrypt(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                            K{0xffffffffu, 0xffffffffu}) ==
        C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::encrypt(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                            K{0xa4093822u, 0x299f31d0u}) ==
        C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct") {
  RandomStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
  }
}

TEST_CASE("uniform ranges") {
  RandomStream rng(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform_positive();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    CHECK(rng.index(7) < 7u);
  }
}

TEST_CASE("exponential and normal moments") {
  RandomStream rng(9, 1);
  const std::size_t n = 200000;
  std::vector<double> e(n), z(n), z2(n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = rng.exponential(2.0);
    z[i] = rng.normal();
    z2[i] = z[i] * z[i];
  }
  const auto se = sample_statistics(e);
  CHECK(std::abs(se.mean - 0.5) < 4 * se.standard_error);
  const auto sz = sample_statistics(z);
  CHECK(std::abs(sz.mean) < 4 * sz.standard_error);
  const auto sz2 = sample_statistics(z2);
  CHECK(std::abs(sz2.mean - 1.0) < 4 * sz2.standard_error);
  const auto ks = ks_test(z, [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); });
  CHECK(ks.p_value > 0.001);
}
