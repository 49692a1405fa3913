#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "localmass/statistics.hpp"

using namespace localmass;

TEST_CASE("compensated sum recovers cancelled terms") {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 2.0);
}

TEST_CASE("sample statistics") {
  const std::vector<double> x{1, 2, 3, 4};
  const auto st = sample_statistics(x);
  CHECK(st.count == 4);
  CHECK(st.mean == 2.5);
  CHECK(st.variance == doctest::Approx(5.0 / 3.0));
  CHECK(st.standard_error == doctest::Approx(std::sqrt(5.0 / 12.0)));
  const std::vector<double> one{7};
  CHECK(sample_statistics(one).variance == 0.0);
}

TEST_CASE("kolmogorov survival reference values") {
  // P(K > 1.3581) = 0.05 and P(K > 1.6276) = 0.01 (standard tables).
  CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(kolmogorov_survival(1.6276) == doctest::Approx(0.01).epsilon(1e-2));
  CHECK(kolmogorov_survival(0.0) == 1.0);
}

TEST_CASE("ks test detects a wrong scale") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> n(0.0, 1.5);
  std::vector<double> x(5000);
  for (auto& v : x) v = n(gen);
  const auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  CHECK(ks_test(x, cdf).p_value < 1e-6);
  const auto scaled = [](double z) { return 0.5 * std::erfc(-z / (1.5 * std::sqrt(2.0))); };
  CHECK(ks_test(x, scaled).p_value > 0.001);
}

TEST_CASE("chi-square accepts the true geometric law and rejects a wrong one") {
  std::mt19937_64 gen(8);
  const double q = 0.3;
  std::geometric_distribution<std::size_t> geo(q);
  std::vector<std::size_t> k(50000);
  for (auto& v : k) v = geo(gen) + 1;
  const auto pmf = [q](double p) {
    return [p](std::size_t j) { return p * std::pow(1 - p, static_cast<double>(j) - 1); };
  };
  const auto good = chi_square_gof(k, pmf(q));
  CHECK(good.p_value > 0.001);
  CHECK(good.degrees_of_freedom == static_cast<int>(good.bins) - 1);
  CHECK(chi_square_gof(k, pmf(0.32)).p_value < 1e-6);
}
