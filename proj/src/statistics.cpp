#include "localmass/statistics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "localmass/errors.hpp"

namespace localmass {

SampleStatistics sample_statistics(std::span<const double> values) {
  SampleStatistics s;
  s.count = values.size();
  if (s.count == 0) return s;
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  s.mean = sum.value() / static_cast<double>(s.count);
  if (s.count > 1) {
    CompensatedSum sq;
    for (double v : values) sq.add((v - s.mean) * (v - s.mean));
    s.variance = sq.value() / static_cast<double>(s.count - 1);
    s.standard_error = std::sqrt(s.variance / static_cast<double>(s.count));
  }
  return s;
}

ChiSquareResult chi_square_gof(std::span<const std::size_t> samples,
                               const std::function<double(std::size_t)>& pmf,
                               double pool_quantile) {
  if (samples.empty()) throw UsageError("chi_square_gof needs samples");
  const double n = static_cast<double>(samples.size());

  // Cells 1..k_max, then a pooled tail cell.
  std::size_t k_max = 1;
  double cumulative = pmf(1);
  while (cumulative < pool_quantile && k_max < 1'000'000) {
    ++k_max;
    cumulative += pmf(k_max);
  }
  std::vector<double> expected(k_max + 1, 0.0);
  std::vector<double> observed(k_max + 1, 0.0);
  for (std::size_t k = 1; k <= k_max; ++k) expected[k - 1] = n * pmf(k);
  expected[k_max] = n * std::max(0.0, 1.0 - cumulative);
  for (std::size_t k : samples) {
    if (k < 1) throw UsageError("chi_square_gof samples must be >= 1");
    observed[std::min(k, k_max + 1) - 1] += 1.0;
  }

  std::vector<double> exp_cells;
  std::vector<double> obs_cells;
  double e_acc = 0.0;
  double o_acc = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    e_acc += expected[i];
    o_acc += observed[i];
    if (e_acc >= 5.0) {
      exp_cells.push_back(e_acc);
      obs_cells.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (exp_cells.empty()) {
      exp_cells.push_back(e_acc);
      obs_cells.push_back(o_acc);
    } else {
      exp_cells.back() += e_acc;
      obs_cells.back() += o_acc;
    }
  }

  ChiSquareResult result;
  result.bins = exp_cells.size();
  for (std::size_t i = 0; i < exp_cells.size(); ++i) {
    const double diff = obs_cells[i] - exp_cells[i];
    result.statistic += diff * diff / exp_cells[i];
  }
  result.degrees_of_freedom = static_cast<int>(exp_cells.size()) - 1;
  if (result.degrees_of_freedom >= 1) {
    boost::math::chi_squared dist(result.degrees_of_freedom);
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
  }
  return result;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;  // series is slow there and the value is 1 - 1e-50
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw UsageError("ks_test needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  const double root_n = std::sqrt(n);
  return {d, kolmogorov_survival((root_n + 0.12 + 0.11 / root_n) * d)};
}

}  // namespace localmass
