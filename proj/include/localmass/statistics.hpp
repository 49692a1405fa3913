#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace localmass {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_{0.0};
  double comp_{0.0};
};

struct SampleStatistics {
  std::size_t count{0};
  double mean{0.0};
  double variance{0.0};  // unbiased; 0 for a single sample
  double standard_error{0.0};
};

/// Two-pass mean/variance in index order.
SampleStatistics sample_statistics(std::span<const double> values);

struct ChiSquareResult {
  double statistic{0.0};
  int degrees_of_freedom{0};
  double p_value{1.0};
  std::size_t bins{0};
};

/// Goodness of fit of integer samples k >= 1 to the probability mass function
/// `pmf`. Cells run k = 1, 2, ... up to the `pool_quantile` quantile of the
/// model; everything above is pooled into one tail cell. Adjacent cells are
/// merged until each has expected count >= 5.
ChiSquareResult chi_square_gof(std::span<const std::size_t> samples,
                               const std::function<double(std::size_t)>& pmf,
                               double pool_quantile = 0.999);

struct KsResult {
  double statistic{0.0};
  double p_value{1.0};
};

/// One-sample Kolmogorov-Smirnov test against a continuous CDF. p-value from
/// the asymptotic Kolmogorov law with Stephens' small-sample correction.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

}  // namespace localmass
