#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace localmass {

struct RateRow {
  double theta{0.0};
  double a{0.0};
  bool valid{false};
  double rho_hat{0.0};
  double I{0.0};
  double rate{0.0};  // beta * I
  bool at_boundary{false};
  std::string error;  // domain violation message when !valid
};

/// Rows in theta-major order; out-of-domain pairs are kept and marked invalid.
std::vector<RateRow> rate_table(std::span<const double> theta_grid, std::span<const double> a_grid,
                                double beta);

inline constexpr const char* kInvalidMarker = "domain_error";

/// CSV with header `theta,a,rho_hat,I,rate`; numbers with 15 significant
/// digits, invalid cells written as `domain_error`.
std::string rate_table_csv(std::span<const RateRow> rows);

/// JSON array of row objects.
nlohmann::json rate_table_json(std::span<const RateRow> rows);

/// printf("%.{digits}g").
std::string format_number(double value, int digits = 15);

/// The double nearest to format_number(value, digits).
double round_significant(double value, int digits = 15);

}  // namespace localmass
