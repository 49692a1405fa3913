#include "localmass/rate_table.hpp"

#include <cstdio>
#include <cstdlib>

#include "localmass/errors.hpp"
#include "localmass/rate_function.hpp"

namespace localmass {

std::string format_number(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

double round_significant(double value, int digits) {
  return std::strtod(format_number(value, digits).c_str(), nullptr);
}

std::vector<RateRow> rate_table(std::span<const double> theta_grid, std::span<const double> a_grid,
                                double beta) {
  std::vector<RateRow> rows;
  rows.reserve(theta_grid.size() * a_grid.size());
  for (double theta : theta_grid) {
    for (double a : a_grid) {
      RateRow row;
      row.theta = theta;
      row.a = a;
      try {
        const auto sol = minimize_rate(RateInput<double>{theta, a, beta});
        row.valid = true;
        row.rho_hat = sol.rho_hat;
        row.I = sol.I_value;
        row.rate = beta * sol.I_value;
        row.at_boundary = sol.at_boundary;
      } catch (const DomainError& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string rate_table_csv(std::span<const RateRow> rows) {
  std::string out = "theta,a,rho_hat,I,rate\n";
  for (const auto& r : rows) {
    out += format_number(r.theta) + "," + format_number(r.a) + ",";
    if (r.valid) {
      out += format_number(r.rho_hat) + "," + format_number(r.I) + "," + format_number(r.rate);
    } else {
      out += std::string(kInvalidMarker) + "," + kInvalidMarker + "," + kInvalidMarker;
    }
    out += "\n";
  }
  return out;
}

nlohmann::json rate_table_json(std::span<const RateRow> rows) {
  auto out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j{{"theta", round_significant(r.theta)}, {"a", round_significant(r.a)},
                     {"valid", r.valid}};
    if (r.valid) {
      j["rho_hat"] = round_significant(r.rho_hat);
      j["I"] = round_significant(r.I);
      j["rate"] = round_significant(r.rate);
      j["at_boundary"] = r.at_boundary;
      j["provenance"] = "numeric_minimizer";
    } else {
      j["error"] = r.error;
    }
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace localmass
