#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace localmass {

/// Base class for every error raised by the library. Each subclass maps onto
/// a distinct CLI exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates its mathematical domain (e.g. a >= 1 - theta^2).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Population exceeded the configured particle cap.
class CapacityError : public Error {
 public:
  CapacityError(double time, std::size_t cap,
                std::optional<std::uint64_t> replica = std::nullopt);

  double time() const noexcept { return time_; }
  std::size_t cap() const noexcept { return cap_; }
  std::optional<std::uint64_t> replica() const noexcept { return replica_; }

  CapacityError with_replica(std::uint64_t replica) const {
    return CapacityError(time_, cap_, replica);
  }

 private:
  double time_;
  std::size_t cap_;
  std::optional<std::uint64_t> replica_;
};

/// Too few usable points for a fit.
class InsufficientDataError : public Error {
 public:
  InsufficientDataError(const std::string& what, std::vector<double> offending_t);

  const std::vector<double>& offending_t() const noexcept { return offending_t_; }

 private:
  std::vector<double> offending_t_;
};

/// Caller misuse that is not a parameter-domain issue (e.g. snapshot time
/// does not match the requested evaluation time).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration: unknown key, bad number, missing field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Internal numerical fault (bracketing failure and the like).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace localmass
