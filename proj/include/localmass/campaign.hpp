#pragma once

// Command-line campaigns: configuration parsing (flags over a key=value file or
// a previously written JSON report) and the subcommands that drive the rate,
// engine and rare-event modules.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "localmass/bbm_engine.hpp"
#include "localmass/rare_event.hpp"

namespace localmass {

inline constexpr int kReportSchemaVersion = 1;

enum class Command { Rate, Table, Simulate, Expect, Estimate, Validate };
enum class OutputFormat { Csv, Json };
enum class MethodSelection { Naive, Importance, Both };

/// Exit statuses of the CLI, one per error category.
enum ExitStatus : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitDomain = 3,
  kExitCapacity = 4,
  kExitInsufficientData = 5,
  kExitUsage = 6,
  kExitValidationFailed = 7,
};

struct CampaignConfig {
  Command command{Command::Rate};

  // model
  double beta{1.0};
  int dim{1};
  std::size_t max_particles{kDefaultMaxParticles};
  std::uint64_t seed{1};

  // event
  EventKind kind{EventKind::LowerTailInsideMovingBall};
  double theta{0.0};
  double a{0.0};
  double radius{1.0};
  std::vector<double> center;     // empty: origin
  std::vector<double> direction;  // empty: derived from center
  std::optional<double> rho;

  // campaign
  double t{1.0};
  std::vector<double> t_grid{2.0, 3.0, 4.0, 5.0, 6.0};
  std::uint64_t replicas{10000};
  MethodSelection method{MethodSelection::Both};
  unsigned threads{0};
  std::vector<double> theta_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> a_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

  // output
  std::string out;
  OutputFormat format{OutputFormat::Csv};

  /// Set when --help was requested; run_command prints it and exits 0.
  std::string help_text;
};

std::string to_string(Command c);
std::string to_string(OutputFormat f);
std::string to_string(MethodSelection m);

/// Parses `args` (subcommand first, then flags). `--config FILE` loads a flat
/// key=value file (# comments) or a JSON report written by `estimate`; flags
/// override file values. Unknown keys and malformed values raise ConfigError,
/// domain violations raise DomainError.
CampaignConfig parse_config(const std::vector<std::string>& args);

/// Checks cross-field constraints for the selected command.
void validate(const CampaignConfig& config);

/// Every field, defaults included, keyed as in the config file.
nlohmann::json config_to_json(const CampaignConfig& config);

Ball config_ball(const CampaignConfig& config);
EventSpec config_event(const CampaignConfig& config);

/// Seeds used by the two estimators of an `estimate` campaign.
std::uint64_t naive_seed(std::uint64_t seed);
std::uint64_t importance_seed(std::uint64_t seed);

/// Runs the configured command. Text goes to `out`, diagnostics to `err`,
/// artifacts to disk. Returns an ExitStatus.
int run_command(const CampaignConfig& config, std::ostream& out, std::ostream& err);

/// parse_config + run_command with errors mapped to exit statuses.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace localmass
