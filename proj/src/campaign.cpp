#include "localmass/campaign.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "localmass/errors.hpp"
#include "localmass/gaussian_measure.hpp"
#include "localmass/rate_function.hpp"
#include "localmass/rate_table.hpp"
#include "localmass/validation.hpp"

namespace localmass {

std::string to_string(Command c) {
  switch (c) {
    case Command::Rate:
      return "rate";
    case Command::Table:
      return "table";
    case Command::Simulate:
      return "simulate";
    case Command::Expect:
      return "expect";
    case Command::Estimate:
      return "estimate";
    case Command::Validate:
      return "validate";
  }
  return "unknown";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

std::string to_string(MethodSelection m) {
  switch (m) {
    case MethodSelection::Naive:
      return "naive";
    case MethodSelection::Importance:
      return "importance";
    case MethodSelection::Both:
      return "both";
  }
  return "unknown";
}

namespace {

// Keys accepted in config files; flags are the same names with '-' for '_'.
const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "beta",   "dim",       "theta",  "a",          "radius",  "center",  "direction",
      "kind",   "t",         "t_grid", "replicas",   "seed",    "rho",     "method",
      "out",    "format",    "max_particles", "threads", "theta_grid", "a_grid"};
  return keys;
}

struct RawValue {
  std::string text;
  std::string origin;  // "flag --x" or "file:line"
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

bool is_known(const std::string& key) {
  const auto& keys = known_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

[[noreturn]] void bad_value(const std::string& key, const RawValue& raw, const std::string& what) {
  throw ConfigError("invalid value '" + raw.text + "' for " + key + " (" + raw.origin + "): " +
                    what);
}

double to_double(const std::string& key, const RawValue& raw) {
  const std::string s = trim(raw.text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    bad_value(key, raw, "expected a finite number");
  }
  return value;
}

std::uint64_t to_uint(const std::string& key, const RawValue& raw) {
  const std::string s = trim(raw.text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return value;
  // Accept integral floating forms such as 2e7.
  const double d = to_double(key, raw);
  if (d < 0.0 || d != std::floor(d) || d > 1.8e19) bad_value(key, raw, "expected a non-negative integer");
  return static_cast<std::uint64_t>(d);
}

std::vector<double> to_list(const std::string& key, const RawValue& raw) {
  std::vector<double> values;
  std::stringstream ss(raw.text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    values.push_back(to_double(key, RawValue{item, raw.origin}));
  }
  return values;
}

std::string json_scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>(), 17);
  if (v.is_number()) return v.dump();
  if (v.is_array()) {
    std::string out;
    for (const auto& item : v) {
      if (!out.empty()) out += ",";
      out += json_scalar_text(item);
    }
    return out;
  }
  return v.dump();
}

void load_file(const std::string& path, std::map<std::string, RawValue>& values) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  if (trim(content).starts_with("{")) {
    nlohmann::json report;
    try {
      report = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("malformed JSON report '" + path + "': " + e.what());
    }
    if (!report.contains("config") || !report["config"].is_object()) {
      throw ConfigError("JSON file '" + path + "' has no \"config\" object");
    }
    for (const auto& [key, v] : report["config"].items()) {
      if (key == "command" || v.is_null()) continue;
      if (!is_known(key)) throw ConfigError("unknown key '" + key + "' in report '" + path + "'");
      values[key] = RawValue{json_scalar_text(v), path + ":config." + key};
    }
    return;
  }

  std::istringstream lines(content);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = path + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError("expected key=value at " + where);
    const std::string key = normalize_key(trim(line.substr(0, eq)));
    if (!is_known(key)) throw ConfigError("unknown key '" + key + "' at " + where);
    values[key] = RawValue{trim(line.substr(eq + 1)), where};
  }
}

Command parse_command(const std::string& text) {
  static const std::map<std::string, Command> commands{
      {"rate", Command::Rate},         {"table", Command::Table},
      {"simulate", Command::Simulate}, {"expect", Command::Expect},
      {"estimate", Command::Estimate}, {"validate", Command::Validate}};
  const auto it = commands.find(text);
  if (it == commands.end()) {
    throw ConfigError("unknown command '" + text +
                      "' (expected rate, table, simulate, expect, estimate or validate)");
  }
  return it->second;
}

void apply(CampaignConfig& c, const std::string& key, const RawValue& raw) {
  if (key == "beta") c.beta = to_double(key, raw);
  else if (key == "dim") {
    const auto d = to_uint(key, raw);
    if (d < 1 || d > 64) bad_value(key, raw, "expected 1 <= dim <= 64");
    c.dim = static_cast<int>(d);
  } else if (key == "theta") c.theta = to_double(key, raw);
  else if (key == "a") c.a = to_double(key, raw);
  else if (key == "radius") c.radius = to_double(key, raw);
  else if (key == "center") c.center = to_list(key, raw);
  else if (key == "direction") c.direction = to_list(key, raw);
  else if (key == "kind") {
    try {
      c.kind = parse_event_kind(trim(raw.text));
    } catch (const ConfigError& e) {
      bad_value(key, raw, e.what());
    }
  } else if (key == "t") c.t = to_double(key, raw);
  else if (key == "t_grid") c.t_grid = to_list(key, raw);
  else if (key == "replicas") c.replicas = to_uint(key, raw);
  else if (key == "seed") c.seed = to_uint(key, raw);
  else if (key == "rho") {
    if (trim(raw.text).empty() || trim(raw.text) == "default") c.rho.reset();
    else c.rho = to_double(key, raw);
  } else if (key == "method") {
    const std::string m = trim(raw.text);
    if (m == "naive") c.method = MethodSelection::Naive;
    else if (m == "importance" || m == "importance_lower_bound") c.method = MethodSelection::Importance;
    else if (m == "both") c.method = MethodSelection::Both;
    else bad_value(key, raw, "expected naive, importance or both");
  } else if (key == "out") c.out = trim(raw.text);
  else if (key == "format") {
    const std::string f = trim(raw.text);
    if (f == "csv") c.format = OutputFormat::Csv;
    else if (f == "json") c.format = OutputFormat::Json;
    else bad_value(key, raw, "expected csv or json");
  } else if (key == "max_particles") {
    c.max_particles = static_cast<std::size_t>(to_uint(key, raw));
  } else if (key == "threads") c.threads = static_cast<unsigned>(to_uint(key, raw));
  else if (key == "theta_grid") c.theta_grid = to_list(key, raw);
  else if (key == "a_grid") c.a_grid = to_list(key, raw);
  else throw ConfigError("unknown key '" + key + "'");
}


}  // namespace

CampaignConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Large deviations of the local mass of branching Brownian motion", "localmass"};
  std::string command;
  std::string config_file;
  app.add_option("command", command, "rate | table | simulate | expect | estimate | validate");
  app.add_option("--config", config_file, "key=value file or JSON report from `estimate`");
  std::map<std::string, std::string> flag_values;
  for (const auto& key : known_keys()) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    app.add_option("--" + flag, flag_values[key]);
  }

  CampaignConfig config;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    config.help_text = app.help();
    return config;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string("command line: ") + e.what());
  }
  if (command.empty()) throw ConfigError("missing command");
  config.command = parse_command(command);

  std::map<std::string, RawValue> values;
  if (!config_file.empty()) load_file(config_file, values);
  for (const auto& key : known_keys()) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (app.get_option("--" + flag)->count() > 0) {
      values[key] = RawValue{flag_values[key], "flag --" + flag};
    }
  }
  for (const auto& [key, raw] : values) apply(config, key, raw);
  validate(config);
  return config;
}

void validate(const CampaignConfig& c) {
  if (!(c.beta > 0.0)) throw DomainError("beta must be > 0");
  if (c.dim < 1) throw DomainError("dim must be >= 1");
  if (!(c.radius > 0.0)) throw DomainError("radius must be > 0");
  if (!(c.t >= 0.0)) throw DomainError("t must be >= 0");
  if (c.replicas < 1) throw DomainError("replicas must be >= 1");
  if (c.max_particles < 1) throw DomainError("max_particles must be >= 1");
  if (!c.center.empty() && static_cast<int>(c.center.size()) != c.dim) {
    throw ConfigError("center has " + std::to_string(c.center.size()) + " coordinates but dim=" +
                      std::to_string(c.dim));
  }
  if (!c.direction.empty() && static_cast<int>(c.direction.size()) != c.dim) {
    throw ConfigError("direction has " + std::to_string(c.direction.size()) +
                      " coordinates but dim=" + std::to_string(c.dim));
  }
  for (std::size_t i = 0; i < c.t_grid.size(); ++i) {
    if (!(c.t_grid[i] >= 0.0)) throw DomainError("t_grid entries must be >= 0");
    if (i > 0 && !(c.t_grid[i] > c.t_grid[i - 1])) {
      throw ConfigError("t_grid must be strictly increasing");
    }
  }

  const bool uses_event = c.command == Command::Rate || c.command == Command::Estimate;
  if (uses_event) {
    if (!(c.theta >= 0.0) || !(c.theta < 1.0)) {
      throw DomainError("theta=" + format_number(c.theta) + " violates 0 <= theta < 1");
    }
    if (!(c.a >= 0.0) || !(c.a < 1.0 - c.theta * c.theta)) {
      throw DomainError("a=" + format_number(c.a) + " violates the constraint a < 1 - theta^2 = " +
                        format_number(1.0 - c.theta * c.theta) + " (and a >= 0)");
    }
  }
  if (c.command == Command::Estimate) {
    if (c.t_grid.empty()) throw ConfigError("estimate needs a non-empty t_grid");
    if (c.kind == EventKind::EmptyMovingBall && c.a != 0.0) {
      throw DomainError("kind=empty requires a = 0");
    }
    if (c.kind == EventKind::LowerTailOutsideExpandingBall && !(c.theta > 0.0)) {
      throw DomainError("kind=outside requires theta > 0");
    }
  }
}

nlohmann::json config_to_json(const CampaignConfig& c) {
  nlohmann::json j;
  j["command"] = to_string(c.command);
  j["beta"] = c.beta;
  j["dim"] = c.dim;
  j["theta"] = c.theta;
  j["a"] = c.a;
  j["radius"] = c.radius;
  j["center"] = c.center.empty() ? std::vector<double>(static_cast<std::size_t>(c.dim), 0.0)
                                 : c.center;
  j["direction"] = c.direction.empty() ? nlohmann::json(nullptr) : nlohmann::json(c.direction);
  j["kind"] = to_string(c.kind);
  j["t"] = c.t;
  j["t_grid"] = c.t_grid;
  j["replicas"] = c.replicas;
  j["seed"] = c.seed;
  j["rho"] = c.rho ? nlohmann::json(*c.rho) : nlohmann::json(nullptr);
  j["method"] = to_string(c.method);
  j["out"] = c.out;
  j["format"] = to_string(c.format);
  j["max_particles"] = c.max_particles;
  j["threads"] = c.threads;
  j["theta_grid"] = c.theta_grid;
  j["a_grid"] = c.a_grid;
  return j;
}

Ball config_ball(const CampaignConfig& c) {
  Eigen::VectorXd center = Eigen::VectorXd::Zero(c.dim);
  for (std::size_t i = 0; i < c.center.size(); ++i) center(static_cast<Eigen::Index>(i)) = c.center[i];
  return Ball(center, c.radius);
}

EventSpec config_event(const CampaignConfig& c) {
  if (c.kind == EventKind::LowerTailOutsideExpandingBall) {
    return EventSpec::outside_expanding_ball(c.theta, c.a, c.dim);
  }
  Ball ball = config_ball(c);
  std::optional<MovingBallSpec> moving;
  if (c.direction.empty()) {
    moving.emplace(ball, c.theta, c.beta);
  } else {
    moving.emplace(ball, c.theta, c.beta,
                   Eigen::Map<const Eigen::VectorXd>(c.direction.data(),
                                                     static_cast<Eigen::Index>(c.direction.size())));
  }
  if (c.kind == EventKind::EmptyMovingBall) return EventSpec::empty_moving_ball(*moving);
  return EventSpec::inside_moving_ball(*moving, c.a);
}

std::uint64_t naive_seed(std::uint64_t seed) { return seed; }

std::uint64_t importance_seed(std::uint64_t seed) { return seed ^ 0x9E3779B97F4A7C15ULL; }

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << content;
  if (!f) throw UsageError("failed writing '" + path + "'");
}

int run_rate(const CampaignConfig& c, std::ostream& out) {
  const RateInput<double> in{c.theta, c.a, c.beta};
  const auto sol = minimize_rate(in);
  if (c.format == OutputFormat::Json) {
    nlohmann::json j{{"schema_version", kReportSchemaVersion},
                     {"theta", c.theta},
                     {"a", c.a},
                     {"beta", c.beta},
                     {"rho_hat", round_significant(sol.rho_hat)},
                     {"I", round_significant(sol.I_value)},
                     {"rate", round_significant(c.beta * sol.I_value)},
                     {"at_boundary", sol.at_boundary},
                     {"provenance", "numeric_minimizer"}};
    if (c.theta == 0.0) {
      j["closed_form"] = {{"rate", round_significant(rate_corollary1(c.a, c.beta))},
                          {"provenance", "closed_form"}};
    } else if (c.a == 0.0) {
      j["closed_form"] = {{"rate", round_significant(rate_corollary2(c.theta, c.beta))},
                          {"provenance", "closed_form"}};
    }
    const std::string text = j.dump(2) + "\n";
    out << text;
    if (!c.out.empty()) write_file(c.out, text);
    return kExitOk;
  }
  out << "rho_hat = " << format_number(sol.rho_hat) << "\n"
      << "I = " << format_number(sol.I_value) << "\n"
      << "rate = " << format_number(c.beta * sol.I_value) << "\n"
      << "at_boundary = " << (sol.at_boundary ? "true" : "false") << "\n";
  if (!c.out.empty()) {
    const std::vector<RateRow> rows =
        rate_table(std::vector<double>{c.theta}, std::vector<double>{c.a}, c.beta);
    write_file(c.out, rate_table_csv(rows));
  }
  return kExitOk;
}

int run_table(const CampaignConfig& c, std::ostream& out) {
  const auto rows = rate_table(c.theta_grid, c.a_grid, c.beta);
  const std::string text = c.format == OutputFormat::Csv
                               ? rate_table_csv(rows)
                               : rate_table_json(rows).dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
  } else {
    write_file(c.out, text);
    out << "wrote " << rows.size() << " rows to " << c.out << "\n";
  }
  return kExitOk;
}

int run_simulate(const CampaignConfig& c, std::ostream& out) {
  const SimConfig sim{c.beta, c.dim, c.t, c.max_particles, c.seed};
  const Ball ball = config_ball(c);
  std::optional<MovingBallSpec> moving;
  if (c.theta > 0.0 && c.theta < 1.0) moving.emplace(ball, c.theta, c.beta);

  std::ostringstream csv;
  csv << "replica,time";
  for (int k = 1; k <= c.dim; ++k) csv << ",x" << k;
  csv << "\n";
  auto summaries = nlohmann::json::array();
  for (std::uint64_t r = 0; r < c.replicas; ++r) {
    ParticleSnapshot snap;
    try {
      snap = simulate(sim, r);
    } catch (const CapacityError& e) {
      throw e.with_replica(r);
    }
    for (std::size_t i = 0; i < snap.size(); ++i) {
      csv << r << "," << format_number(snap.time, 17);
      for (int k = 0; k < c.dim; ++k) {
        csv << "," << format_number(snap.positions(k, static_cast<Eigen::Index>(i)), 17);
      }
      csv << "\n";
    }
    nlohmann::json masses;
    masses["ball"] = local_mass(snap, ball);
    if (moving) masses["moving_ball"] = local_mass(snap, moving_ball_at(*moving, c.t));
    masses["outside_expanding_ball"] = mass_outside(snap, c.theta * std::sqrt(2.0 * c.beta) * c.t);
    summaries.push_back({{"replica", r},
                         {"time", snap.time},
                         {"n", snap.size()},
                         {"m_t", support_radius(snap)},
                         {"masses", masses},
                         {"provenance", "monte_carlo"}});
  }
  nlohmann::json summary{{"schema_version", kReportSchemaVersion},
                         {"config", config_to_json(c)},
                         {"replicas", summaries}};
  const std::string csv_text = csv.str();
  const std::string json_text = summary.dump(2) + "\n";
  if (!c.out.empty()) {
    write_file(c.out + ".csv", csv_text);
    write_file(c.out + ".json", json_text);
  }
  out << (c.format == OutputFormat::Csv ? csv_text : json_text);
  return kExitOk;
}

int run_expect(const CampaignConfig& c, std::ostream& out) {
  const Ball ball = config_ball(c);
  const auto m = expected_local_mass(c.beta, c.t, ball, c.dim);
  const std::string provenance =
      m.method == MeasureMethod::QuasiMonteCarlo ? "monte_carlo" : "closed_form";
  if (c.format == OutputFormat::Json) {
    const nlohmann::json j{{"schema_version", kReportSchemaVersion},
                           {"expected_local_mass", m.value},
                           {"error_bound", m.error_bound},
                           {"method", to_string(m.method)},
                           {"provenance", provenance},
                           {"config", config_to_json(c)}};
    out << j.dump(2) << "\n";
    if (!c.out.empty()) write_file(c.out, j.dump(2) + "\n");
  } else {
    out << "expected_local_mass = " << format_number(m.value) << "\n"
        << "error_bound = " << format_number(m.error_bound, 6) << "\n"
        << "method = " << to_string(m.method) << "\n";
  }
  return kExitOk;
}

nlohmann::json fit_report(std::vector<EstimateResult> estimates, double theory, bool& failed) {
  nlohmann::json j;
  std::vector<double> excluded;
  std::erase_if(estimates, [&](const EstimateResult& e) {
    if (e.p_hat > 0.0) return false;
    excluded.push_back(e.t);
    return true;
  });
  j["excluded_t"] = excluded;
  try {
    const auto fit = decay_slope(estimates);
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["slope_stderr"] = fit.slope_stderr;
    j["ratio_fitted_to_theory"] = fit.slope / -theory;
    j["provenance"] = "monte_carlo";
  } catch (const InsufficientDataError& e) {
    j["error"] = e.what();
    failed = true;
  }
  return j;
}

int run_estimate(const CampaignConfig& c, std::ostream& out, std::ostream& err) {
  const EventSpec spec = config_event(c);
  const RunOptions options{c.threads, c.max_particles};
  const double theory = theory_rate(spec, c.beta);

  std::vector<EstimateResult> naive;
  std::vector<EstimateResult> importance;
  const bool run_naive = c.method != MethodSelection::Importance;
  const bool run_importance = c.method != MethodSelection::Naive;
  ImportanceOptions is_options;
  is_options.rho = c.rho;
  for (double t : c.t_grid) {
    if (run_naive) {
      naive.push_back(naive_mc(spec, c.beta, c.dim, t, c.replicas, naive_seed(c.seed), options));
    }
    if (run_importance) {
      importance.push_back(importance_lower_bound(spec, c.beta, c.dim, t, c.replicas,
                                                  importance_seed(c.seed), is_options, options));
    }
  }

  std::ostringstream csv;
  csv << "t,method,p_hat,stderr,replicas\n";
  auto estimates_json = nlohmann::json::array();
  auto emit = [&](const EstimateResult& e) {
    csv << format_number(e.t, 17) << "," << to_string(e.method) << ","
        << format_number(e.p_hat, 17) << "," << format_number(e.std_error, 17) << ","
        << e.replicas << "\n";
    estimates_json.push_back({{"t", e.t},
                              {"method", to_string(e.method)},
                              {"p_hat", e.p_hat},
                              {"stderr", e.std_error},
                              {"replicas", e.replicas},
                              {"provenance", "monte_carlo"}});
  };
  for (std::size_t i = 0; i < c.t_grid.size(); ++i) {
    if (run_naive) emit(naive[i]);
    if (run_importance) emit(importance[i]);
  }

  bool fit_failed = false;
  nlohmann::json fits = nlohmann::json::object();
  if (run_naive) fits["naive"] = fit_report(naive, theory, fit_failed);
  if (run_importance) fits["importance_lower_bound"] = fit_report(importance, theory, fit_failed);

  nlohmann::json report;
  report["schema_version"] = kReportSchemaVersion;
  report["config"] = config_to_json(c);
  report["seeds"] = {{"naive", naive_seed(c.seed)}, {"importance_lower_bound", importance_seed(c.seed)}};
  report["theory_rate"] = {
      {"value", theory},
      {"provenance", spec.is_moving_kind() ? "numeric_minimizer" : "closed_form"}};
  if (run_importance) {
    report["rho"] = {{"value", c.rho ? *c.rho : default_rho(spec, c.beta)},
                     {"provenance", c.rho ? "closed_form" : (spec.is_moving_kind()
                                                                 ? "numeric_minimizer"
                                                                 : "closed_form")}};
  }
  report["estimates"] = estimates_json;
  report["fits"] = fits;

  const std::string csv_text = csv.str();
  const std::string json_text = report.dump(2) + "\n";
  if (!c.out.empty()) {
    write_file(c.out + ".csv", csv_text);
    write_file(c.out + ".json", json_text);
  }
  out << (c.format == OutputFormat::Csv ? csv_text : json_text);
  if (fit_failed) {
    err << "estimate: slope fit failed for at least one method (insufficient data); estimates "
           "were written\n";
    return kExitInsufficientData;
  }
  return kExitOk;
}

int run_validate(const CampaignConfig& c, std::ostream& out) {
  const auto suites = run_validation_suites(c.threads);
  std::size_t passed = 0;
  std::size_t total = 0;
  for (const auto& suite : suites) {
    for (const auto& check : suite.checks) {
      ++total;
      if (check.passed) ++passed;
      out << (check.passed ? "PASS " : "FAIL ") << suite.name << "/" << check.name;
      if (!check.detail.empty()) out << "  " << check.detail;
      out << "\n";
    }
  }
  out << passed << "/" << total << " checks passed\n";
  return passed == total ? kExitOk : kExitValidationFailed;
}

}  // namespace

int run_command(const CampaignConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.help_text.empty()) {
    out << config.help_text;
    return kExitOk;
  }
  switch (config.command) {
    case Command::Rate:
      return run_rate(config, out);
    case Command::Table:
      return run_table(config, out);
    case Command::Simulate:
      return run_simulate(config, out);
    case Command::Expect:
      return run_expect(config, out);
    case Command::Estimate:
      return run_estimate(config, out, err);
    case Command::Validate:
      return run_validate(config, out);
  }
  return kExitInternal;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_command(parse_config(args), out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const InsufficientDataError& e) {
    err << "insufficient data: " << e.what() << "\n";
    return kExitInsufficientData;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace localmass
