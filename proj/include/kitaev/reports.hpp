#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kitaev {

inline const std::vector<std::string> kSuiteNames{"algebra", "gibbs", "measure", "transfer", "ltqo", "gamma", "zerot"};
inline constexpr const char* kGeneratorName = "mt19937_64";

/// Invalid or over-budget run configuration; what() names the key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : std::invalid_argument("config key '" + key + "': " + message), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  std::vector<int> group;
  int width = 0;
  int height = 0;
  std::vector<double> betas;
  std::vector<std::string> suites = kSuiteNames;
  std::uint64_t seed = 0;
  std::string output = "reports";
};

/// key = value pairs separated by whitespace or newlines, '#' comments.
/// Values: integers, reals, quoted or bare strings, and flat [..] lists.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Budget checks run before any operator is built; throws ConfigError.
void check_guards(const RunConfig& cfg);

struct ReportRecord {
  std::string suite;
  std::string case_id;
  std::vector<int> group;
  std::optional<double> beta;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json expected;
  nlohmann::json computed;
  /// +infinity for cases that raised.
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;

  std::string label_class;
  std::string site_kind;
  std::optional<double> s_beta;
  std::optional<double> pf_lambda;
  std::optional<double> det_B_residual;
  std::optional<double> recursion_residual;

  /// Measured but never emitted, so reports stay byte-stable.
  double wall_seconds = 0.0;

  friend bool operator==(const ReportRecord& a, const ReportRecord& b);
};

/// Runs the selected suites in kSuiteNames order. Module exceptions become
/// failed records.
std::vector<ReportRecord> run_suite(const RunConfig& cfg);

bool all_passed(const std::vector<ReportRecord>& records);

enum class ReportFormat { csv, json };

std::string records_to_csv(const std::vector<ReportRecord>& records);
std::string records_to_json(const std::vector<ReportRecord>& records);
std::vector<ReportRecord> records_from_json(const std::string& text);

/// Writes <dir>/report.{csv,json}, creating dir. Throws std::runtime_error
/// naming the path on I/O failure.
std::filesystem::path emit(const std::vector<ReportRecord>& records, ReportFormat format,
                           const std::filesystem::path& dir);

}  // namespace kitaev
