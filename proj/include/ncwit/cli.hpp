#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ncwit/experiment.hpp"
#include "ncwit/statistics.hpp"
#include "ncwit/syserr.hpp"

namespace ncwit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRefused = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key=value configuration. Later sources override earlier ones.
using KeyValues = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment. Keys not in `allowed`
/// are rejected with ConfigError naming the key.
KeyValues parse_key_values(std::istream& is, const std::vector<std::string>& allowed);

/// Builds a ScanConfig from resolved keys; throws ConfigError naming the
/// offending key when a value is missing or invalid.
ScanConfig scan_config_from(const KeyValues& keys);

struct AnalysisOptions {
  double w = 4.2;
  double p_r = 0.995;
  double k_sigma = 3.0;
  int kernel_n_max = kDefaultKernelSize;
  double syserr_prefactor = 1.0;
};

struct AnalysisReport {
  int n_res = 0;
  std::int64_t total = 0;
  std::int64_t overflow = 0;
  double overflow_fraction = 0.0;
  double truncated_expectation = 0.0;
  double stat_sigma = 0.0;
  SystematicBound systematic;
  std::optional<double> significance;
  double k_sigma = 3.0;
  bool certified = false;
  bool refused = false;
  std::string reason;
};

/// Witness estimate, plug-in error bar, systematic bound and certification
/// for a recorded count histogram. Refuses when the overflow fraction exceeds
/// 1 - p_r, because the systematic bound no longer applies.
AnalysisReport analyze_record(const MeasurementRecord& record, const AnalysisOptions& options);

nlohmann::json to_json(const SystematicBound& bound);
nlohmann::json to_json(const AnalysisReport& report, const AnalysisOptions& options);

/// Entry point of the `ncwit` tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncwit::cli
