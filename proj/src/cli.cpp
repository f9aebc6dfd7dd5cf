#include "ncwit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ncwit/version.hpp"

namespace ncwit::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kStateKeys = {"state", "mean_photons", "amplitude_re", "amplitude_im",
                                             "photons"};
const std::vector<std::string> kEfficiencyKeys = {"eta_prep", "transmissivity", "eta_det", "eta_meas"};
const std::vector<std::string> kScanCommonKeys = {"n_res", "p_r", "events", "mode", "seed",
                                                  "kernel_n_max", "syserr_prefactor", "threads",
                                                  "format", "out"};

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

const std::map<std::string, std::vector<std::string>>& command_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"kernel", {"w", "n_max", "out"}},
      {"scan-w", concat({kStateKeys, kEfficiencyKeys, kScanCommonKeys,
                         {"w_start", "w_stop", "w_step", "alpha_re", "alpha_im"}})},
      {"scan-alpha", concat({kStateKeys, kEfficiencyKeys, kScanCommonKeys,
                             {"alpha_start", "alpha_stop", "alpha_step", "alpha_phase", "w"}})},
      {"simulate", concat({kStateKeys, kEfficiencyKeys,
                           {"n_res", "events", "seed", "alpha_re", "alpha_im", "out"}})},
      {"analyze", {"counts", "w", "p_r", "k_sigma", "kernel_n_max", "syserr_prefactor", "out"}},
      {"syserr", {"w", "n_res", "p_r", "syserr_prefactor", "kernel_n_max", "out"}},
  };
  return keys;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string hyphenate(std::string key) {
  for (auto& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

double get_double(const KeyValues& keys, const std::string& key) {
  const auto it = keys.find(key);
  if (it == keys.end()) throw ConfigError("missing required key: " + key);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size() || !std::isfinite(v)) {
    throw ConfigError("invalid value for key " + key + ": '" + it->second + "'");
  }
  return v;
}

long long get_integer(const KeyValues& keys, const std::string& key) {
  const auto it = keys.find(key);
  if (it == keys.end()) throw ConfigError("missing required key: " + key);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size()) {
    throw ConfigError("invalid value for key " + key + ": '" + it->second + "'");
  }
  return v;
}

std::uint64_t get_unsigned(const KeyValues& keys, const std::string& key) {
  const long long v = get_integer(keys, key);
  if (v < 0) throw ConfigError("invalid value for key " + key + ": must be >= 0");
  return static_cast<std::uint64_t>(v);
}

template <class T, class Getter>
void maybe_set(const KeyValues& keys, const std::string& key, T& target, Getter get) {
  if (keys.count(key)) target = static_cast<T>(get(keys, key));
}

KeyValues key_values_of(const ScanConfig& c) {
  KeyValues kv;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, state::Vacuum>) {
          kv["state"] = "vacuum";
        } else if constexpr (std::is_same_v<S, state::Coherent>) {
          kv["state"] = "coherent";
          kv["amplitude_re"] = format_double(s.amplitude.real());
          kv["amplitude_im"] = format_double(s.amplitude.imag());
        } else if constexpr (std::is_same_v<S, state::Thermal>) {
          kv["state"] = "thermal";
          kv["mean_photons"] = format_double(s.mean_photons);
        } else if constexpr (std::is_same_v<S, state::Fock>) {
          kv["state"] = "fock";
          kv["photons"] = std::to_string(s.photons);
        } else {
          kv["state"] = "spats";
          kv["mean_photons"] = format_double(s.mean_thermal);
        }
      },
      c.state);
  kv["eta_prep"] = format_double(c.efficiency.eta_prep);
  kv["transmissivity"] = format_double(c.efficiency.transmissivity);
  kv["eta_det"] = format_double(c.efficiency.eta_det);
  if (c.efficiency.eta_meas_override) kv["eta_meas"] = format_double(*c.efficiency.eta_meas_override);
  kv["n_res"] = std::to_string(c.n_res);
  kv["p_r"] = format_double(c.p_r);
  kv["events"] = std::to_string(c.events);
  kv["w_start"] = format_double(c.w_grid.start);
  kv["w_stop"] = format_double(c.w_grid.stop);
  kv["w_step"] = format_double(c.w_grid.step);
  kv["alpha_start"] = format_double(c.alpha_grid.start);
  kv["alpha_stop"] = format_double(c.alpha_grid.stop);
  kv["alpha_step"] = format_double(c.alpha_grid.step);
  kv["alpha_phase"] = format_double(c.alpha_phase);
  kv["alpha_re"] = format_double(c.alpha.real());
  kv["alpha_im"] = format_double(c.alpha.imag());
  kv["w"] = format_double(c.w);
  kv["mode"] = c.mode == Mode::Exact ? "exact" : "sampled";
  kv["seed"] = std::to_string(c.seed);
  kv["kernel_n_max"] = std::to_string(c.kernel_n_max);
  kv["syserr_prefactor"] = format_double(c.syserr_prefactor);
  kv["threads"] = std::to_string(c.threads);
  return kv;
}

KeyValues preset(const std::string& name) {
  if (name == "spats-reference") return key_values_of(spats_reference_config());
  throw ConfigError("unknown preset '" + name + "' (available: spats-reference)");
}

// Restrict to the keys a command understands; presets carry every scan key.
KeyValues restrict_to(const KeyValues& kv, const std::vector<std::string>& allowed) {
  KeyValues out;
  for (const auto& k : allowed) {
    if (auto it = kv.find(k); it != kv.end()) out[k] = it->second;
  }
  return out;
}

std::string format_or_default(const KeyValues& keys) {
  const auto it = keys.find("format");
  if (it == keys.end()) return "csv";
  if (it->second != "csv" && it->second != "json") {
    throw ConfigError("invalid value for key format: '" + it->second + "' (csv or json)");
  }
  return it->second;
}

// Writes through `out` for "-" or a missing key, otherwise to the named file.
void emit(const KeyValues& keys, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  const auto it = keys.find("out");
  if (it == keys.end() || it->second == "-") {
    body(out);
    return;
  }
  std::ofstream file(it->second);
  if (!file) throw std::runtime_error("cannot open output file '" + it->second + "'");
  body(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing output file '" + it->second + "'");
}

void write_header(std::ostream& os, const std::string& command, const KeyValues& echo) {
  os << "# ncwit " << kVersion << ' ' << command << '\n';
  for (const auto& [k, v] : echo) os << "# " << k << '=' << v << '\n';
}

json rows_to_json(const std::vector<ScanRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"x", r.x},
                   {"w", r.w},
                   {"alpha_re", r.alpha.real()},
                   {"alpha_im", r.alpha.imag()},
                   {"expectation", r.expectation},
                   {"stat_sigma", r.stat_sigma},
                   {"syserr_lo", r.expectation},
                   {"syserr_hi", r.expectation + r.syserr},
                   {"significance", r.significance ? json(*r.significance) : json(nullptr)}});
  }
  return arr;
}

void write_scan(std::ostream& os, const std::string& command, const KeyValues& echo,
                const std::string& format, const std::vector<ScanRow>& rows,
                const std::optional<OptimalWidth>& optimum) {
  if (format == "json") {
    json doc = {{"schema", 1}, {"version", kVersion}, {"command", command}, {"config", echo},
                {"rows", rows_to_json(rows)}};
    if (optimum) {
      doc["optimum"] = {{"w", optimum->w},
                        {"significance", optimum->significance},
                        {"interior", optimum->interior},
                        {"warning", optimum->warning}};
    }
    os << doc.dump(2) << '\n';
    return;
  }
  write_header(os, command, echo);
  if (optimum) {
    os << "# optimum_w=" << format_double(optimum->w)
       << " optimum_significance=" << format_double(optimum->significance)
       << " interior=" << (optimum->interior ? "true" : "false") << '\n';
    if (!optimum->warning.empty()) os << "# warning: " << optimum->warning << '\n';
  }
  os << "x,expectation,stat_sigma,syserr_lo,syserr_hi,significance\n";
  for (const auto& r : rows) {
    os << format_double(r.x) << ',' << format_double(r.expectation) << ','
       << format_double(r.stat_sigma) << ',' << format_double(r.expectation) << ','
       << format_double(r.expectation + r.syserr) << ','
       << (r.significance ? format_double(*r.significance) : std::string("nan")) << '\n';
  }
}

int cmd_kernel(const KeyValues& keys, std::ostream& out) {
  const double w = get_double(keys, "w");
  const long long n_max = get_integer(keys, "n_max");
  if (!(w > 0.0)) throw ConfigError("invalid value for key w: must be > 0");
  if (n_max < 0) throw ConfigError("invalid value for key n_max: must be >= 0");
  const WitnessKernel kernel = omega_coefficients(w, static_cast<int>(n_max));
  emit(keys, out, [&](std::ostream& os) { write_kernel_csv(os, kernel); });
  return kExitOk;
}

int cmd_scan(const std::string& command, const KeyValues& keys, std::ostream& out, std::ostream& err) {
  const std::string format = format_or_default(keys);
  const ScanConfig config = scan_config_from(keys);
  KeyValues echo = restrict_to(key_values_of(config), command_keys().at(command));
  echo["format"] = format;

  if (command == "scan-w") {
    const auto rows = scan_w(config);
    std::optional<OptimalWidth> optimum;
    try {
      optimum = find_optimal_w(rows);
      if (!optimum->warning.empty()) err << "warning: " << optimum->warning << '\n';
    } catch (const std::runtime_error& e) {
      err << "warning: " << e.what() << " (non-certifying)\n";
    }
    emit(keys, out, [&](std::ostream& os) { write_scan(os, command, echo, format, rows, optimum); });
  } else {
    const auto rows = scan_alpha(config, config.w);
    emit(keys, out, [&](std::ostream& os) { write_scan(os, command, echo, format, rows, std::nullopt); });
  }
  return kExitOk;
}

int cmd_simulate(const KeyValues& keys, std::ostream& out) {
  const ScanConfig config = scan_config_from(keys);
  const DensityMatrix rho_eta = detected_state(config);
  const PhotonStatistics stats = recorded_statistics(config, rho_eta, config.alpha);
  const MeasurementRecord record = simulate_counts(stats, config.events, config.n_res, config.seed);
  emit(keys, out, [&](std::ostream& os) { write_record_csv(os, record); });
  return kExitOk;
}

AnalysisOptions analysis_options_from(const KeyValues& keys) {
  AnalysisOptions options;
  options.w = get_double(keys, "w");
  maybe_set(keys, "p_r", options.p_r, get_double);
  maybe_set(keys, "k_sigma", options.k_sigma, get_double);
  maybe_set(keys, "kernel_n_max", options.kernel_n_max, get_integer);
  maybe_set(keys, "syserr_prefactor", options.syserr_prefactor, get_double);
  if (!(options.w > 0.0)) throw ConfigError("invalid value for key w: must be > 0");
  if (!(options.p_r > 0.0 && options.p_r < 1.0)) throw ConfigError("invalid value for key p_r: must lie in (0, 1)");
  if (!(options.k_sigma > 0.0)) throw ConfigError("invalid value for key k_sigma: must be > 0");
  if (!(options.syserr_prefactor > 0.0 && options.syserr_prefactor <= 1.0)) {
    throw ConfigError("invalid value for key syserr_prefactor: must lie in (0, 1]");
  }
  return options;
}

int cmd_analyze(const KeyValues& keys, std::ostream& out) {
  const auto it = keys.find("counts");
  if (it == keys.end()) throw ConfigError("missing required key: counts");
  const AnalysisOptions options = analysis_options_from(keys);
  std::ifstream file(it->second);
  if (!file) throw ConfigError("cannot open counts file '" + it->second + "'");
  MeasurementRecord record;
  try {
    record = read_record_csv(file);
  } catch (const std::runtime_error& e) {
    throw ConfigError("malformed counts file '" + it->second + "': " + e.what());
  }
  if (options.kernel_n_max < record.n_res()) {
    throw ConfigError("invalid value for key kernel_n_max: must cover the record's " +
                      std::to_string(record.n_res()) + " resolved photon numbers");
  }
  const AnalysisReport report = analyze_record(record, options);
  json doc = to_json(report, options);
  doc["input"] = it->second;
  emit(keys, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return report.refused ? kExitRefused : kExitOk;
}

int cmd_syserr(const KeyValues& keys, std::ostream& out) {
  const double w = get_double(keys, "w");
  int n_res = kDefaultResolution;
  double p_r = 0.995;
  int kernel_n_max = kDefaultKernelSize;
  SyserrOptions options;
  maybe_set(keys, "n_res", n_res, get_integer);
  maybe_set(keys, "p_r", p_r, get_double);
  maybe_set(keys, "kernel_n_max", kernel_n_max, get_integer);
  maybe_set(keys, "syserr_prefactor", options.prefactor, get_double);
  if (!(w > 0.0)) throw ConfigError("invalid value for key w: must be > 0");
  if (n_res < 0) throw ConfigError("invalid value for key n_res: must be >= 0");
  if (!(p_r > 0.0 && p_r < 1.0)) throw ConfigError("invalid value for key p_r: must lie in (0, 1)");
  if (kernel_n_max < n_res) throw ConfigError("invalid value for key kernel_n_max: must be >= n_res");
  if (!(options.prefactor > 0.0 && options.prefactor <= 1.0)) {
    throw ConfigError("invalid value for key syserr_prefactor: must lie in (0, 1]");
  }
  const WitnessKernel kernel = omega_coefficients(w, kernel_n_max);
  const SystematicBound bound = systematic_error(kernel, n_res, p_r, options);
  json doc = {{"schema", 1}, {"version", kVersion}, {"command", "syserr"}, {"w", w},
              {"systematic", to_json(bound)}};
  emit(keys, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return kExitOk;
}

}  // namespace

KeyValues parse_key_values(std::istream& is, const std::vector<std::string>& allowed) {
  KeyValues kv;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown config key: " + key);
    }
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

ScanConfig scan_config_from(const KeyValues& keys) {
  ScanConfig c;
  const auto state_it = keys.find("state");
  if (state_it == keys.end()) throw ConfigError("missing required key: state");
  const std::string& kind = state_it->second;
  if (kind == "vacuum") {
    c.state = state::Vacuum{};
  } else if (kind == "coherent") {
    double im = 0.0;
    maybe_set(keys, "amplitude_im", im, get_double);
    c.state = state::Coherent{{get_double(keys, "amplitude_re"), im}};
  } else if (kind == "thermal") {
    c.state = state::Thermal{get_double(keys, "mean_photons")};
  } else if (kind == "fock") {
    c.state = state::Fock{static_cast<int>(get_integer(keys, "photons"))};
  } else if (kind == "spats") {
    c.state = state::PhotonAddedThermal{get_double(keys, "mean_photons"), 1.0};
  } else {
    throw ConfigError("invalid value for key state: '" + kind +
                      "' (vacuum, coherent, thermal, fock or spats)");
  }

  maybe_set(keys, "eta_prep", c.efficiency.eta_prep, get_double);
  maybe_set(keys, "transmissivity", c.efficiency.transmissivity, get_double);
  maybe_set(keys, "eta_det", c.efficiency.eta_det, get_double);
  if (keys.count("eta_meas")) c.efficiency.eta_meas_override = get_double(keys, "eta_meas");
  maybe_set(keys, "n_res", c.n_res, get_integer);
  maybe_set(keys, "p_r", c.p_r, get_double);
  maybe_set(keys, "events", c.events, get_integer);
  maybe_set(keys, "w_start", c.w_grid.start, get_double);
  maybe_set(keys, "w_stop", c.w_grid.stop, get_double);
  maybe_set(keys, "w_step", c.w_grid.step, get_double);
  maybe_set(keys, "alpha_start", c.alpha_grid.start, get_double);
  maybe_set(keys, "alpha_stop", c.alpha_grid.stop, get_double);
  maybe_set(keys, "alpha_step", c.alpha_grid.step, get_double);
  maybe_set(keys, "alpha_phase", c.alpha_phase, get_double);
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  maybe_set(keys, "alpha_re", alpha_re, get_double);
  maybe_set(keys, "alpha_im", alpha_im, get_double);
  c.alpha = {alpha_re, alpha_im};
  maybe_set(keys, "w", c.w, get_double);
  maybe_set(keys, "seed", c.seed, get_unsigned);
  maybe_set(keys, "kernel_n_max", c.kernel_n_max, get_integer);
  maybe_set(keys, "syserr_prefactor", c.syserr_prefactor, get_double);
  maybe_set(keys, "threads", c.threads, get_integer);
  if (auto it = keys.find("mode"); it != keys.end()) {
    if (it->second == "exact") {
      c.mode = Mode::Exact;
    } else if (it->second == "sampled") {
      c.mode = Mode::Sampled;
    } else {
      throw ConfigError("invalid value for key mode: '" + it->second + "' (exact or sampled)");
    }
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return c;
}

AnalysisReport analyze_record(const MeasurementRecord& record, const AnalysisOptions& options) {
  record.validate();
  AnalysisReport report;
  report.n_res = record.n_res();
  report.total = record.total;
  report.overflow = record.overflow;
  report.overflow_fraction = record.overflow_fraction();
  report.k_sigma = options.k_sigma;

  const WitnessKernel kernel = omega_coefficients(options.w, std::max(options.kernel_n_max, record.n_res()));
  const ProbabilityEstimate estimate = estimate_probabilities(record);
  report.truncated_expectation = truncated_expectation(estimate.stats, kernel, record.n_res());
  const double variance = witness_variance(estimate.stats, kernel, record.total, record.n_res());
  report.stat_sigma = std::sqrt(variance);

  SyserrOptions syserr;
  syserr.prefactor = options.syserr_prefactor;
  report.systematic = systematic_error(kernel, record.n_res(), options.p_r, syserr);
  report.significance = significance(report.truncated_expectation, report.systematic.value, variance);

  if (report.overflow_fraction > 1.0 - options.p_r) {
    report.refused = true;
    report.reason = "overflow fraction " + format_double(report.overflow_fraction) +
                    " exceeds 1 - p_r = " + format_double(1.0 - options.p_r) +
                    "; the systematic bound does not apply";
  } else if (!report.significance) {
    report.reason = "zero statistical variance; significance undefined";
  } else {
    report.certified = *report.significance <= -options.k_sigma;
    report.reason = report.certified ? "nonclassical at the requested confidence"
                                     : "no significant negativity";
  }
  return report;
}

nlohmann::json to_json(const SystematicBound& bound) {
  return {{"value", bound.value},
          {"branch", to_string(bound.branch)},
          {"b1", bound.b1},
          {"b2", bound.b2 ? json(*bound.b2) : json(nullptr)},
          {"p_r", bound.p_r},
          {"n_res", bound.n_res},
          {"prefactor", bound.prefactor},
          {"non_binding", bound.non_binding}};
}

nlohmann::json to_json(const AnalysisReport& report, const AnalysisOptions& options) {
  return {{"schema", 1},
          {"version", kVersion},
          {"command", "analyze"},
          {"options",
           {{"w", options.w},
            {"p_r", options.p_r},
            {"k_sigma", options.k_sigma},
            {"kernel_n_max", options.kernel_n_max},
            {"syserr_prefactor", options.syserr_prefactor}}},
          {"n_res", report.n_res},
          {"total", report.total},
          {"overflow", report.overflow},
          {"overflow_fraction", report.overflow_fraction},
          {"truncated_expectation", report.truncated_expectation},
          {"stat_sigma", report.stat_sigma},
          {"systematic", to_json(report.systematic)},
          {"significance", report.significance ? json(*report.significance) : json(nullptr)},
          {"certified", report.certified},
          {"refused", report.refused},
          {"reason", report.reason}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ncwit: nonclassicality witnesses from displaced photon-counting statistics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  struct Sub {
    CLI::App* app;
    std::string config_path;
    std::string preset;
    std::map<std::string, std::string> flags;
  };
  std::map<std::string, Sub> subs;
  const std::map<std::string, std::string> descriptions = {
      {"kernel", "write the witness coefficients Omega_{w,n} as CSV"},
      {"scan-w", "scan the filter width at a fixed displacement"},
      {"scan-alpha", "scan the displacement along a ray at a fixed width"},
      {"simulate", "simulate a photon-counting record"},
      {"analyze", "analyze a recorded count histogram (JSON report)"},
      {"syserr", "compute the worst-case classical truncation bound (JSON)"},
  };
  for (const auto& [name, keys] : command_keys()) {
    Sub& sub = subs[name];
    sub.app = app.add_subcommand(name, descriptions.at(name));
    sub.app->add_option("--config", sub.config_path, "flat key = value configuration file");
    if (name == "scan-w" || name == "scan-alpha" || name == "simulate") {
      sub.app->add_option("--preset", sub.preset, "named default configuration (spats-reference)");
    }
    for (const auto& key : keys) {
      sub.app->add_option("--" + hyphenate(key), sub.flags[key], "overrides config key " + key);
    }
    if (name == "analyze") sub.app->add_option("counts_file", sub.flags["counts"], "counts CSV");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (auto& [name, sub] : subs) {
    if (!sub.app->parsed()) continue;
    const auto& allowed = command_keys().at(name);
    try {
      KeyValues keys;
      if (!sub.preset.empty()) keys = restrict_to(preset(sub.preset), allowed);
      if (!sub.config_path.empty()) {
        std::ifstream file(sub.config_path);
        if (!file) throw ConfigError("cannot open config file '" + sub.config_path + "'");
        for (auto& [k, v] : parse_key_values(file, allowed)) keys[k] = v;
      }
      for (const auto& [k, v] : sub.flags) {
        if (sub.app->count("--" + hyphenate(k)) > 0 || (k == "counts" && !v.empty())) keys[k] = v;
      }

      if (name == "kernel") return cmd_kernel(keys, out);
      if (name == "scan-w" || name == "scan-alpha") return cmd_scan(name, keys, out, err);
      if (name == "simulate") return cmd_simulate(keys, out);
      if (name == "analyze") return cmd_analyze(keys, out);
      if (name == "syserr") return cmd_syserr(keys, out);
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitFailure;
    }
  }
  return kExitFailure;
}

}  // namespace ncwit::cli
