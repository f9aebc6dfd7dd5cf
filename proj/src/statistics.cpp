#include "ncwit/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ncwit/version.hpp"

namespace ncwit {

double MeasurementRecord::overflow_fraction() const {
  return total > 0 ? static_cast<double>(overflow) / static_cast<double>(total) : 0.0;
}

void MeasurementRecord::validate() const {
  if (counts.empty()) throw std::invalid_argument("measurement record has no count bins");
  if (total < 1) throw std::invalid_argument("measurement record total must be >= 1");
  if (overflow < 0) throw std::invalid_argument("negative overflow count");
  std::int64_t sum = overflow;
  for (auto c : counts) {
    if (c < 0) throw std::invalid_argument("negative count");
    sum += c;
  }
  if (sum != total) {
    throw std::invalid_argument("counts sum to " + std::to_string(sum) + " but total is " +
                                std::to_string(total));
  }
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
  return mix_seed(mix_seed(master) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

MeasurementRecord simulate_counts(const PhotonStatistics& stats, std::int64_t n_events, int n_res,
                                  std::uint64_t seed) {
  if (n_events < 1) throw std::invalid_argument("simulate_counts: n_events must be >= 1");
  if (n_res < 0) throw std::invalid_argument("simulate_counts: n_res must be >= 0");

  std::mt19937_64 rng(mix_seed(seed));
  MeasurementRecord record;
  record.counts.assign(static_cast<std::size_t>(n_res) + 1, 0);
  record.total = n_events;
  record.alpha = stats.alpha;
  record.eta = stats.eta;
  record.seed = seed;

  // Sequential conditional binomials: bin n gets Bin(remaining, p_n / remaining_mass).
  std::int64_t remaining = n_events;
  double remaining_mass = 1.0;
  for (int n = 0; n <= n_res && remaining > 0; ++n) {
    const double p = n < static_cast<int>(stats.size()) ? std::max(0.0, stats.probabilities[n]) : 0.0;
    if (p <= 0.0) continue;
    const double q = remaining_mass > 0.0 ? std::min(1.0, p / remaining_mass) : 1.0;
    std::binomial_distribution<std::int64_t> draw(remaining, q);
    const std::int64_t k = draw(rng);
    record.counts[static_cast<std::size_t>(n)] = k;
    remaining -= k;
    remaining_mass -= p;
  }
  record.overflow = remaining;
  return record;
}

ProbabilityEstimate estimate_probabilities(const MeasurementRecord& record) {
  record.validate();
  const auto bins = record.counts.size();
  const double total = static_cast<double>(record.total);
  std::vector<double> p(bins);
  for (std::size_t n = 0; n < bins; ++n) p[n] = static_cast<double>(record.counts[n]) / total;

  Eigen::MatrixXd cov(static_cast<Eigen::Index>(bins), static_cast<Eigen::Index>(bins));
  for (std::size_t m = 0; m < bins; ++m) {
    for (std::size_t n = 0; n < bins; ++n) {
      cov(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
          p[n] * ((m == n ? 1.0 : 0.0) - p[m]) / total;
    }
  }
  PhotonStatistics stats{std::move(p), record.alpha, record.eta, record.overflow_fraction()};
  return {std::move(stats), std::move(cov)};
}

double witness_variance(const PhotonStatistics& stats, const WitnessKernel& kernel,
                        std::int64_t n_events, int n_res) {
  if (n_events < 1) throw std::invalid_argument("witness_variance: n_events must be >= 1");
  if (kernel.n_max() < n_res) throw std::invalid_argument("witness_variance: kernel shorter than n_res");
  const auto last = std::min<std::size_t>(stats.size(), static_cast<std::size_t>(n_res) + 1);
  double first = 0.0;
  double second = 0.0;
  for (std::size_t n = 0; n < last; ++n) {
    const double pw = stats.probabilities[n] * kernel[static_cast<int>(n)];
    first += pw;
    second += pw * kernel[static_cast<int>(n)];
  }
  return std::max(0.0, (second - first * first) / static_cast<double>(n_events));
}

std::optional<double> significance(double expectation, double systematic, double variance) {
  if (!(variance > 0.0)) return std::nullopt;
  return (expectation + systematic) / std::sqrt(variance);
}

namespace {

std::string format_double(double v) {
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

std::int64_t parse_count(const std::string& text, int line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::runtime_error("line " + std::to_string(line) + ": invalid integer '" + text + "'");
  }
  return v;
}

double parse_real(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::runtime_error("metadata '" + key + "': invalid number '" + text + "'");
  }
  return v;
}

}  // namespace

void write_record_csv(std::ostream& os, const MeasurementRecord& record) {
  os << "# ncwit " << kVersion << " measurement record\n";
  os << "# total," << record.total << '\n';
  os << "# alpha_re," << format_double(record.alpha.real()) << '\n';
  os << "# alpha_im," << format_double(record.alpha.imag()) << '\n';
  os << "# eta," << format_double(record.eta) << '\n';
  os << "# seed," << record.seed << '\n';
  os << "n,count\n";
  for (std::size_t n = 0; n < record.counts.size(); ++n) os << n << ',' << record.counts[n] << '\n';
  os << "overflow," << record.overflow << '\n';
}

MeasurementRecord read_record_csv(std::istream& is) {
  MeasurementRecord record;
  std::map<std::string, std::string> meta;
  bool header_seen = false;
  bool overflow_seen = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      const auto comma = body.find(',');
      if (comma != std::string::npos) meta[trim(body.substr(0, comma))] = trim(body.substr(comma + 1));
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 'n,count'");
    }
    const std::string key = trim(line.substr(0, comma));
    const std::string value = trim(line.substr(comma + 1));
    if (!header_seen) {
      if (key != "n" || value != "count") {
        throw std::runtime_error("line " + std::to_string(line_no) + ": expected header 'n,count'");
      }
      header_seen = true;
      continue;
    }
    if (overflow_seen) throw std::runtime_error("line " + std::to_string(line_no) + ": data after overflow row");
    if (key == "overflow") {
      record.overflow = parse_count(value, line_no);
      overflow_seen = true;
      continue;
    }
    const std::int64_t n = parse_count(key, line_no);
    if (n != static_cast<std::int64_t>(record.counts.size())) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": photon numbers must run 0,1,2,...");
    }
    record.counts.push_back(parse_count(value, line_no));
  }
  if (!header_seen) throw std::runtime_error("missing 'n,count' header");
  if (!overflow_seen) throw std::runtime_error("missing overflow row");
  if (!meta.count("total")) throw std::runtime_error("missing metadata 'total'");

  record.total = parse_count(meta["total"], 0);
  const double re = meta.count("alpha_re") ? parse_real(meta["alpha_re"], "alpha_re") : 0.0;
  const double im = meta.count("alpha_im") ? parse_real(meta["alpha_im"], "alpha_im") : 0.0;
  record.alpha = {re, im};
  record.eta = meta.count("eta") ? parse_real(meta["eta"], "eta") : 1.0;
  if (meta.count("seed")) {
    try {
      record.seed = std::stoull(meta["seed"]);
    } catch (const std::exception&) {
      throw std::runtime_error("metadata 'seed': invalid integer");
    }
  }
  try {
    record.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
  return record;
}

}  // namespace ncwit
