#include "tsfsb/timeseries.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "tsfsb/csv_util.hpp"
#include "tsfsb/errors.hpp"
#include "tsfsb/rng.hpp"

namespace fs = std::filesystem;

namespace tsfsb {

std::string_view to_string(SeriesSource source) {
  switch (source) {
    case SeriesSource::GaussianNoise: return "gaussian-noise";
    case SeriesSource::NoisySine: return "noisy-sine";
    case SeriesSource::SyntheticCorpus: return "synthetic-corpus";
    case SeriesSource::Ingested: return "ingested";
  }
  return "unknown";
}

bool TimeSeries::valid() const { return values.size() >= 2 && values.allFinite(); }

bool Corpus::ids_unique() const {
  std::set<std::string_view> seen;
  for (const auto& s : series) {
    if (!seen.insert(s.id).second) return false;
  }
  return true;
}

void GeneratorConfig::validate() const {
  if (n < 2) throw ConfigError("generator: n must be at least 2");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd))
    throw ConfigError("generator: noise_sd must be finite and non-negative");
  if (!std::isfinite(amplitude) || !std::isfinite(angular_freq) || !std::isfinite(t_max))
    throw ConfigError("generator: amplitude, angular_freq and t_max must be finite");
}

TimeSeries gen_gaussian_noise(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  TimeSeries ts;
  ts.id = "gaussian-noise-n" + std::to_string(cfg.n) + "-s" + std::to_string(cfg.seed);
  ts.source = SeriesSource::GaussianNoise;
  ts.values.resize(static_cast<Eigen::Index>(cfg.n));
  for (auto& v : ts.values) v = cfg.noise_sd * rng.gaussian();
  return ts;
}

TimeSeries gen_noisy_sinusoid(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  TimeSeries ts;
  ts.id = "noisy-sine-n" + std::to_string(cfg.n) + "-s" + std::to_string(cfg.seed);
  ts.source = SeriesSource::NoisySine;
  const auto n = static_cast<Eigen::Index>(cfg.n);
  ts.values.resize(n);
  const double denom = static_cast<double>(cfg.n - 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = cfg.t_max * static_cast<double>(k) / denom;
    ts.values(k) = cfg.amplitude * std::sin(cfg.angular_freq * t) + cfg.noise_sd * rng.gaussian();
  }
  return ts;
}

namespace {

constexpr std::size_t kLogisticBurnIn = 100;
constexpr std::array<const char*, 5> kFamilies = {"noise", "sine", "ar1", "walk", "logistic"};

Eigen::VectorXd family_series(std::size_t family, Rng& rng, Eigen::Index n) {
  Eigen::VectorXd x(n);
  switch (family) {
    case 0:
      for (auto& v : x) v = rng.gaussian();
      break;
    case 1: {
      // frequency between 0.01 and 0.25 cycles per sample
      const double omega = 2.0 * std::numbers::pi * rng.uniform(0.01, 0.25);
      for (Eigen::Index t = 0; t < n; ++t)
        x(t) = 2.0 * std::sin(omega * static_cast<double>(t)) + rng.gaussian();
      break;
    }
    case 2: {
      const double phi = rng.uniform(-0.95, 0.95);
      x(0) = rng.gaussian() / std::sqrt(1.0 - phi * phi);
      for (Eigen::Index t = 1; t < n; ++t) x(t) = phi * x(t - 1) + rng.gaussian();
      break;
    }
    case 3: {
      double level = 0.0;
      for (auto& v : x) v = (level += rng.gaussian());
      break;
    }
    case 4: {
      const double r = rng.uniform(3.5, 4.0);
      double state = rng.uniform(0.1, 0.9);
      for (std::size_t i = 0; i < kLogisticBurnIn; ++i) state = r * state * (1.0 - state);
      for (auto& v : x) v = state = r * state * (1.0 - state);
      break;
    }
    default:
      throw ConfigError("unknown corpus family");
  }
  return x;
}

}  // namespace

Corpus gen_diverse_corpus(std::size_t count, std::uint64_t seed, std::size_t length) {
  if (count < 1) throw ConfigError("corpus: count must be at least 1");
  if (length < 2) throw ConfigError("corpus: length must be at least 2");
  Corpus corpus;
  corpus.name = "synthetic-s" + std::to_string(seed);
  corpus.series.reserve(count);
  const auto width = std::max<std::size_t>(4, std::to_string(count - 1).size());
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t family = i % kFamilies.size();
    Rng rng(derive_seed(seed, i));
    std::string index = std::to_string(i);
    index.insert(0, width - index.size(), '0');
    TimeSeries ts;
    ts.id = "syn" + index + "_" + kFamilies[family];
    // series arrive in arbitrary units: amplitude log-uniform over [0.1, 10]
    const double scale = std::pow(10.0, rng.uniform(-1.0, 1.0));
    ts.values = scale * family_series(family, rng, static_cast<Eigen::Index>(length));
    ts.source = SeriesSource::SyntheticCorpus;
    ts.family = kFamilies[family];
    corpus.series.push_back(std::move(ts));
  }
  return corpus;
}

TimeSeries truncate(const TimeSeries& ts, std::size_t max_len) {
  if (static_cast<std::size_t>(ts.values.size()) <= max_len) return ts;
  TimeSeries out = ts;
  out.values = ts.values.head(static_cast<Eigen::Index>(max_len)).eval();
  return out;
}

namespace {

// Returns an empty optional and fills `why` when the file is not a valid series.
std::optional<std::vector<double>> read_series_file(const fs::path& file, std::string& why) {
  std::ifstream in(file);
  if (!in) {
    why = "cannot open";
    return std::nullopt;
  }
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = csv::trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::string normalized(body);
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::replace(normalized.begin(), normalized.end(), '\t', ' ');
    std::istringstream tokens(normalized);
    std::string token;
    while (tokens >> token) {
      const auto v = csv::parse_double(token);
      if (!v) {
        why = "line " + std::to_string(line_no) + ": unparseable value '" + token + "'";
        return std::nullopt;
      }
      if (!std::isfinite(*v)) {
        why = "line " + std::to_string(line_no) + ": non-finite value '" + token + "'";
        return std::nullopt;
      }
      values.push_back(*v);
    }
  }
  if (values.size() < 2) {
    why = "fewer than 2 samples";
    return std::nullopt;
  }
  return values;
}

}  // namespace

Corpus load_corpus(const fs::path& dir, std::vector<std::string>& warnings,
                   const LoadOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("corpus path is not a readable directory: " + dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list corpus directory " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());

  Corpus corpus;
  corpus.name = dir.filename().empty() ? dir.parent_path().filename().string() : dir.filename().string();
  std::set<std::string> used;
  for (const auto& file : files) {
    std::string why;
    auto values = read_series_file(file, why);
    if (!values) {
      warnings.push_back("skipped " + file.filename().string() + ": " + why);
      continue;
    }
    std::string id = file.stem().string();
    if (used.count(id)) {
      int suffix = 2;
      while (used.count(id + "_" + std::to_string(suffix))) ++suffix;
      id += "_" + std::to_string(suffix);
    }
    used.insert(id);
    TimeSeries ts;
    ts.id = std::move(id);
    ts.source = SeriesSource::Ingested;
    ts.values = Eigen::Map<const Eigen::VectorXd>(values->data(),
                                                  static_cast<Eigen::Index>(values->size()));
    corpus.series.push_back(truncate(ts, options.max_len));
  }
  if (corpus.series.empty()) throw EmptyCorpusError("no parseable series in " + dir.string());
  return corpus;
}

void write_corpus(const Corpus& corpus, const fs::path& dir, const std::vector<std::string>& header) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& ts : corpus.series) {
    const auto path = dir / (ts.id + ".txt");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto& h : header) out << "# " << h << '\n';
    for (double v : ts.values) out << csv::format_double(v) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
  }
}

}  // namespace tsfsb
