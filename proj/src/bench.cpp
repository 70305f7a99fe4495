#include "tsfsb/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>

#include "tsfsb/csv_util.hpp"
#include "tsfsb/errors.hpp"
#include "tsfsb/features.hpp"
#include "tsfsb/rng.hpp"
#include "tsfsb/stats.hpp"

namespace fs = std::filesystem;

namespace tsfsb {

void BenchmarkPlan::validate() const {
  if (set_ids.empty()) throw ConfigError("bench: no feature sets given");
  if (lengths.empty()) throw ConfigError("bench: no lengths given");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 2) throw ConfigError("bench: lengths must be at least 2");
    if (i > 0 && lengths[i] <= lengths[i - 1]) throw ConfigError("bench: lengths must be strictly increasing");
  }
  if (repeats < 1) throw ConfigError("bench: repeats must be at least 1");
}

double per_feature_time(double median_s, std::size_t successful_features) {
  if (successful_features == 0) return std::numeric_limits<double>::quiet_NaN();
  return median_s / static_cast<double>(successful_features);
}

void BenchCell::summarize() {
  std::vector<double> times;
  std::size_t min_ok = std::numeric_limits<std::size_t>::max();
  for (const auto& r : repeats) {
    if (!r.ok) continue;
    times.push_back(r.wall_time_s);
    min_ok = std::min(min_ok, r.n_features_ok);
  }
  benchable = !times.empty();
  if (!benchable) {
    median_s = iqr_s = per_feature_median_s = std::numeric_limits<double>::quiet_NaN();
    successful_feature_count = 0;
    return;
  }
  median_s = stats::quantile(times, 0.5);
  iqr_s = stats::quantile(times, 0.75) - stats::quantile(times, 0.25);
  successful_feature_count = min_ok;
  per_feature_median_s = per_feature_time(median_s, successful_feature_count);
}

Extractor builtin_extractor(std::optional<std::size_t> k_max) {
  return [k_max](const std::string& set_id, const TimeSeries& ts) -> std::size_t {
    const std::size_t k = k_max.value_or(default_k_max(static_cast<std::size_t>(ts.size())));
    if (set_id == kDistilledSet) return compute_distilled(ts).n_ok();
    if (set_id == kFftRawSet) return compute_fft_raw(ts, k).n_ok();
    throw ConfigError("unknown feature set '" + set_id + "'");
  };
}

namespace {

TimeSeries bench_series(const BenchmarkPlan& plan, std::size_t length, std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.n = length;
  cfg.seed = seed;
  return plan.generator == BenchGenerator::GaussianNoise ? gen_gaussian_noise(cfg) : gen_noisy_sinusoid(cfg);
}

}  // namespace

BenchResult run_benchmark(const BenchmarkPlan& plan, const Extractor& extract) {
  plan.validate();
  BenchResult result;
  for (const auto& set_id : plan.set_ids) {
    for (std::size_t li = 0; li < plan.lengths.size(); ++li) {
      const std::size_t length = plan.lengths[li];
      BenchCell cell;
      cell.set_id = set_id;
      cell.length = length;

      try {
        (void)extract(set_id, bench_series(plan, length, derive_seed(plan.seed, ~std::uint64_t{0} - li)));
      } catch (const std::exception&) {
        // a failing warm-up shows up again in the timed repeats
      }

      for (std::size_t rep = 0; rep < plan.repeats; ++rep) {
        const auto ts = bench_series(plan, length, derive_seed(plan.seed, li * plan.repeats + rep));
        BenchRepeat r;
        r.repeat = rep;
        try {
          const auto start = std::chrono::steady_clock::now();
          const std::size_t ok = extract(set_id, ts);
          const auto stop = std::chrono::steady_clock::now();
          r.wall_time_s = std::chrono::duration<double>(stop - start).count();
          r.n_features_ok = ok;
        } catch (const std::exception&) {
          r.ok = false;
          r.wall_time_s = std::numeric_limits<double>::quiet_NaN();
          r.n_features_ok = 0;
        }
        cell.repeats.push_back(r);
      }
      cell.summarize();
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

BenchResult run_benchmark(const BenchmarkPlan& plan) {
  for (const auto& id : plan.set_ids) {
    if (id != kDistilledSet && id != kFftRawSet) throw ConfigError("bench: unknown feature set '" + id + "'");
  }
  return run_benchmark(plan, builtin_extractor(plan.k_max));
}

namespace {

std::ofstream open_out(const fs::path& path, const std::vector<std::string>& header) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& h : header) out << "# " << h << '\n';
  return out;
}

}  // namespace

void write_bench_raw(const BenchResult& r, const fs::path& path, const std::vector<std::string>& header) {
  auto out = open_out(path, header);
  out << "set_id,length,repeat,wall_time_s,n_features_ok\n";
  for (const auto& cell : r.cells)
    for (const auto& rep : cell.repeats)
      out << cell.set_id << ',' << cell.length << ',' << rep.repeat << ','
          << csv::format_double(rep.ok ? rep.wall_time_s : std::numeric_limits<double>::quiet_NaN()) << ','
          << rep.n_features_ok << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

void write_bench_summary(const BenchResult& r, const fs::path& path, const std::vector<std::string>& header) {
  auto out = open_out(path, header);
  out << "set_id,length,median_s,iqr_s,per_feature_median_s\n";
  for (const auto& cell : r.cells)
    out << cell.set_id << ',' << cell.length << ',' << csv::format_double(cell.median_s) << ','
        << csv::format_double(cell.iqr_s) << ',' << csv::format_double(cell.per_feature_median_s) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

BenchResult read_bench_raw(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  BenchResult result;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto cells = csv::split(line);
    if (cells.size() != 5) throw ParseError(path.string(), line_no, "expected 5 fields");
    const auto length = csv::parse_double(cells[1]);
    const auto rep = csv::parse_double(cells[2]);
    const auto time = csv::parse_double(cells[3]);
    const auto ok = csv::parse_double(cells[4]);
    if (!length || !rep || !time || !ok) throw ParseError(path.string(), line_no, "bad numeric field");
    const auto key = std::make_pair(cells[0], static_cast<std::size_t>(*length));
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, result.cells.size()).first;
      BenchCell cell;
      cell.set_id = key.first;
      cell.length = key.second;
      result.cells.push_back(std::move(cell));
    }
    BenchRepeat r;
    r.repeat = static_cast<std::size_t>(*rep);
    r.ok = !std::isnan(*time);
    r.wall_time_s = *time;
    r.n_features_ok = static_cast<std::size_t>(*ok);
    result.cells[it->second].repeats.push_back(r);
  }
  for (auto& cell : result.cells) cell.summarize();
  return result;
}

}  // namespace tsfsb
