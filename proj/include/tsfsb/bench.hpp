#ifndef TSFSB_BENCH_HPP
#define TSFSB_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tsfsb/timeseries.hpp"

namespace tsfsb {

enum class BenchGenerator { GaussianNoise, NoisySine };

struct BenchmarkPlan {
  std::vector<std::string> set_ids;
  std::vector<std::size_t> lengths{100, 250, 500, 750, 1000};
  std::size_t repeats = 10;
  BenchGenerator generator = BenchGenerator::GaussianNoise;
  std::uint64_t seed = 0;
  /// fft-raw coefficient count; default_k_max(length) when unset.
  std::optional<std::size_t> k_max;

  void validate() const;
};

/// One timed extraction. `ok` is false when extraction threw.
struct BenchRepeat {
  std::size_t repeat = 0;
  double wall_time_s = 0.0;
  std::size_t n_features_ok = 0;
  bool ok = true;
};

struct BenchCell {
  std::string set_id;
  std::size_t length = 0;
  std::vector<BenchRepeat> repeats;

  // derived from `repeats` by summarize()
  double median_s = 0.0;
  double iqr_s = 0.0;
  std::size_t successful_feature_count = 0;
  double per_feature_median_s = 0.0;
  bool benchable = true;

  /// Recomputes the summary fields from the raw repeats.
  void summarize();
};

struct BenchResult {
  std::vector<BenchCell> cells;
};

/// Median wall time divided by the successfully computed feature count.
double per_feature_time(double median_s, std::size_t successful_features);

/// Extraction under test: returns the number of non-missing features.
using Extractor = std::function<std::size_t(const std::string& set_id, const TimeSeries& ts)>;

/// Built-in extractor for distilled-22 / fft-raw.
Extractor builtin_extractor(std::optional<std::size_t> k_max = std::nullopt);

/// For each (set, length): one untimed warm-up, then `repeats` timed
/// extractions on fresh series (seeds derived from plan.seed). Only the
/// extraction call is inside the steady-clock region.
BenchResult run_benchmark(const BenchmarkPlan& plan, const Extractor& extract);
BenchResult run_benchmark(const BenchmarkPlan& plan);

/// Raw rows: set_id,length,repeat,wall_time_s,n_features_ok. Failed repeats
/// carry wall_time_s = NaN.
void write_bench_raw(const BenchResult& r, const std::filesystem::path& path,
                     const std::vector<std::string>& header = {});
/// Summary rows: set_id,length,median_s,iqr_s,per_feature_median_s.
void write_bench_summary(const BenchResult& r, const std::filesystem::path& path,
                         const std::vector<std::string>& header = {});

/// Rebuilds cells (and their summaries) from a raw CSV.
BenchResult read_bench_raw(const std::filesystem::path& path);

}  // namespace tsfsb

#endif  // TSFSB_BENCH_HPP
