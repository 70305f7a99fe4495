#ifndef TSFSB_TIMESERIES_HPP
#define TSFSB_TIMESERIES_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace tsfsb {

enum class SeriesSource { GaussianNoise, NoisySine, SyntheticCorpus, Ingested };

std::string_view to_string(SeriesSource source);

/// A uniformly sampled univariate series. Valid series have at least two
/// samples and only finite values.
struct TimeSeries {
  std::string id;
  Eigen::VectorXd values;
  SeriesSource source = SeriesSource::Ingested;
  /// Generator family for synthetic-corpus members (e.g. "ar1"); empty otherwise.
  std::string family;

  Eigen::Index size() const { return values.size(); }
  bool valid() const;
};

struct Corpus {
  std::string name;
  std::vector<TimeSeries> series;

  std::size_t size() const { return series.size(); }
  bool ids_unique() const;
};

struct GeneratorConfig {
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  double noise_sd = 1.0;
  double amplitude = 2.0;
  double angular_freq = 2.0;
  double t_max = 3.0 * std::numbers::pi;

  void validate() const;
};

/// n i.i.d. draws from N(0, noise_sd^2).
TimeSeries gen_gaussian_noise(const GeneratorConfig& cfg);

/// x_k = amplitude sin(angular_freq t_k) + eps_k on the inclusive grid
/// t_k = t_max k / (n - 1).
TimeSeries gen_noisy_sinusoid(const GeneratorConfig& cfg);

/// Synthetic stand-in for a diverse real-world collection. Members cycle
/// through five families in equal proportion: white noise, noisy sinusoid of
/// random frequency, AR(1) with phi in (-0.95, 0.95), Gaussian random walk,
/// and logistic-map trajectory with r in [3.5, 4] after a 100-step burn-in.
/// Each member is then scaled by an amplitude drawn log-uniformly from
/// [0.1, 10].
Corpus gen_diverse_corpus(std::size_t count, std::uint64_t seed, std::size_t length);

inline constexpr std::size_t kDefaultMaxLength = 1000;

/// First `max_len` samples when longer, otherwise unchanged.
TimeSeries truncate(const TimeSeries& ts, std::size_t max_len = kDefaultMaxLength);

struct LoadOptions {
  std::size_t max_len = kDefaultMaxLength;
};

/// Reads a directory of plain-text series (one file per series, one value per
/// line, '#' comments). Rejected files are skipped and described in
/// `warnings`. Throws IoError for an unreadable path and EmptyCorpusError
/// when nothing could be loaded.
Corpus load_corpus(const std::filesystem::path& dir, std::vector<std::string>& warnings,
                   const LoadOptions& options = {});

/// Writes one `<id>.txt` per series; `header` lines are emitted as '#' comments.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir,
                  const std::vector<std::string>& header = {});

}  // namespace tsfsb

#endif  // TSFSB_TIMESERIES_HPP
