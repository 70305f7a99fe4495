#ifndef TSFSB_FEATURES_HPP
#define TSFSB_FEATURES_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsfsb/feature_matrix.hpp"
#include "tsfsb/timeseries.hpp"

namespace tsfsb {

enum class FeatureKind { Distribution, Autocorrelation, Spectral, Stationarity, Other };

std::string_view to_string(FeatureKind kind);

struct FeatureDescriptor {
  std::string set_id;
  std::string name;
  FeatureKind kind;
};

/// Feature values for one series, in catalog order. NaN marks a feature that
/// did not compute; it is never dropped.
struct FeatureVector {
  std::string series_id;
  std::string set_id;
  std::vector<std::string> names;
  Eigen::VectorXd values;

  std::optional<double> get(std::string_view name) const;
  std::size_t n_ok() const;
};

inline constexpr std::string_view kDistilledSet = "distilled-22";
inline constexpr std::string_view kFftRawSet = "fft-raw";
inline constexpr std::size_t kDistilledMinLength = 20;

std::vector<std::string> builtin_sets();

/// min(floor(length / 2), 100).
std::size_t default_k_max(std::size_t length);

/// Catalog for a built-in set; fft-raw needs `k_max`. Throws ConfigError for
/// an unknown set.
std::vector<FeatureDescriptor> catalog(std::string_view set_id, std::size_t k_max = 100);

/// Sample autocorrelation; NaN for a constant series. DomainError if lag >= length.
double acf(const TimeSeries& ts, std::size_t lag);

/// Full-length discrete Fourier transform X_k = sum_n x_n exp(-2 pi i k n / N).
Eigen::VectorXcd full_dft(const Eigen::Ref<const Eigen::VectorXd>& x);

/// First k_max unnormalized DFT coefficients. Requires 1 <= k_max <= N / 2.
Eigen::VectorXcd dft_coefficients(const TimeSeries& ts, std::size_t k_max);

FeatureVector compute_distilled(const TimeSeries& ts);

/// Re, Im, |.| and arg of X_0 .. X_{k_max-1}, interleaved per coefficient.
FeatureVector compute_fft_raw(const TimeSeries& ts, std::size_t k_max);

struct ExtractParams {
  /// fft-raw only; default_k_max(shortest series) when unset.
  std::optional<std::size_t> k_max;
  std::size_t threads = 1;
};

/// One series through a built-in set. A series the set cannot handle yields
/// an all-missing vector rather than an exception.
FeatureVector extract_series(std::string_view set_id, const TimeSeries& ts, std::size_t k_max);

/// Rows follow corpus order, columns follow catalog order.
FeatureMatrix extract_set(std::string_view set_id, const Corpus& corpus,
                          const ExtractParams& params = {});

}  // namespace tsfsb

#endif  // TSFSB_FEATURES_HPP
