#include "tsfsb/features.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "tsfsb/errors.hpp"
#include "tsfsb/parallel.hpp"
#include "tsfsb/stats.hpp"

namespace tsfsb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct DistilledEntry {
  const char* name;
  FeatureKind kind;
};

constexpr DistilledEntry kDistilled[] = {
    {"mean", FeatureKind::Distribution},
    {"std", FeatureKind::Distribution},
    {"skewness", FeatureKind::Distribution},
    {"kurtosis", FeatureKind::Distribution},
    {"min", FeatureKind::Distribution},
    {"max", FeatureKind::Distribution},
    {"median", FeatureKind::Distribution},
    {"iqr", FeatureKind::Distribution},
    {"acf_lag1", FeatureKind::Autocorrelation},
    {"acf_lag2", FeatureKind::Autocorrelation},
    {"acf_first_zero", FeatureKind::Autocorrelation},
    {"acf_first_1e", FeatureKind::Autocorrelation},
    {"zero_crossing_rate", FeatureKind::Other},
    {"longest_run_above_mean", FeatureKind::Other},
    {"spectral_centroid", FeatureKind::Spectral},
    {"spectral_entropy", FeatureKind::Spectral},
    {"low_freq_power_fraction", FeatureKind::Spectral},
    {"time_reversal_asymmetry", FeatureKind::Other},
    {"trend_slope", FeatureKind::Stationarity},
    {"stat_av_10", FeatureKind::Stationarity},
    {"mean_abs_diff", FeatureKind::Other},
    {"frac_beyond_1sd", FeatureKind::Distribution},
};
constexpr std::size_t kDistilledCount = std::size(kDistilled);
static_assert(kDistilledCount == 22);

constexpr const char* kFftParts[] = {"re", "im", "abs", "arg"};

std::vector<std::string> distilled_names() {
  std::vector<std::string> names;
  for (const auto& e : kDistilled) names.emplace_back(e.name);
  return names;
}

std::vector<std::string> fft_raw_names(std::size_t k_max) {
  std::vector<std::string> names;
  names.reserve(4 * k_max);
  for (std::size_t k = 0; k < k_max; ++k)
    for (const char* part : kFftParts) names.push_back(std::string(part) + "_" + std::to_string(k));
  return names;
}

FeatureVector missing_vector(std::string_view set_id, const TimeSeries& ts,
                             std::vector<std::string> names) {
  FeatureVector fv;
  fv.series_id = ts.id;
  fv.set_id = std::string(set_id);
  fv.values = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(names.size()), kNaN);
  fv.names = std::move(names);
  return fv;
}

}  // namespace

std::string_view to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Distribution: return "distribution";
    case FeatureKind::Autocorrelation: return "autocorrelation";
    case FeatureKind::Spectral: return "spectral";
    case FeatureKind::Stationarity: return "stationarity";
    case FeatureKind::Other: return "other";
  }
  return "other";
}

std::optional<double> FeatureVector::get(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) {
      const double v = values(static_cast<Eigen::Index>(i));
      if (std::isnan(v)) return std::nullopt;
      return v;
    }
  }
  throw DomainError("feature '" + std::string(name) + "' not in set '" + set_id + "'");
}

std::size_t FeatureVector::n_ok() const {
  return static_cast<std::size_t>((!values.array().isNaN()).count());
}

std::vector<std::string> builtin_sets() { return {std::string(kDistilledSet), std::string(kFftRawSet)}; }

std::size_t default_k_max(std::size_t length) { return std::min<std::size_t>(length / 2, 100); }

std::vector<FeatureDescriptor> catalog(std::string_view set_id, std::size_t k_max) {
  std::vector<FeatureDescriptor> out;
  if (set_id == kDistilledSet) {
    for (const auto& e : kDistilled) out.push_back({std::string(set_id), e.name, e.kind});
  } else if (set_id == kFftRawSet) {
    for (auto& name : fft_raw_names(k_max))
      out.push_back({std::string(set_id), std::move(name), FeatureKind::Spectral});
  } else {
    throw ConfigError("unknown feature set '" + std::string(set_id) + "'");
  }
  return out;
}

double acf(const TimeSeries& ts, std::size_t lag) {
  return stats::acf(ts.values, static_cast<Eigen::Index>(lag));
}

Eigen::VectorXcd full_dft(const Eigen::Ref<const Eigen::VectorXd>& x) {
  // plan caches are per-object, so one transformer per thread
  if (x.size() <= 1) return x.cast<std::complex<double>>();
  thread_local Eigen::FFT<double> fft;
  std::vector<double> in(x.data(), x.data() + x.size());
  std::vector<std::complex<double>> out;
  fft.fwd(out, in);
  Eigen::VectorXcd result = Eigen::Map<Eigen::VectorXcd>(out.data(), static_cast<Eigen::Index>(out.size()));
  // DC term of real input is real; take it exactly
  result(0) = {x.sum(), 0.0};
  return result;
}

Eigen::VectorXcd dft_coefficients(const TimeSeries& ts, std::size_t k_max) {
  const auto half = static_cast<std::size_t>(ts.values.size()) / 2;
  if (k_max < 1 || k_max > half)
    throw DomainError("dft_coefficients: k_max must lie in [1, " + std::to_string(half) + "]");
  return full_dft(ts.values).head(static_cast<Eigen::Index>(k_max));
}

FeatureVector compute_distilled(const TimeSeries& ts) {
  const Eigen::VectorXd& x = ts.values;
  const Eigen::Index n = x.size();
  if (static_cast<std::size_t>(n) < kDistilledMinLength)
    throw DomainError("distilled-22 needs at least 20 samples, got " + std::to_string(n));

  FeatureVector fv;
  fv.series_id = ts.id;
  fv.set_id = std::string(kDistilledSet);
  fv.names = distilled_names();
  fv.values = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(kDistilledCount), kNaN);
  auto& out = fv.values;
  if (!x.allFinite()) return fv;

  const double nd = static_cast<double>(n);
  const bool constant = stats::is_constant(x);
  const double mean = stats::mean(x);
  const Eigen::ArrayXd centered = x.array() - mean;
  const double sd = constant ? 0.0 : stats::sample_std(x);

  out(0) = mean;
  out(1) = sd;
  if (!constant) {
    const double m2 = centered.square().mean();
    const double m3 = centered.cube().mean();
    const double m4 = centered.square().square().mean();
    out(2) = m3 / std::pow(m2, 1.5);
    out(3) = m4 / (m2 * m2) - 3.0;
  }
  out(4) = x.minCoeff();
  out(5) = x.maxCoeff();
  out(6) = stats::median(x);
  out(7) = stats::iqr(x);

  if (!constant) {
    const double denom = centered.square().sum();
    auto r = [&](Eigen::Index lag) {
      return (centered.head(n - lag) * centered.tail(n - lag)).sum() / denom;
    };
    out(8) = r(1);
    out(9) = r(2);
    const Eigen::Index bound = n / 2;
    for (Eigen::Index lag = 1; lag <= bound; ++lag) {
      if (r(lag) <= 0.0) {
        out(10) = static_cast<double>(lag);
        break;
      }
    }
    const double inv_e = std::exp(-1.0);
    for (Eigen::Index lag = 1; lag <= bound; ++lag) {
      if (r(lag) < inv_e) {
        out(11) = static_cast<double>(lag);
        break;
      }
    }

    Eigen::Index crossings = 0;
    for (Eigen::Index t = 0; t + 1 < n; ++t)
      if (centered(t) * centered(t + 1) < 0.0) ++crossings;
    out(12) = static_cast<double>(crossings) / (nd - 1.0);
  }

  Eigen::Index longest = 0;
  if (!constant) {
    Eigen::Index run = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
      run = x(t) > mean ? run + 1 : 0;
      longest = std::max(longest, run);
    }
  }
  out(13) = static_cast<double>(longest) / nd;

  if (!constant) {
    const Eigen::VectorXcd spectrum = full_dft(x);
    const Eigen::Index half = n / 2;
    const Eigen::ArrayXd power = spectrum.segment(1, half).cwiseAbs2().array();
    const double total = power.sum();
    if (total > 0.0) {
      const Eigen::ArrayXd freq = Eigen::ArrayXd::LinSpaced(half, 1.0, static_cast<double>(half)) / nd;
      out(14) = (freq * power).sum() / total;
      const Eigen::ArrayXd p = power / total;
      const double h = -(p > 0.0).select(p * p.log(), 0.0).sum();
      out(15) = h / std::log(static_cast<double>(half));
      out(16) = power.head(std::max<Eigen::Index>(1, half / 5)).sum() / total;
    }
  }

  const Eigen::VectorXd diffs = x.tail(n - 1) - x.head(n - 1);
  if (!stats::is_constant(diffs)) {
    const double sd_diff = stats::sample_std(diffs);
    out(17) = diffs.array().cube().mean() / std::pow(sd_diff, 3.0);
  }

  {
    const double t_mean = (nd - 1.0) / 2.0;
    const Eigen::ArrayXd t = Eigen::ArrayXd::LinSpaced(n, 0.0, nd - 1.0) - t_mean;
    out(18) = constant ? 0.0 : (t * centered).sum() / t.square().sum();
  }

  if (!constant) {
    constexpr Eigen::Index kWindows = 10;
    const Eigen::Index width = n / kWindows;
    Eigen::VectorXd window_means(kWindows);
    for (Eigen::Index w = 0; w < kWindows; ++w) window_means(w) = x.segment(w * width, width).mean();
    out(19) = stats::sample_std(window_means) / sd;
  }

  out(20) = diffs.cwiseAbs().mean();

  if (!constant) out(21) = static_cast<double>((centered.abs() / sd > 1.0).count()) / nd;

  return fv;
}

FeatureVector compute_fft_raw(const TimeSeries& ts, std::size_t k_max) {
  if (!ts.values.allFinite()) {
    const auto half = static_cast<std::size_t>(ts.values.size()) / 2;
    if (k_max < 1 || k_max > half)
      throw DomainError("dft_coefficients: k_max must lie in [1, " + std::to_string(half) + "]");
    return missing_vector(kFftRawSet, ts, fft_raw_names(k_max));
  }
  const Eigen::VectorXcd coeffs = dft_coefficients(ts, k_max);
  // |X_k| <= sum |x_n|; anything below this fraction of the bound is rounding noise
  const double zero_tol = 1e-12 * ts.values.cwiseAbs().sum();

  FeatureVector fv;
  fv.series_id = ts.id;
  fv.set_id = std::string(kFftRawSet);
  fv.names = fft_raw_names(k_max);
  fv.values.resize(static_cast<Eigen::Index>(4 * k_max));
  for (std::size_t k = 0; k < k_max; ++k) {
    const auto c = coeffs(static_cast<Eigen::Index>(k));
    const auto base = static_cast<Eigen::Index>(4 * k);
    const double magnitude = std::abs(c);
    fv.values(base) = c.real();
    fv.values(base + 1) = c.imag();
    fv.values(base + 2) = magnitude;
    fv.values(base + 3) = magnitude <= zero_tol ? kNaN : std::arg(c);
  }
  return fv;
}

FeatureVector extract_series(std::string_view set_id, const TimeSeries& ts, std::size_t k_max) {
  if (set_id == kDistilledSet) {
    if (static_cast<std::size_t>(ts.size()) < kDistilledMinLength)
      return missing_vector(set_id, ts, distilled_names());
    return compute_distilled(ts);
  }
  if (set_id == kFftRawSet) {
    if (k_max < 1 || k_max > static_cast<std::size_t>(ts.size()) / 2)
      return missing_vector(set_id, ts, fft_raw_names(k_max));
    return compute_fft_raw(ts, k_max);
  }
  throw ConfigError("unknown feature set '" + std::string(set_id) + "'");
}

FeatureMatrix extract_set(std::string_view set_id, const Corpus& corpus, const ExtractParams& params) {
  std::size_t k_max = 0;
  if (set_id == kFftRawSet) {
    if (params.k_max) {
      k_max = *params.k_max;
    } else {
      std::size_t shortest = std::numeric_limits<std::size_t>::max();
      for (const auto& s : corpus.series) shortest = std::min(shortest, static_cast<std::size_t>(s.size()));
      k_max = corpus.series.empty() ? 1 : std::max<std::size_t>(1, default_k_max(shortest));
    }
    if (k_max < 1) throw ConfigError("fft-raw: k_max must be positive");
  }
  const auto descriptors = catalog(set_id, k_max);

  FeatureMatrix m;
  m.set_id = std::string(set_id);
  for (const auto& d : descriptors) m.feature_names.push_back(d.name);
  for (const auto& s : corpus.series) m.series_ids.push_back(s.id);
  m.values.resize(static_cast<Eigen::Index>(corpus.size()), static_cast<Eigen::Index>(descriptors.size()));

  parallel_for(corpus.size(), params.threads, [&](std::size_t i) {
    const auto fv = extract_series(set_id, corpus.series[i], k_max);
    m.values.row(static_cast<Eigen::Index>(i)) = fv.values.transpose();
  });
  return m;
}

}  // namespace tsfsb
