#ifndef TSFSB_STATS_HPP
#define TSFSB_STATS_HPP

// Scalar-generic statistics kernels over Eigen dense expressions.
//
// Every function accepts any Eigen::DenseBase expression (vectors, column
// blocks, mapped buffers) and returns the expression's Scalar. Missing values
// are represented as quiet NaN throughout the toolkit; these kernels assume
// complete input unless stated otherwise.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "tsfsb/errors.hpp"

namespace tsfsb::stats {

template <typename Scalar>
constexpr Scalar missing() {
  return std::numeric_limits<Scalar>::quiet_NaN();
}

template <typename Scalar>
bool is_missing(Scalar x) {
  return std::isnan(x);
}

/// True when every element equals the first one exactly (or size < 2).
template <typename Derived>
bool is_constant(const Eigen::DenseBase<Derived>& xs) {
  if (xs.size() < 2) return true;
  return (xs.derived().array() == xs.derived().coeff(0)).all();
}

template <typename Derived>
typename Derived::Scalar mean(const Eigen::DenseBase<Derived>& xs) {
  using Scalar = typename Derived::Scalar;
  if (xs.size() == 0) return missing<Scalar>();
  return xs.sum() / static_cast<Scalar>(xs.size());
}

/// Sample standard deviation (n - 1 denominator), two-pass.
template <typename Derived>
typename Derived::Scalar sample_std(const Eigen::DenseBase<Derived>& xs) {
  using Scalar = typename Derived::Scalar;
  const auto n = xs.size();
  if (n < 2) return missing<Scalar>();
  const Scalar m = mean(xs);
  const Scalar ss = (xs.derived().array() - m).square().sum();
  return std::sqrt(ss / static_cast<Scalar>(n - 1));
}

/// Population central moment (1/n) sum (x - mean)^order.
template <typename Derived>
typename Derived::Scalar central_moment(const Eigen::DenseBase<Derived>& xs, int order) {
  using Scalar = typename Derived::Scalar;
  const Scalar m = mean(xs);
  return (xs.derived().array() - m).pow(static_cast<Scalar>(order)).sum() /
         static_cast<Scalar>(xs.size());
}

/// Quantile by linear interpolation between order statistics at
/// h = (n - 1) p on the sorted sample (Hyndman-Fan type 7).
template <typename Derived>
typename Derived::Scalar quantile(const Eigen::DenseBase<Derived>& xs, double p) {
  using Scalar = typename Derived::Scalar;
  if (xs.size() == 0) throw DomainError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level outside [0, 1]");
  std::vector<Scalar> sorted(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) sorted[i] = xs.derived().coeff(i);
  std::sort(sorted.begin(), sorted.end());
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const Scalar frac = static_cast<Scalar>(h - static_cast<double>(lo));
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

template <typename Derived>
typename Derived::Scalar median(const Eigen::DenseBase<Derived>& xs) {
  return quantile(xs, 0.5);
}

template <typename Derived>
typename Derived::Scalar iqr(const Eigen::DenseBase<Derived>& xs) {
  return quantile(xs, 0.75) - quantile(xs, 0.25);
}

template <typename Scalar>
Scalar quantile(const std::vector<Scalar>& xs, double p) {
  return quantile(Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>(
                      xs.data(), static_cast<Eigen::Index>(xs.size())),
                  p);
}

/// Average ranks (1-based): tied values share the mean of their positional
/// ranks, so every rank is a multiple of 1/2.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> average_ranks(
    const Eigen::DenseBase<Derived>& xs) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = xs.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& d = xs.derived();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return d.coeff(a) < d.coeff(b); });
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i + 1;
    while (j < n && d.coeff(order[j]) == d.coeff(order[i])) ++j;
    // positions i..j-1 hold 1-based ranks i+1..j
    const Scalar shared = static_cast<Scalar>(i + 1 + j) / Scalar(2);
    for (Eigen::Index k = i; k < j; ++k) ranks(order[k]) = shared;
    i = j;
  }
  return ranks;
}

/// Pearson correlation. Missing (NaN) when either input is constant.
/// Computed as cov / sqrt(var_x var_y) so that identical inputs give exactly 1.
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar pearson(const Eigen::DenseBase<DerivedX>& x,
                                  const Eigen::DenseBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  if (x.size() != y.size()) throw DomainError("pearson: length mismatch");
  const auto xc = (x.derived().array() - mean(x)).eval();
  const auto yc = (y.derived().array() - mean(y)).eval();
  const Scalar sxx = xc.square().sum();
  const Scalar syy = yc.square().sum();
  if (sxx == Scalar(0) || syy == Scalar(0)) return missing<Scalar>();
  const Scalar r = (xc * yc).sum() / std::sqrt(sxx * syy);
  return std::clamp(r, Scalar(-1), Scalar(1));
}

/// Spearman rank correlation: Pearson correlation of average ranks.
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar spearman(const Eigen::DenseBase<DerivedX>& x,
                                   const Eigen::DenseBase<DerivedY>& y) {
  if (x.size() != y.size()) throw DomainError("spearman: length mismatch");
  if (x.size() < 3) throw DomainError("spearman: need at least 3 observations");
  return pearson(average_ranks(x), average_ranks(y));
}

/// Sample autocorrelation at `lag`:
///   r(lag) = sum_{t<N-lag} (x_t - m)(x_{t+lag} - m) / sum_t (x_t - m)^2
/// Missing for a constant series.
template <typename Derived>
typename Derived::Scalar acf(const Eigen::DenseBase<Derived>& xs, Eigen::Index lag) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = xs.size();
  if (lag < 0 || lag >= n) throw DomainError("acf: lag must satisfy 0 <= lag < length");
  if (is_constant(xs)) return missing<Scalar>();
  const auto centered = (xs.derived().array() - mean(xs)).eval();
  const Scalar denom = centered.square().sum();
  const Scalar num = (centered.head(n - lag) * centered.tail(n - lag)).sum();
  return num / denom;
}

}  // namespace tsfsb::stats

#endif  // TSFSB_STATS_HPP
