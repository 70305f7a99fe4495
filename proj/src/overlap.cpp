#include "tsfsb/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsfsb/errors.hpp"
#include "tsfsb/parallel.hpp"
#include "tsfsb/stats.hpp"

namespace tsfsb {

namespace {

void require_aligned(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.series_ids != b.series_ids)
    throw AlignmentError("matrices '" + a.set_id + "' and '" + b.set_id +
                         "' are not aligned to the same series");
}

void require_complete(const FeatureMatrix& m) {
  if (!m.complete())
    throw PipelineOrderError("matrix '" + m.set_id + "' has missing values; run the filter pipeline first");
}

CorrelationGrid correlate(const RankedColumns& test, const RankedColumns& bench,
                          const FeatureMatrix& tm, const FeatureMatrix& bm, std::size_t threads) {
  CorrelationGrid grid;
  const Eigen::Index p_t = test.centered_ranks.cols();
  const Eigen::Index p_b = bench.centered_ranks.cols();
  grid.abs_rho.resize(p_t, p_b);
  parallel_for(static_cast<std::size_t>(p_t), threads, [&](std::size_t ui) {
    const auto i = static_cast<Eigen::Index>(ui);
    const double ss_t = test.sum_squares(i);
    for (Eigen::Index j = 0; j < p_b; ++j) {
      const double ss_b = bench.sum_squares(j);
      if (ss_t == 0.0 || ss_b == 0.0) {
        grid.abs_rho(i, j) = 0.0;
        continue;
      }
      const double dot = test.centered_ranks.col(i).dot(bench.centered_ranks.col(j));
      grid.abs_rho(i, j) = std::min(1.0, std::abs(dot) / std::sqrt(ss_t * ss_b));
    }
  });
  for (Eigen::Index i = 0; i < p_t; ++i)
    if (test.sum_squares(i) == 0.0)
      grid.warnings.push_back("constant test column '" + tm.set_id + "." +
                              tm.feature_names[static_cast<std::size_t>(i)] + "': correlations recorded as 0");
  for (Eigen::Index j = 0; j < p_b; ++j)
    if (bench.sum_squares(j) == 0.0)
      grid.warnings.push_back("constant benchmark column '" + bm.set_id + "." +
                              bm.feature_names[static_cast<std::size_t>(j)] + "': correlations recorded as 0");
  return grid;
}

OverlapResult summarize(const CorrelationGrid& grid, const FeatureMatrix& test, const FeatureMatrix& bench) {
  OverlapResult r;
  r.test_set = test.set_id;
  r.benchmark_set = bench.set_id;
  r.test_features = test.feature_names;
  r.warnings = grid.warnings;
  const Eigen::Index p_t = grid.abs_rho.rows();
  r.rho_max = Eigen::VectorXd::Zero(p_t);
  r.best_match.assign(static_cast<std::size_t>(p_t), -1);
  for (Eigen::Index i = 0; i < p_t; ++i) {
    if (grid.abs_rho.cols() == 0) continue;
    Eigen::Index j = 0;
    r.rho_max(i) = grid.abs_rho.row(i).maxCoeff(&j);
    r.best_match[static_cast<std::size_t>(i)] = j;
  }
  r.S = p_t > 0 ? r.rho_max.mean() : 0.0;
  return r;
}

}  // namespace

RankedColumns RankedColumns::from(const FeatureMatrix& m) {
  RankedColumns rc;
  rc.centered_ranks.resize(m.rows(), m.cols());
  rc.sum_squares.resize(m.cols());
  const double centre = static_cast<double>(m.rows() + 1) / 2.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    rc.centered_ranks.col(j) = stats::average_ranks(m.values.col(j)).array() - centre;
    rc.sum_squares(j) = rc.centered_ranks.col(j).squaredNorm();
  }
  return rc;
}

CorrelationGrid cross_correlation(const FeatureMatrix& test, const FeatureMatrix& benchmark,
                                  std::size_t threads) {
  require_aligned(test, benchmark);
  require_complete(test);
  require_complete(benchmark);
  if (test.rows() < 3) throw DomainError("cross_correlation needs at least 3 series");
  return correlate(RankedColumns::from(test), RankedColumns::from(benchmark), test, benchmark, threads);
}

OverlapResult overlap_S(const FeatureMatrix& test, const FeatureMatrix& benchmark, std::size_t threads) {
  return summarize(cross_correlation(test, benchmark, threads), test, benchmark);
}

OverlapMatrix pairwise_overlap(const std::vector<FeatureMatrix>& matrices, std::size_t threads) {
  if (matrices.size() < 2) throw DomainError("pairwise_overlap needs at least two matrices");
  for (const auto& m : matrices) {
    require_aligned(matrices.front(), m);
    require_complete(m);
  }
  if (matrices.front().rows() < 3) throw DomainError("pairwise_overlap needs at least 3 series");

  std::vector<RankedColumns> ranked;
  ranked.reserve(matrices.size());
  for (const auto& m : matrices) ranked.push_back(RankedColumns::from(m));

  OverlapMatrix out;
  const auto k = static_cast<Eigen::Index>(matrices.size());
  out.S = Eigen::MatrixXd::Identity(k, k);
  for (const auto& m : matrices) out.set_ids.push_back(m.set_id);
  for (Eigen::Index b = 0; b < k; ++b) {
    for (Eigen::Index t = 0; t < k; ++t) {
      if (b == t) continue;  // every feature matches itself
      const auto& tm = matrices[static_cast<std::size_t>(t)];
      const auto& bm = matrices[static_cast<std::size_t>(b)];
      auto grid = correlate(ranked[static_cast<std::size_t>(t)], ranked[static_cast<std::size_t>(b)], tm, bm, threads);
      const auto r = summarize(grid, tm, bm);
      out.S(b, t) = r.S;
      out.warnings.insert(out.warnings.end(), r.warnings.begin(), r.warnings.end());
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> least_matched(const OverlapResult& r, double cutoff) {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < r.test_features.size(); ++i) {
    const double v = r.rho_max(static_cast<Eigen::Index>(i));
    if (v < cutoff) out.emplace_back(r.test_features[i], v);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

std::vector<std::pair<std::string, double>> least_matched(const FeatureMatrix& test,
                                                          const FeatureMatrix& benchmark, double cutoff,
                                                          std::size_t threads) {
  return least_matched(overlap_S(test, benchmark, threads), cutoff);
}

}  // namespace tsfsb
