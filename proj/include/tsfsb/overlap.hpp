#ifndef TSFSB_OVERLAP_HPP
#define TSFSB_OVERLAP_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tsfsb/feature_matrix.hpp"

namespace tsfsb {

/// Columns replaced by their centered average ranks, with per-column sums of
/// squares. Ranks are multiples of 1/2, so rank dot products are exact.
struct RankedColumns {
  Eigen::MatrixXd centered_ranks;
  Eigen::VectorXd sum_squares;

  static RankedColumns from(const FeatureMatrix& m);
};

struct CorrelationGrid {
  /// |rho| for (test feature, benchmark feature).
  Eigen::MatrixXd abs_rho;
  /// One entry per column pair involving a constant column (recorded as 0).
  std::vector<std::string> warnings;
};

/// |Spearman| between every test column and every benchmark column.
/// Throws AlignmentError unless both matrices list identical series.
CorrelationGrid cross_correlation(const FeatureMatrix& test, const FeatureMatrix& benchmark,
                                  std::size_t threads = 1);

struct OverlapResult {
  std::string test_set;
  std::string benchmark_set;
  std::vector<std::string> test_features;
  Eigen::VectorXd rho_max;
  /// Benchmark column attaining rho_max for each test feature.
  std::vector<Eigen::Index> best_match;
  double S = 0.0;
  std::vector<std::string> warnings;
};

/// Directed overlap: S(T|B) is the mean over test features of the maximum
/// absolute Spearman correlation with any benchmark feature.
OverlapResult overlap_S(const FeatureMatrix& test, const FeatureMatrix& benchmark,
                        std::size_t threads = 1);

struct OverlapMatrix {
  std::vector<std::string> set_ids;
  /// Row = benchmark set, column = test set.
  Eigen::MatrixXd S;
  std::vector<std::string> warnings;
};

OverlapMatrix pairwise_overlap(const std::vector<FeatureMatrix>& matrices, std::size_t threads = 1);

/// Test features with rho_max strictly below `cutoff`, ascending.
std::vector<std::pair<std::string, double>> least_matched(const OverlapResult& r, double cutoff = 0.2);
std::vector<std::pair<std::string, double>> least_matched(const FeatureMatrix& test,
                                                          const FeatureMatrix& benchmark,
                                                          double cutoff = 0.2, std::size_t threads = 1);

}  // namespace tsfsb

#endif  // TSFSB_OVERLAP_HPP
