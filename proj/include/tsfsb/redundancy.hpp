#ifndef TSFSB_REDUNDANCY_HPP
#define TSFSB_REDUNDANCY_HPP

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

#include "tsfsb/feature_matrix.hpp"

namespace tsfsb {

struct PcaResult {
  std::string set_id;
  /// Explained-variance fractions, non-increasing, summing to 1.
  Eigen::VectorXd explained_ratio;
  /// min(n_series, n_features).
  Eigen::Index total_components = 0;
};

/// PCA by SVD of the column-centered data (no re-scaling). Throws
/// PipelineOrderError when values are missing and DomainError when every
/// column is constant.
PcaResult pca(const FeatureMatrix& m);
PcaResult pca(const Eigen::Ref<const Eigen::MatrixXd>& data, std::string set_id = {});

/// Points (k / total_components, cumulative ratio) for k = 1..total.
std::vector<std::pair<double, double>> cumvar_curve(const PcaResult& r);

struct ThresholdSummary {
  Eigen::Index k_star;
  Eigen::Index total_components;
  double proportion;
};

ThresholdSummary pcs_for_threshold(const PcaResult& r, double threshold = 0.90);

/// Smallest k with cumulative explained ratio >= threshold, over total_components.
double prop_pcs_for_threshold(const PcaResult& r, double threshold = 0.90);

}  // namespace tsfsb

#endif  // TSFSB_REDUNDANCY_HPP
