#ifndef TSFSB_FEATURE_MATRIX_HPP
#define TSFSB_FEATURE_MATRIX_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsfsb {

/// Series x features table. Missing entries are quiet NaN.
struct FeatureMatrix {
  std::string set_id;
  std::vector<std::string> series_ids;
  std::vector<std::string> feature_names;
  Eigen::MatrixXd values;
  bool normalized = false;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }

  /// Throws SchemaError on dimension mismatch or duplicate ids/names.
  void validate() const;

  std::size_t missing_count() const;
  bool complete() const { return missing_count() == 0; }

  /// Index of `name` in feature_names, or -1.
  Eigen::Index column_index(std::string_view name) const;

  FeatureMatrix select_columns(const std::vector<Eigen::Index>& cols) const;
  FeatureMatrix select_rows(const std::vector<Eigen::Index>& rows) const;
};

bool operator==(const FeatureMatrix& a, const FeatureMatrix& b);

/// Column-wise (x - mean) / sd over present entries, sample sd. Zero-variance
/// columns become all-missing. Throws StateError when already normalized.
FeatureMatrix zscore_columns(const FeatureMatrix& m);

struct FilterReport {
  struct DroppedFeature {
    std::string set_id;
    std::string name;
    double missing_fraction;
  };
  struct DroppedSeries {
    std::string id;
    std::size_t offending_features;       // summed over sets
    std::vector<std::string> offending_sets;
  };
  struct Shape {
    std::string set_id;
    Eigen::Index n_series;
    Eigen::Index n_features;
  };

  double max_missing = 0.10;
  std::vector<DroppedFeature> dropped_features;
  std::vector<DroppedSeries> dropped_series;
  std::vector<Shape> retained_shape;
};

inline constexpr double kDefaultMaxMissing = 0.10;

/// Keeps columns whose missing fraction is strictly below `max_missing`.
/// Requires a normalized matrix (PipelineOrderError otherwise).
std::pair<FeatureMatrix, FilterReport> filter_features(const FeatureMatrix& m,
                                                       double max_missing = kDefaultMaxMissing);

/// Drops every series with at least one missing value in any matrix, from all
/// matrices. Throws AlignmentError unless all series_ids lists are identical.
std::pair<std::vector<FeatureMatrix>, FilterReport> filter_series(
    const std::vector<FeatureMatrix>& matrices);

/// zscore -> filter_features -> filter_series over aligned matrices.
std::pair<std::vector<FeatureMatrix>, FilterReport> run_pipeline(
    const std::vector<FeatureMatrix>& raw, double max_missing = kDefaultMaxMissing);

}  // namespace tsfsb

#endif  // TSFSB_FEATURE_MATRIX_HPP
