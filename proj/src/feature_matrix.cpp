#include "tsfsb/feature_matrix.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "tsfsb/errors.hpp"

namespace tsfsb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_unique(const std::vector<std::string>& xs, const char* what) {
  std::set<std::string_view> seen;
  for (const auto& x : xs) {
    if (!seen.insert(x).second) throw SchemaError(std::string("duplicate ") + what + " '" + x + "'");
  }
}

}  // namespace

void FeatureMatrix::validate() const {
  if (values.rows() != static_cast<Eigen::Index>(series_ids.size()) ||
      values.cols() != static_cast<Eigen::Index>(feature_names.size()))
    throw SchemaError("matrix '" + set_id + "': grid shape does not match id/name lists");
  require_unique(series_ids, "series id");
  require_unique(feature_names, "feature column");
}

std::size_t FeatureMatrix::missing_count() const {
  return static_cast<std::size_t>(values.array().isNaN().count());
}

Eigen::Index FeatureMatrix::column_index(std::string_view name) const {
  for (std::size_t j = 0; j < feature_names.size(); ++j)
    if (feature_names[j] == name) return static_cast<Eigen::Index>(j);
  return -1;
}

FeatureMatrix FeatureMatrix::select_columns(const std::vector<Eigen::Index>& cols) const {
  FeatureMatrix out;
  out.set_id = set_id;
  out.series_ids = series_ids;
  out.normalized = normalized;
  out.values.resize(values.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out.feature_names.push_back(feature_names[static_cast<std::size_t>(cols[j])]);
    out.values.col(static_cast<Eigen::Index>(j)) = values.col(cols[j]);
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_rows(const std::vector<Eigen::Index>& rows) const {
  FeatureMatrix out;
  out.set_id = set_id;
  out.feature_names = feature_names;
  out.normalized = normalized;
  out.values.resize(static_cast<Eigen::Index>(rows.size()), values.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.series_ids.push_back(series_ids[static_cast<std::size_t>(rows[i])]);
    out.values.row(static_cast<Eigen::Index>(i)) = values.row(rows[i]);
  }
  return out;
}

bool operator==(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.set_id != b.set_id || a.series_ids != b.series_ids || a.feature_names != b.feature_names ||
      a.normalized != b.normalized || a.values.rows() != b.values.rows() ||
      a.values.cols() != b.values.cols())
    return false;
  // NaN compares equal to NaN here: both mean "missing"
  for (Eigen::Index j = 0; j < a.values.cols(); ++j)
    for (Eigen::Index i = 0; i < a.values.rows(); ++i) {
      const double x = a.values(i, j), y = b.values(i, j);
      if (std::isnan(x) != std::isnan(y)) return false;
      if (!std::isnan(x) && x != y) return false;
    }
  return true;
}

FeatureMatrix zscore_columns(const FeatureMatrix& m) {
  if (m.normalized) throw StateError("matrix '" + m.set_id + "' is already z-scored");
  FeatureMatrix out = m;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    auto col = out.values.col(j);
    const auto present = (!col.array().isNaN()).eval();
    const auto n = present.count();
    if (n < 2) {
      col.setConstant(kNaN);
      continue;
    }
    const double mean = present.select(col.array(), 0.0).sum() / static_cast<double>(n);
    const double ss = present.select((col.array() - mean).square(), 0.0).sum();
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0) || !std::isfinite(sd)) {
      col.setConstant(kNaN);
      continue;
    }
    col = (col.array() - mean) / sd;
  }
  out.normalized = true;
  return out;
}

std::pair<FeatureMatrix, FilterReport> filter_features(const FeatureMatrix& m, double max_missing) {
  if (!(max_missing > 0.0 && max_missing <= 1.0))
    throw ConfigError("max_missing must lie in (0, 1]");
  if (!m.normalized)
    throw PipelineOrderError("filter_features expects a z-scored matrix ('" + m.set_id + "')");
  FilterReport report;
  report.max_missing = max_missing;
  std::vector<Eigen::Index> keep;
  const double n = static_cast<double>(m.rows());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const auto missing = static_cast<double>(m.values.col(j).array().isNaN().count());
    const double fraction = m.rows() > 0 ? missing / n : 0.0;
    if (fraction < max_missing) {
      keep.push_back(j);
    } else {
      report.dropped_features.push_back(
          {m.set_id, m.feature_names[static_cast<std::size_t>(j)], fraction});
    }
  }
  FeatureMatrix out = m.select_columns(keep);
  report.retained_shape.push_back({out.set_id, out.rows(), out.cols()});
  return {std::move(out), std::move(report)};
}

std::pair<std::vector<FeatureMatrix>, FilterReport> filter_series(
    const std::vector<FeatureMatrix>& matrices) {
  FilterReport report;
  if (matrices.empty()) return {{}, report};
  const auto& ids = matrices.front().series_ids;
  for (const auto& m : matrices) {
    if (m.series_ids != ids)
      throw AlignmentError("matrix '" + m.set_id + "' is not aligned with '" +
                           matrices.front().set_id + "' (series ids differ)");
  }

  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    FilterReport::DroppedSeries dropped{ids[i], 0, {}};
    for (const auto& m : matrices) {
      const auto bad = static_cast<std::size_t>(m.values.row(row).array().isNaN().count());
      if (bad > 0) {
        dropped.offending_features += bad;
        dropped.offending_sets.push_back(m.set_id);
      }
    }
    if (dropped.offending_sets.empty()) {
      keep.push_back(row);
    } else {
      report.dropped_series.push_back(std::move(dropped));
    }
  }

  std::vector<FeatureMatrix> out;
  out.reserve(matrices.size());
  for (const auto& m : matrices) {
    out.push_back(m.select_rows(keep));
    report.retained_shape.push_back({m.set_id, out.back().rows(), out.back().cols()});
  }
  return {std::move(out), std::move(report)};
}

std::pair<std::vector<FeatureMatrix>, FilterReport> run_pipeline(
    const std::vector<FeatureMatrix>& raw, double max_missing) {
  FilterReport report;
  report.max_missing = max_missing;
  std::vector<FeatureMatrix> filtered;
  for (const auto& m : raw) {
    auto [kept, r] = filter_features(zscore_columns(m), max_missing);
    report.dropped_features.insert(report.dropped_features.end(), r.dropped_features.begin(),
                                   r.dropped_features.end());
    filtered.push_back(std::move(kept));
  }
  auto [aligned, series_report] = filter_series(filtered);
  report.dropped_series = std::move(series_report.dropped_series);
  report.retained_shape = std::move(series_report.retained_shape);
  return {std::move(aligned), std::move(report)};
}

}  // namespace tsfsb
