#include "tsfsb/redundancy.hpp"

#include <Eigen/SVD>

#include <algorithm>

#include "tsfsb/errors.hpp"

namespace tsfsb {

namespace {

// Partial sums are compared with this much slack so a ratio vector that sums
// to 1 up to rounding still reaches thresholds such as 1.0.
constexpr double kCumulativeSlack = 1e-12;

}  // namespace

PcaResult pca(const FeatureMatrix& m) {
  if (!m.complete())
    throw PipelineOrderError("pca on '" + m.set_id + "': matrix has missing values; run the filter pipeline first");
  return pca(m.values, m.set_id);
}

PcaResult pca(const Eigen::Ref<const Eigen::MatrixXd>& data, std::string set_id) {
  if (data.rows() < 2 || data.cols() < 1) throw DomainError("pca needs at least 2 rows and 1 column");
  if (data.hasNaN()) throw PipelineOrderError("pca: matrix has missing values");

  const Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered);
  const Eigen::VectorXd variance = svd.singularValues().array().square();
  const double total = variance.sum();
  if (!(total > 0.0)) throw DomainError("pca on '" + set_id + "': every column is constant");

  PcaResult r;
  r.set_id = std::move(set_id);
  r.total_components = std::min(data.rows(), data.cols());
  r.explained_ratio = variance / total;
  return r;
}

std::vector<std::pair<double, double>> cumvar_curve(const PcaResult& r) {
  std::vector<std::pair<double, double>> curve;
  const auto total = static_cast<double>(r.total_components);
  const double sum = r.explained_ratio.sum();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < r.total_components; ++k) {
    acc += k < r.explained_ratio.size() ? r.explained_ratio(k) : 0.0;
    curve.emplace_back(static_cast<double>(k + 1) / total, acc / sum);
  }
  return curve;
}

ThresholdSummary pcs_for_threshold(const PcaResult& r, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw DomainError("threshold must lie in (0, 1]");
  const auto curve = cumvar_curve(r);
  Eigen::Index k_star = r.total_components;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    if (curve[k].second + kCumulativeSlack >= threshold) {
      k_star = static_cast<Eigen::Index>(k + 1);
      break;
    }
  }
  return {k_star, r.total_components,
          static_cast<double>(k_star) / static_cast<double>(r.total_components)};
}

double prop_pcs_for_threshold(const PcaResult& r, double threshold) {
  return pcs_for_threshold(r, threshold).proportion;
}

}  // namespace tsfsb
