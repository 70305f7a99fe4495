#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tsfsb/errors.hpp"
#include "tsfsb/overlap.hpp"

using namespace tsfsb;

namespace {

FeatureMatrix matrix(std::string set, Eigen::MatrixXd values, std::string prefix = "f") {
  FeatureMatrix m;
  m.set_id = std::move(set);
  for (Eigen::Index i = 0; i < values.rows(); ++i) m.series_ids.push_back("s" + std::to_string(i));
  for (Eigen::Index j = 0; j < values.cols(); ++j) m.feature_names.push_back(prefix + std::to_string(j));
  m.values = std::move(values);
  m.normalized = true;
  return m;
}

Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd v(rows, cols);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g(gen);
  return v;
}

// S(T|B) straight from the definition, using the brute-force Spearman.
double brute_S(const Eigen::MatrixXd& t, const Eigen::MatrixXd& b) {
  double total = 0;
  for (Eigen::Index i = 0; i < t.cols(); ++i) {
    std::vector<double> ti(t.col(i).data(), t.col(i).data() + t.rows());
    double best = 0;
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      std::vector<double> bj(b.col(j).data(), b.col(j).data() + b.rows());
      best = std::max(best, std::abs(oracle::brute_spearman(ti, bj)));
    }
    total += best;
  }
  return total / static_cast<double>(t.cols());
}

}  // namespace

TEST(CrossCorrelation, WorkedExample) {
  Eigen::MatrixXd t(3, 1), b(3, 1);
  t << 1, 2, 3;
  b << 3, 1, 2;
  const auto g = cross_correlation(matrix("T", t), matrix("B", b));
  EXPECT_NEAR(g.abs_rho(0, 0), 0.5, 1e-15);
}

TEST(CrossCorrelation, SelfGridHasUnitDiagonal) {
  const auto m = matrix("A", gaussian(30, 5, 1));
  const auto g = cross_correlation(m, m);
  EXPECT_EQ(g.abs_rho.rows(), 5);
  EXPECT_EQ(g.abs_rho.cols(), 5);
  for (Eigen::Index i = 0; i < 5; ++i) EXPECT_EQ(g.abs_rho(i, i), 1.0);
  EXPECT_TRUE(g.abs_rho.isApprox(g.abs_rho.transpose()));
}

TEST(CrossCorrelation, MatchesOracleWithTies) {
  Eigen::MatrixXd t = gaussian(25, 4, 2).array().round();
  Eigen::MatrixXd b = gaussian(25, 3, 3).array().round();
  const auto g = cross_correlation(matrix("T", t), matrix("B", b));
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) {
      std::vector<double> ti(t.col(i).data(), t.col(i).data() + 25), bj(b.col(j).data(), b.col(j).data() + 25);
      EXPECT_NEAR(g.abs_rho(i, j), std::abs(oracle::brute_spearman(ti, bj)), 1e-12);
    }
}

TEST(CrossCorrelation, IndependentNoiseIsSmall) {
  // |rho| for independent columns of length 895 has sd ~ 1/sqrt(894) = 0.033
  const auto g = cross_correlation(matrix("T", gaussian(895, 10, 4)), matrix("B", gaussian(895, 10, 5)));
  int big = 0;
  for (Eigen::Index i = 0; i < g.abs_rho.size(); ++i) big += g.abs_rho(i) >= 0.12;
  EXPECT_EQ(big, 0);
}

TEST(CrossCorrelation, ConstantColumnWarns) {
  Eigen::MatrixXd t = gaussian(10, 2, 6);
  t.col(1).setConstant(0.5);
  const auto g = cross_correlation(matrix("T", t), matrix("B", gaussian(10, 2, 7)));
  EXPECT_EQ(g.abs_rho(1, 0), 0.0);
  EXPECT_EQ(g.abs_rho(1, 1), 0.0);
  ASSERT_EQ(g.warnings.size(), 1u);
  EXPECT_NE(g.warnings[0].find("T.f1"), std::string::npos);
}

TEST(CrossCorrelation, Preconditions) {
  const auto a = matrix("A", gaussian(10, 2, 8));
  auto b = matrix("B", gaussian(10, 2, 9));
  std::swap(b.series_ids[0], b.series_ids[1]);
  EXPECT_THROW(cross_correlation(a, b), AlignmentError);
  auto c = matrix("C", gaussian(10, 2, 10));
  c.values(3, 1) = std::nan("");
  EXPECT_THROW(cross_correlation(a, c), PipelineOrderError);
  const auto tiny = matrix("D", gaussian(2, 2, 11));
  EXPECT_THROW(cross_correlation(tiny, tiny), DomainError);
}

TEST(OverlapS, SelfIsExactlyOne) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = matrix("A", gaussian(40, 7, seed));
    EXPECT_EQ(overlap_S(m, m).S, 1.0);
  }
}

TEST(OverlapS, SubsetGivesOne) {
  const Eigen::MatrixXd b = gaussian(30, 6, 12);
  Eigen::MatrixXd t(30, 2);
  t << b.col(4), b.col(1);
  const auto r = overlap_S(matrix("T", t), matrix("B", b));
  EXPECT_EQ(r.S, 1.0);
  EXPECT_EQ(r.best_match[0], 4);
  EXPECT_EQ(r.best_match[1], 1);
}

TEST(OverlapS, MeanOfMaxima) {
  // second test feature has rank correlation exactly 0.5 with the benchmark
  Eigen::MatrixXd b(5, 1), t(5, 2);
  b << 1, 2, 3, 4, 5;
  t << 1, 3, 2, 2, 3, 1, 4, 5, 5, 4;
  const auto r = overlap_S(matrix("T", t), matrix("B", b));
  EXPECT_EQ(r.rho_max(0), 1.0);
  EXPECT_NEAR(r.rho_max(1), 0.5, 1e-15);
  EXPECT_NEAR(r.S, 0.75, 1e-15);
}

TEST(OverlapS, MatchesDefinition) {
  const Eigen::MatrixXd t = gaussian(20, 5, 13);
  const Eigen::MatrixXd b = gaussian(20, 4, 14).array().round();
  EXPECT_NEAR(overlap_S(matrix("T", t), matrix("B", b)).S, brute_S(t, b), 1e-12);
}

TEST(OverlapS, GrowingBenchmarkNeverLowersS) {
  const Eigen::MatrixXd t = gaussian(30, 5, 15);
  const Eigen::MatrixXd b = gaussian(30, 3, 16);
  const Eigen::MatrixXd c = gaussian(30, 4, 17);
  Eigen::MatrixXd bc(30, 7);
  bc << b, c;
  const double s_b = overlap_S(matrix("T", t), matrix("B", b)).S;
  const double s_bc = overlap_S(matrix("T", t), matrix("BC", bc)).S;
  EXPECT_GE(s_bc, s_b);
}

TEST(OverlapS, InvariantUnderMonotoneTransforms) {
  const Eigen::MatrixXd t = gaussian(40, 4, 18);
  const Eigen::MatrixXd b = gaussian(40, 3, 19);
  Eigen::MatrixXd t2 = t;
  t2.col(0) = t.col(0).array().exp();
  t2.col(1) = -t.col(1).array().cube();
  t2.col(2) = 5.0 * t.col(2).array() + 2.0;
  Eigen::MatrixXd b2 = b;
  b2.col(1) = b.col(1).array().sinh();
  const double s = overlap_S(matrix("T", t), matrix("B", b)).S;
  const double s2 = overlap_S(matrix("T", t2), matrix("B", b2)).S;
  EXPECT_NEAR(s, s2, 1e-12);
}

TEST(OverlapS, InvariantUnderRowPermutation) {
  const Eigen::MatrixXd t = gaussian(25, 3, 20);
  const Eigen::MatrixXd b = gaussian(25, 4, 21);
  std::vector<int> perm(25);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 gen(22);
  std::shuffle(perm.begin(), perm.end(), gen);
  Eigen::MatrixXd tp(25, 3), bp(25, 4);
  for (int i = 0; i < 25; ++i) {
    tp.row(i) = t.row(perm[i]);
    bp.row(i) = b.row(perm[i]);
  }
  EXPECT_EQ(overlap_S(matrix("T", t), matrix("B", b)).S, overlap_S(matrix("T", tp), matrix("B", bp)).S);
}

TEST(OverlapS, ThreadCountIndependent) {
  const auto t = matrix("T", gaussian(60, 17, 23));
  const auto b = matrix("B", gaussian(60, 9, 24));
  const auto one = overlap_S(t, b, 1);
  const auto many = overlap_S(t, b, 8);
  EXPECT_EQ(one.S, many.S);
  EXPECT_EQ(one.rho_max, many.rho_max);
}

TEST(Pairwise, IdenticalSetsAreAllOnes) {
  const auto a = matrix("A", gaussian(20, 3, 25));
  auto a2 = a;
  a2.set_id = "A2";
  const auto pm = pairwise_overlap({a, a2});
  EXPECT_EQ(pm.S, Eigen::Matrix2d::Ones());
}

TEST(Pairwise, OrientationIsBenchmarkByTest) {
  const auto a = matrix("A", gaussian(30, 3, 26));
  const auto b = matrix("B", gaussian(30, 5, 27));
  const auto c = matrix("C", gaussian(30, 2, 28));
  const auto pm = pairwise_overlap({a, b, c});
  EXPECT_EQ(pm.set_ids, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(pm.S.rows(), 3);
  EXPECT_EQ(pm.S(1, 0), overlap_S(a, b).S);  // row B (benchmark), column A (test)
  EXPECT_EQ(pm.S(0, 2), overlap_S(c, a).S);
  EXPECT_THROW(pairwise_overlap({a}), DomainError);
}

TEST(LeastMatched, CutoffAndOrder) {
  OverlapResult r;
  r.test_features = {"a", "b", "c", "d"};
  r.rho_max = Eigen::Vector4d(0.15, 0.9, 0.05, 0.2);
  const auto low = least_matched(r, 0.2);
  ASSERT_EQ(low.size(), 2u);
  EXPECT_EQ(low[0].first, "c");
  EXPECT_EQ(low[1].first, "a");
  EXPECT_EQ(least_matched(r, 1.01).size(), 4u);
  EXPECT_TRUE(least_matched(r, 0.0).empty());
}

TEST(LeastMatched, FromMatrices) {
  const auto t = matrix("T", gaussian(30, 4, 29));
  EXPECT_TRUE(least_matched(t, t, 0.99).empty());
  EXPECT_EQ(least_matched(t, t, 1.01).size(), 4u);
}
