#ifndef TSFSB_TESTS_ORACLES_HPP
#define TSFSB_TESTS_ORACLES_HPP

// Independent reference implementations used to check the library. They are
// deliberately naive: O(n^2) loops, no shared helpers with src/.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

// Rank of x[i] = 1 + #{j : x[j] < x[i]} + (#{j != i : x[j] == x[i]}) / 2,
// which is the mean of the positions a tied block occupies.
inline std::vector<double> brute_ranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    double less = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] < x[i]) less += 1;
      else if (j != i && x[j] == x[i]) equal += 1;
    }
    r[i] = 1.0 + less + equal / 2.0;
  }
  return r;
}

inline double brute_pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  long double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) { ma += a[i]; mb += b[i]; }
  ma /= n; mb /= n;
  long double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return static_cast<double>(sab / std::sqrt(saa * sbb));
}

inline double brute_spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return brute_pearson(brute_ranks(a), brute_ranks(b));
}

// 1 - 6 sum d^2 / (n (n^2 - 1)); valid only without ties.
inline double closed_form_spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = brute_ranks(a), rb = brute_ranks(b);
  double d2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  const double n = static_cast<double>(a.size());
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

inline std::complex<long double> direct_dft(const Eigen::VectorXd& x, Eigen::Index k) {
  const auto n = x.size();
  std::complex<long double> acc = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    // reduce k t mod N first so the angle stays small and accurate
    const long double ang = -2.0L * std::numbers::pi_v<long double> *
                            static_cast<long double>((k * t) % n) / static_cast<long double>(n);
    acc += static_cast<long double>(x(t)) * std::complex<long double>(std::cos(ang), std::sin(ang));
  }
  return acc;
}

inline double brute_acf(const Eigen::VectorXd& x, Eigen::Index lag) {
  const auto n = x.size();
  long double m = 0;
  for (Eigen::Index t = 0; t < n; ++t) m += x(t);
  m /= n;
  long double num = 0, den = 0;
  for (Eigen::Index t = 0; t < n; ++t) den += (x(t) - m) * (x(t) - m);
  for (Eigen::Index t = 0; t + lag < n; ++t) num += (x(t) - m) * (x(t + lag) - m);
  return static_cast<double>(num / den);
}

// Explained-variance ratios from the sample covariance eigenvalues, sorted
// descending and padded/truncated to min(rows, cols).
inline Eigen::VectorXd covariance_pca_ratios(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd c = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd cov = c.transpose() * c / static_cast<double>(x.rows() - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  const auto total = std::min(x.rows(), x.cols());
  Eigen::VectorXd out = ev.head(total) / ev.sum();
  return out;
}

inline Eigen::MatrixXd random_orthogonal(Eigen::Index n, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = g(gen);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("tsfsb-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace oracle

#endif
