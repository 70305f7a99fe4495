#include "tsfsb/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "tsfsb/errors.hpp"

namespace tsfsb::svg {

namespace {

constexpr const char* kPalette[] = {"#1b7837", "#e08214", "#762a83", "#de77ae",
                                    "#a6dba0", "#fee08b", "#8c510a", "#2166ac"};

std::string fmt(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo, hi;
  double px_lo, px_hi;
  bool log;

  double map(double v) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double x = log ? std::log10(v) : v;
    return px_lo + (x - a) / (b - a) * (px_hi - px_lo);
  }
};

void log_range(double& lo, double& hi) {
  lo = std::pow(10.0, std::floor(std::log10(lo)));
  hi = std::pow(10.0, std::ceil(std::log10(hi)));
  if (hi <= lo) hi = lo * 10.0;
}

void frame(std::ostringstream& out, const Axis& x, const Axis& y, const std::string& title,
           const std::string& xlabel, const std::string& ylabel) {
  out << "<rect x=\"" << fmt(x.px_lo) << "\" y=\"" << fmt(y.px_hi) << "\" width=\"" << fmt(x.px_hi - x.px_lo)
      << "\" height=\"" << fmt(y.px_lo - y.px_hi) << "\" fill=\"none\" stroke=\"#333\"/>\n";
  out << "<text x=\"" << fmt((x.px_lo + x.px_hi) / 2) << "\" y=\"" << fmt(y.px_hi - 10)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(title) << "</text>\n";
  out << "<text x=\"" << fmt((x.px_lo + x.px_hi) / 2) << "\" y=\"" << fmt(y.px_lo + 36)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(xlabel) << "</text>\n";
  out << "<text transform=\"translate(" << fmt(x.px_lo - 48) << "," << fmt((y.px_lo + y.px_hi) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << escape(ylabel) << "</text>\n";
  auto ticks = [](const Axis& a) {
    std::vector<double> t;
    if (a.log) {
      for (double v = a.lo; v <= a.hi * 1.0001; v *= 10.0) t.push_back(v);
    } else {
      for (int i = 0; i <= 5; ++i) t.push_back(a.lo + (a.hi - a.lo) * i / 5.0);
    }
    return t;
  };
  for (double v : ticks(x)) {
    char label[32];
    std::snprintf(label, sizeof label, x.log ? "%g" : "%.1f", v);
    out << "<text x=\"" << fmt(x.map(v)) << "\" y=\"" << fmt(y.px_lo + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << label << "</text>\n";
  }
  for (double v : ticks(y)) {
    char label[32];
    std::snprintf(label, sizeof label, y.log ? "%g" : "%.1f", v);
    out << "<text x=\"" << fmt(x.px_lo - 6) << "\" y=\"" << fmt(y.map(v) + 3)
        << "\" text-anchor=\"end\" font-size=\"10\">" << label << "</text>\n";
  }
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const Axis& x, const Axis& y,
                     const std::string& colour, const std::string& extra = "") {
  std::ostringstream out;
  out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\"" << extra << " points=\"";
  for (const auto& [px, py] : pts) out << fmt(x.map(px)) << ',' << fmt(y.map(py)) << ' ';
  out << "\"/>\n";
  return out.str();
}

}  // namespace

std::string bench_plot(const BenchResult& r) {
  std::map<std::string, std::vector<const BenchCell*>> by_set;
  std::vector<std::string> order;
  double len_lo = 1e300, len_hi = 0, t_lo = 1e300, t_hi = 0, f_lo = 1e300, f_hi = 0;
  for (const auto& c : r.cells) {
    if (!by_set.count(c.set_id)) order.push_back(c.set_id);
    by_set[c.set_id].push_back(&c);
    if (!c.benchable) continue;
    const double lo = std::max(c.median_s - c.iqr_s / 2, c.median_s / 10);
    len_lo = std::min(len_lo, static_cast<double>(c.length));
    len_hi = std::max(len_hi, static_cast<double>(c.length));
    t_lo = std::min(t_lo, std::max(lo, 1e-9));
    t_hi = std::max(t_hi, c.median_s + c.iqr_s / 2);
    f_lo = std::min(f_lo, std::max(c.per_feature_median_s, 1e-12));
    f_hi = std::max(f_hi, c.per_feature_median_s);
  }
  if (len_hi == 0) len_lo = 1, len_hi = 10, t_lo = 1e-6, t_hi = 1, f_lo = 1e-8, f_hi = 1e-2;
  log_range(len_lo, len_hi);
  log_range(t_lo, t_hi);
  log_range(f_lo, f_hi);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"420\" font-family=\"sans-serif\">\n";
  const Axis xa{len_lo, len_hi, 80, 440, true}, ya{t_lo, t_hi, 360, 40, true};
  const Axis xb{len_lo, len_hi, 560, 920, true}, yb{f_lo, f_hi, 360, 40, true};
  frame(out, xa, ya, "A: computation time", "time-series length", "median time (s)");
  frame(out, xb, yb, "B: time per feature", "time-series length", "time per feature (s)");

  std::size_t colour = 0;
  for (const auto& set : order) {
    const std::string col = kPalette[colour++ % std::size(kPalette)];
    std::vector<std::pair<double, double>> med, upper, lower, per;
    for (const auto* c : by_set[set]) {
      if (!c->benchable) continue;
      const double len = static_cast<double>(c->length);
      med.emplace_back(len, c->median_s);
      // the band is median +/- IQR/2, floored for the log axis
      upper.emplace_back(len, c->median_s + c->iqr_s / 2);
      lower.emplace_back(len, std::max(c->median_s - c->iqr_s / 2, c->median_s / 10));
      per.emplace_back(len, c->per_feature_median_s);
    }
    if (med.empty()) continue;
    out << "<polygon fill=\"" << col << "\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
    for (const auto& [px, py] : upper) out << fmt(xa.map(px)) << ',' << fmt(ya.map(py)) << ' ';
    for (auto it = lower.rbegin(); it != lower.rend(); ++it)
      out << fmt(xa.map(it->first)) << ',' << fmt(ya.map(it->second)) << ' ';
    out << "\"/>\n";
    out << polyline(med, xa, ya, col);
    out << polyline(per, xb, yb, col);
    const double ly = 56 + 16 * static_cast<double>(colour - 1);
    out << "<text x=\"96\" y=\"" << fmt(ly) << "\" font-size=\"11\" fill=\"" << col << "\">" << escape(set)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string cumvar_plot(const std::vector<std::pair<std::string, Curve>>& curves, double threshold) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"420\" font-family=\"sans-serif\">\n";
  const Axis x{0.0, 1.0, 80, 480, false}, y{0.0, 1.0, 360, 40, false};
  frame(out, x, y, "cumulative variance explained", "fraction of principal components",
        "cumulative variance");
  out << "<line x1=\"" << fmt(x.map(0)) << "\" y1=\"" << fmt(y.map(threshold)) << "\" x2=\"" << fmt(x.map(1))
      << "\" y2=\"" << fmt(y.map(threshold)) << "\" stroke=\"#555\" stroke-dasharray=\"6,4\"/>\n";
  std::size_t colour = 0;
  for (const auto& [name, curve] : curves) {
    const std::string col = kPalette[colour++ % std::size(kPalette)];
    Curve pts{{0.0, 0.0}};
    pts.insert(pts.end(), curve.begin(), curve.end());
    out << polyline(pts, x, y, col);
    out << "<text x=\"300\" y=\"" << fmt(300 + 16 * static_cast<double>(colour - 1)) << "\" font-size=\"11\" fill=\""
        << col << "\">" << escape(name) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string overlap_heatmap(const OverlapMatrix& m) {
  const auto k = static_cast<double>(m.set_ids.size());
  const double cell = 64, left = 140, top = 120;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(left + cell * k + 20, 0) << "\" height=\""
      << fmt(top + cell * k + 40, 0) << "\" font-family=\"sans-serif\">\n";
  out << "<text x=\"" << fmt(left + cell * k / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
      << "test set T (columns)</text>\n";
  out << "<text transform=\"translate(16," << fmt(top + cell * k / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"13\">benchmark set B (rows)</text>\n";
  for (std::size_t i = 0; i < m.set_ids.size(); ++i) {
    const double pos = static_cast<double>(i) * cell;
    out << "<text transform=\"translate(" << fmt(left + pos + cell / 2) << "," << fmt(top - 8)
        << ") rotate(-45)\" font-size=\"11\">" << escape(m.set_ids[i]) << "</text>\n";
    out << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(top + pos + cell / 2 + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << escape(m.set_ids[i]) << "</text>\n";
  }
  for (Eigen::Index b = 0; b < m.S.rows(); ++b) {
    for (Eigen::Index t = 0; t < m.S.cols(); ++t) {
      const double v = std::clamp(m.S(b, t), 0.0, 1.0);
      // white -> dark blue
      const int r = static_cast<int>(std::lround(255 - 222 * v));
      const int g = static_cast<int>(std::lround(255 - 153 * v));
      const int bl = static_cast<int>(std::lround(255 - 83 * v));
      char colour[16];
      std::snprintf(colour, sizeof colour, "#%02x%02x%02x", r, g, bl);
      const double x = left + static_cast<double>(t) * cell, y = top + static_cast<double>(b) * cell;
      out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(cell) << "\" height=\""
          << fmt(cell) << "\" fill=\"" << colour << "\" stroke=\"#fff\"/>\n";
      out << "<text x=\"" << fmt(x + cell / 2) << "\" y=\"" << fmt(y + cell / 2 + 4)
          << "\" text-anchor=\"middle\" font-size=\"12\" fill=\"" << (v > 0.6 ? "#fff" : "#000") << "\">"
          << fmt(m.S(b, t)) << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

void write(const std::filesystem::path& path, const std::string& document) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << document;
}

}  // namespace tsfsb::svg
