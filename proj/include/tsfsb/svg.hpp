#ifndef TSFSB_SVG_HPP
#define TSFSB_SVG_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tsfsb/bench.hpp"
#include "tsfsb/overlap.hpp"

namespace tsfsb::svg {

using Curve = std::vector<std::pair<double, double>>;

/// Two log-log panels: median wall time with an IQR band (left) and median
/// time per successfully computed feature (right), one line per set.
std::string bench_plot(const BenchResult& r);

/// Cumulative explained variance against fraction of components, with a
/// dashed threshold line.
std::string cumvar_plot(const std::vector<std::pair<std::string, Curve>>& curves, double threshold);

/// Benchmarks as rows, tests as columns, cells annotated to 2 decimals.
std::string overlap_heatmap(const OverlapMatrix& m);

void write(const std::filesystem::path& path, const std::string& document);

}  // namespace tsfsb::svg

#endif  // TSFSB_SVG_HPP
