#include "tsfsb/interchange.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>

#include "tsfsb/csv_util.hpp"
#include "tsfsb/errors.hpp"

namespace fs = std::filesystem;

namespace tsfsb {

fs::path manifest_path(const fs::path& csv) {
  return fs::path(csv.string() + ".manifest.json");
}

void write_interchange(const FeatureMatrix& m, const fs::path& path, const Provenance& provenance) {
  m.validate();
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "id";
    for (const auto& name : m.feature_names) out << ',' << m.set_id << '.' << name;
    out << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out << m.series_ids[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < m.cols(); ++j) out << ',' << csv::format_double(m.values(i, j));
      out << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
  }

  nlohmann::json manifest;
  manifest["set_id"] = m.set_id;
  manifest["n_series"] = m.rows();
  manifest["n_features"] = m.cols();
  manifest["normalized"] = m.normalized;
  manifest["tool_version"] = kToolVersion;
  for (const auto& [key, value] : provenance) manifest[key] = value;
  std::ofstream out(manifest_path(path), std::ios::binary);
  if (!out) throw IoError("cannot write " + manifest_path(path).string());
  out << manifest.dump(2) << '\n';
}

FeatureMatrix read_interchange(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  const std::string file = path.string();

  std::optional<nlohmann::json> manifest;
  if (fs::exists(manifest_path(path))) {
    std::ifstream min(manifest_path(path));
    try {
      manifest = nlohmann::json::parse(min);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(manifest_path(path).string(), 1, std::string("invalid manifest: ") + e.what());
    }
  }

  FeatureMatrix m;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::optional<std::string> prefix;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cells = csv::split(line);
    if (!have_header) {
      if (csv::trim(cells.front()) != "id")
        throw ParseError(file, line_no, "first header cell must be 'id'");
      std::set<std::string> seen;
      for (std::size_t c = 1; c < cells.size(); ++c) {
        const std::string header(csv::trim(cells[c]));
        if (header.empty()) throw ParseError(file, line_no, "empty column header");
        if (!seen.insert(header).second) throw SchemaError("duplicate feature column '" + header + "'");
        const auto dot = header.find('.');
        std::string name = header;
        if (dot != std::string::npos) {
          const auto set = header.substr(0, dot);
          if (prefix && *prefix != set)
            throw SchemaError("column '" + header + "' belongs to set '" + set + "', expected '" + *prefix + "'");
          prefix = set;
          name = header.substr(dot + 1);
        }
        m.feature_names.push_back(std::move(name));
      }
      have_header = true;
      continue;
    }
    if (cells.size() != m.feature_names.size() + 1)
      throw ParseError(file, line_no,
                       "expected " + std::to_string(m.feature_names.size() + 1) + " fields, got " +
                           std::to_string(cells.size()));
    m.series_ids.emplace_back(csv::trim(cells.front()));
    std::vector<double> row;
    row.reserve(m.feature_names.size());
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const auto v = csv::parse_double(cells[c]);
      if (!v) throw ParseError(file, line_no, "bad numeric value '" + cells[c] + "' in column " + std::to_string(c + 1));
      // feature values are finite or missing; infinities count as failed features
      row.push_back(std::isfinite(*v) ? *v : std::numeric_limits<double>::quiet_NaN());
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(file, line_no, "missing header row");

  m.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m.feature_names.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];

  m.set_id = prefix.value_or(path.stem().string());
  if (manifest) {
    try {
      if (manifest->contains("set_id")) m.set_id = manifest->at("set_id").get<std::string>();
      if (manifest->contains("normalized")) m.normalized = manifest->at("normalized").get<bool>();
      if (manifest->contains("n_series") && manifest->at("n_series").get<Eigen::Index>() != m.rows())
        throw SchemaError("manifest n_series disagrees with " + file);
      if (manifest->contains("n_features") && manifest->at("n_features").get<Eigen::Index>() != m.cols())
        throw SchemaError("manifest n_features disagrees with " + file);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(manifest_path(path).string(), 1, std::string("invalid manifest field: ") + e.what());
    }
  }
  m.validate();
  return m;
}

}  // namespace tsfsb
