#ifndef TSFSB_INTERCHANGE_HPP
#define TSFSB_INTERCHANGE_HPP

#include <filesystem>
#include <map>
#include <string>

#include "tsfsb/feature_matrix.hpp"

namespace tsfsb {

inline constexpr const char* kToolVersion = "0.1.0";

/// Extra string fields written into the sidecar manifest (seed, config hash).
using Provenance = std::map<std::string, std::string>;

std::filesystem::path manifest_path(const std::filesystem::path& csv);

/// Interchange CSV:
///   id,<set_id>.<feature>,...
///   <series id>,<value>,...
/// Values use the shortest round-trip decimal form and missing is the literal
/// NaN. A sidecar `<file>.manifest.json` records set_id, n_series,
/// n_features, normalized and tool_version (plus any provenance fields).
void write_interchange(const FeatureMatrix& m, const std::filesystem::path& path,
                       const Provenance& provenance = {});

/// Parses an interchange CSV (and its manifest when present). ParseError
/// carries the offending line; duplicate columns raise SchemaError.
FeatureMatrix read_interchange(const std::filesystem::path& path);

}  // namespace tsfsb

#endif  // TSFSB_INTERCHANGE_HPP
