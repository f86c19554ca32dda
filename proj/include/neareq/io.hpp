// JSON and CSV encodings of point sets, interval families and every report.
//
//   points:    {"dim": 2, "points": [[x, y], ...]}   or CSV rows "x,y"
//   intervals: {"alpha": a, "t": [t1, ..., tk]}
//
// Doubles are written in shortest round-trip form, so a JSON round trip is
// bit-exact.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "neareq/constructions.hpp"
#include "neareq/counting.hpp"
#include "neareq/geometry.hpp"
#include "neareq/graph.hpp"
#include "neareq/hypothesis.hpp"
#include "neareq/search.hpp"
#include "neareq/verifier.hpp"

namespace neareq::io {

using nlohmann::json;

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// Throws InputError when malformed or empty, UnsupportedInput when dim != 2.
PointSet points_from_json(const json& j);
json to_json(const PointSet& ps);

PointSet points_from_csv(std::string_view text);
std::string points_to_csv(const PointSet& ps);

IntervalFamily intervals_from_json(const json& j);
json to_json(const IntervalFamily& iv);

/// Parses a JSON document; syntax errors become InputError.
json parse_json(std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

/// ".csv" files are read as CSV, everything else as JSON.
PointSet read_points(const std::filesystem::path& path);
IntervalFamily read_intervals(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Two-space indented JSON with a trailing newline.
std::string dump(const json& j);

json to_json(const HypothesisReport& r);
json to_json(const PairCountReport& r);
json to_json(const VerifierReport& r);
json construction_sidecar(const ConstructionOutput& c);
json to_json(const TripartiteWitness& w);
json to_json(const HomogeneousWitness& w);
json to_json(const AngleDiagnostic& d);
json to_json(const ProofConstants& c);
json to_json(const LocalOptReport& r);
json to_json(const SearchConfig& c);
json search_summary(const SearchConfig& config, const SearchResult& r);

/// Fields absent from the document take SearchConfig::defaults values.
/// The interval family comes from the "intervals" object.
SearchConfig search_config_from_json(const json& j);

/// "iteration,count" header followed by one row per trajectory sample.
std::string trajectory_csv(const SearchResult& r);

}  // namespace neareq::io
