#pragma once

// JSON file formats: metric spaces (matrix / graph / points shapes), signed
// simplices, and the reports emitted by the CLI. Report numbers carry 12
// significant digits; space matrices are written at full precision so that a
// written space re-validates exactly. Infinite values serialize as null.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "negtype/metric.hpp"
#include "negtype/polyeq.hpp"
#include "negtype/quadform.hpp"

namespace negtype::io {

using nlohmann::json;

double round_sig(double x, int digits = 12);

MetricSpace parse_space(const json& j);
MetricSpace load_space(const std::filesystem::path& path);
json space_to_json(const MetricSpace& space);

SignedSimplex parse_simplex(const json& j);
SignedSimplex load_simplex(const std::filesystem::path& path);
json simplex_to_json(const SignedSimplex& q);

std::string classification_name(Classification c);
std::string status_name(SupremalStatus s);
std::string method_name(WitnessMethod m);
std::string interval_kind_name(IntervalKind k);

json to_json(const QuadFormReport& r);
json to_json(const SupremalResult& r);
json to_json(const WitnessReport& r);
json to_json(const EqualityCheck& r);
json to_json(const PolygonalInterval& r);

QuadFormReport parse_quadform_report(const json& j);
SupremalResult parse_supremal_result(const json& j);
WitnessReport parse_witness_report(const json& j);
EqualityCheck parse_equality_check(const json& j);
PolygonalInterval parse_polygonal_interval(const json& j);

/// Parses a whole file; wraps I/O and syntax failures in Error(ParseError).
json read_json_file(const std::filesystem::path& path);

}  // namespace negtype::io
