#include "negtype/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "negtype/error.hpp"

namespace negtype::io {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::ParseError, what); }

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_sig(x);
}

double get_num(const json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_null()) return kInf;
  if (!v.is_number()) fail(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

json vec(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> get_vec(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) fail(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : j.at(key)) {
    if (!x.is_number()) fail(std::string("field '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::size_t get_index(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    fail(std::string(what) + " must be a nonnegative integer index");
  return v.get<std::size_t>();
}

std::vector<std::string> get_labels(const json& j) {
  std::vector<std::string> labels;
  if (!j.contains("labels")) return labels;
  if (!j.at("labels").is_array()) fail("'labels' must be an array");
  for (const auto& l : j.at("labels")) {
    if (l.is_string())
      labels.push_back(l.get<std::string>());
    else if (l.is_number())
      labels.push_back(l.dump());
    else
      fail("labels must be strings or numbers");
  }
  return labels;
}

std::vector<std::vector<double>> get_rows(const json& a, const char* what) {
  if (!a.is_array()) fail(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<double>> rows;
  for (const auto& r : a) {
    if (!r.is_array()) fail(std::string(what) + " must be an array of arrays");
    std::vector<double> row;
    for (const auto& x : r) {
      if (!x.is_number()) fail(std::string(what) + " entries must be numbers");
      row.push_back(x.get<double>());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<WeightedPoint> get_side(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) fail(std::string("simplex needs array '") + key + "'");
  std::vector<WeightedPoint> side;
  for (const auto& e : j.at(key)) {
    if (!e.is_array() || e.size() != 2 || !e[1].is_number())
      fail(std::string("'") + key + "' entries must be [index, weight]");
    side.push_back({get_index(e[0], "simplex point"), e[1].get<double>()});
  }
  return side;
}

json side_to_json(const std::vector<WeightedPoint>& side) {
  json a = json::array();
  for (const auto& wp : side) a.push_back(json::array({wp.index, num(wp.weight)}));
  return a;
}

template <class Enum, std::size_t N>
Enum parse_enum(const json& j, const char* key, const std::pair<Enum, const char*> (&table)[N]) {
  if (!j.contains(key) || !j.at(key).is_string()) fail(std::string("missing string field '") + key + "'");
  const auto s = j.at(key).get<std::string>();
  for (const auto& [value, name] : table)
    if (s == name) return value;
  fail(std::string("unknown ") + key + " '" + s + "'");
}

constexpr std::pair<Classification, const char*> kClassifications[] = {
    {Classification::Strict, "STRICT"},
    {Classification::Boundary, "BOUNDARY"},
    {Classification::NotNegType, "NOT_NEG_TYPE"},
};
constexpr std::pair<SupremalStatus, const char*> kStatuses[] = {
    {SupremalStatus::Finite, "FINITE"},
    {SupremalStatus::InfiniteUltrametric, "INFINITE_ULTRAMETRIC"},
    {SupremalStatus::ExceedsCap, "EXCEEDS_CAP"},
};
constexpr std::pair<WitnessMethod, const char*> kMethods[] = {
    {WitnessMethod::Ivt, "IVT"},
    {WitnessMethod::Kernel, "KERNEL"},
    {WitnessMethod::Inverse, "INVERSE"},
    {WitnessMethod::EigenDirection, "EIGEN_DIRECTION"},
};
constexpr std::pair<IntervalKind, const char*> kIntervalKinds[] = {
    {IntervalKind::ClosedRay, "CLOSED_RAY"},
    {IntervalKind::Empty, "EMPTY"},
    {IntervalKind::LowerBound, "LOWER_BOUND"},
};

template <class Enum, std::size_t N>
std::string enum_name(Enum v, const std::pair<Enum, const char*> (&table)[N]) {
  for (const auto& [value, name] : table)
    if (value == v) return name;
  return "UNKNOWN";
}

}  // namespace

double round_sig(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::string classification_name(Classification c) { return enum_name(c, kClassifications); }
std::string status_name(SupremalStatus s) { return enum_name(s, kStatuses); }
std::string method_name(WitnessMethod m) { return enum_name(m, kMethods); }
std::string interval_kind_name(IntervalKind k) { return enum_name(k, kIntervalKinds); }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail("'" + path.string() + "': " + e.what());
  }
}

MetricSpace parse_space(const json& j) {
  if (!j.is_object()) fail("metric space must be a JSON object");
  auto labels = get_labels(j);
  try {
    if (j.contains("matrix")) return validate_metric(std::move(labels), get_rows(j.at("matrix"), "'matrix'"));

    if (j.contains("graph")) {
      const json& g = j.at("graph");
      if (!g.is_object() || !g.contains("n") || !g.contains("edges") || !g.at("edges").is_array())
        fail("'graph' needs 'n' and 'edges'");
      const std::size_t n = get_index(g.at("n"), "graph size");
      std::vector<WeightedEdge> edges;
      for (const auto& e : g.at("edges")) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3) fail("edges must be [i, j] or [i, j, w]");
        WeightedEdge edge{get_index(e[0], "edge endpoint"), get_index(e[1], "edge endpoint"), 1.0};
        if (e.size() == 3) {
          if (!e[2].is_number()) fail("edge weight must be a number");
          edge.weight = e[2].get<double>();
        }
        edges.push_back(edge);
      }
      MetricSpace space = from_graph(n, edges);
      if (labels.empty()) return space;
      return validate_metric(std::move(labels), space.dist());
    }

    if (j.contains("points")) {
      const json& pts = j.at("points");
      if (!pts.is_object() || !pts.contains("coords")) fail("'points' needs 'coords'");
      double q = 2.0;
      if (pts.contains("q")) {
        const json& qj = pts.at("q");
        if (qj.is_number())
          q = qj.get<double>();
        else if (qj.is_string() && (qj == "inf" || qj == "infinity"))
          q = kInf;
        else
          fail("'q' must be a number or \"inf\"");
      }
      MetricSpace space = from_points(get_rows(pts.at("coords"), "'coords'"), q);
      if (labels.empty()) return space;
      return validate_metric(std::move(labels), space.dist());
    }
  } catch (const json::exception& e) {
    fail(e.what());
  }
  fail("metric space needs one of 'matrix', 'graph', 'points'");
}

MetricSpace load_space(const std::filesystem::path& path) { return parse_space(read_json_file(path)); }

json space_to_json(const MetricSpace& space) {
  json rows = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    json r = json::array();
    for (double v : space.dist().row(i)) r.push_back(v);
    rows.push_back(std::move(r));
  }
  return json{{"labels", space.labels()}, {"matrix", std::move(rows)}};
}

SignedSimplex parse_simplex(const json& j) {
  if (!j.is_object()) fail("simplex must be a JSON object");
  return SignedSimplex{get_side(j, "left"), get_side(j, "right")};
}

SignedSimplex load_simplex(const std::filesystem::path& path) {
  return parse_simplex(read_json_file(path));
}

json simplex_to_json(const SignedSimplex& q) {
  return json{{"left", side_to_json(q.left)}, {"right", side_to_json(q.right)}};
}

json to_json(const QuadFormReport& r) {
  return json{{"p", num(r.p)},
              {"lambda_max", num(r.lambda_max)},
              {"classification", classification_name(r.classification)},
              {"direction", vec(r.direction.values())},
              {"tolerance", num(r.tolerance)}};
}

json to_json(const SupremalResult& r) {
  json j{{"status", status_name(r.status)},
         {"lo", num(r.lo)},
         {"hi", num(r.hi)},
         {"midpoint", r.status == SupremalStatus::Finite ? num(r.midpoint()) : json(nullptr)},
         {"cap", num(r.cap)},
         {"width_tol", num(r.width_tol)},
         {"evaluations", r.evaluations}};
  return j;
}

json to_json(const WitnessReport& r) {
  return json{{"p", num(r.p)},
              {"xi", vec(r.xi.values())},
              {"simplex", simplex_to_json(r.simplex)},
              {"residual", num(r.residual)},
              {"method", method_name(r.method)},
              {"lhs", num(r.lhs)},
              {"rhs", num(r.rhs)}};
}

json to_json(const EqualityCheck& r) {
  return json{{"p", num(r.p)},
              {"lhs", num(r.lhs)},
              {"rhs", num(r.rhs)},
              {"gap", num(r.gap)},
              {"tolerance", num(r.tolerance)},
              {"holds", r.holds},
              {"nontrivial", r.nontrivial}};
}

json to_json(const PolygonalInterval& r) {
  return json{{"kind", interval_kind_name(r.kind)},
              {"lo", num(r.lo)},
              {"hi", num(r.hi)},
              {"text", r.text()}};
}

QuadFormReport parse_quadform_report(const json& j) {
  QuadFormReport r;
  r.p = get_num(j, "p");
  r.lambda_max = get_num(j, "lambda_max");
  r.classification = parse_enum(j, "classification", kClassifications);
  r.direction = BalancedVector::trusted(get_vec(j, "direction"));
  r.tolerance = get_num(j, "tolerance");
  return r;
}

SupremalResult parse_supremal_result(const json& j) {
  SupremalResult r;
  r.status = parse_enum(j, "status", kStatuses);
  r.lo = get_num(j, "lo");
  r.hi = get_num(j, "hi");
  r.cap = get_num(j, "cap");
  r.width_tol = get_num(j, "width_tol");
  if (!j.contains("evaluations") || !j.at("evaluations").is_number_integer())
    fail("missing integer field 'evaluations'");
  r.evaluations = j.at("evaluations").get<std::size_t>();
  return r;
}

WitnessReport parse_witness_report(const json& j) {
  WitnessReport r;
  r.p = get_num(j, "p");
  r.xi = BalancedVector::trusted(get_vec(j, "xi"));
  if (!j.contains("simplex")) fail("missing field 'simplex'");
  r.simplex = parse_simplex(j.at("simplex"));
  r.residual = get_num(j, "residual");
  r.method = parse_enum(j, "method", kMethods);
  r.lhs = get_num(j, "lhs");
  r.rhs = get_num(j, "rhs");
  return r;
}

EqualityCheck parse_equality_check(const json& j) {
  EqualityCheck r;
  r.p = get_num(j, "p");
  r.lhs = get_num(j, "lhs");
  r.rhs = get_num(j, "rhs");
  r.gap = get_num(j, "gap");
  r.tolerance = get_num(j, "tolerance");
  for (const char* key : {"holds", "nontrivial"})
    if (!j.contains(key) || !j.at(key).is_boolean()) fail(std::string("missing boolean field '") + key + "'");
  r.holds = j.at("holds").get<bool>();
  r.nontrivial = j.at("nontrivial").get<bool>();
  return r;
}

PolygonalInterval parse_polygonal_interval(const json& j) {
  PolygonalInterval r;
  r.kind = parse_enum(j, "kind", kIntervalKinds);
  r.lo = get_num(j, "lo");
  r.hi = get_num(j, "hi");
  return r;
}

}  // namespace negtype::io
