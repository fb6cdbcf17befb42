#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "negtype/error.hpp"
#include "negtype/io.hpp"
#include "negtype/metric.hpp"
#include "negtype/polyeq.hpp"
#include "negtype/quadform.hpp"

namespace negtype::cli {

namespace {

using io::json;

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt_vec(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + "]";
}

std::string fmt_simplex(const MetricSpace& space, const SignedSimplex& q) {
  auto side = [&](const std::vector<WeightedPoint>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i)
      s += (i ? ", " : "") + space.labels()[pts[i].index] + "(" + fmt(pts[i].weight) + ")";
    return s;
  };
  return "[" + side(q.left) + "; " + side(q.right) + "]";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Options {
  std::string format = "text";
  std::string out_path;
  std::string space_path;
  std::string simplex_path;
  std::optional<double> p;
  double tol = kClassifyRelTol;
  std::optional<double> verify_tol;
  double cap = 64.0;
  double width_tol = 1e-10;
  std::uint64_t seed = 0;
  bool at_supremal = false;
  std::string kind;
  std::size_t n = 0;
  std::string q = "2";
  std::size_t dim = 2;
};

struct Outcome {
  int code = 0;
  std::string text;
};

SupremalOptions supremal_options(const Options& o) { return {o.cap, o.width_tol}; }

Outcome cmd_check(const Options& o) {
  const MetricSpace space = io::load_space(o.space_path);
  const QuadFormReport r = classify(space, *o.p, o.tol);
  const int code = r.classification == Classification::Strict     ? 0
                   : r.classification == Classification::Boundary ? 1
                                                                  : 2;
  if (o.format == "json") return {code, dump(io::to_json(r))};
  static const char* meaning[] = {"strict p-negative type", "p-negative type, not strict",
                                  "not of p-negative type"};
  std::ostringstream s;
  s << "classification: " << io::classification_name(r.classification) << " (" << meaning[code]
    << ")\n"
    << "p: " << fmt(r.p) << "\n"
    << "lambda_max: " << fmt(r.lambda_max) << "\n"
    << "tolerance: " << fmt(r.tolerance) << "\n"
    << "direction: " << fmt_vec(r.direction.values()) << "\n";
  return {code, s.str()};
}

Outcome cmd_supremal(const Options& o) {
  const MetricSpace space = io::load_space(o.space_path);
  const SupremalResult r = supremal(space, supremal_options(o));
  if (o.format == "json") return {0, dump(io::to_json(r))};
  std::ostringstream s;
  switch (r.status) {
    case SupremalStatus::Finite:
      s << "status: finite\n"
        << "bracket: [" << fmt(r.lo) << ", " << fmt(r.hi) << "]\n"
        << "midpoint: " << fmt(r.midpoint()) << "\n";
      break;
    case SupremalStatus::InfiniteUltrametric:
      s << "status: infinite (ultrametric)\n"
        << "the space is ultrametric, so it has p-negative type for every p >= 0\n";
      break;
    case SupremalStatus::ExceedsCap:
      s << "status: exceeds cap\n"
        << "negative type holds at p = " << fmt(r.cap) << "; supremal value exceeds the cap\n";
      break;
  }
  s << "evaluations: " << r.evaluations << "\n";
  return {0, s.str()};
}

std::string witness_text(const MetricSpace& space, const WitnessReport& w, const EqualityCheck& v) {
  std::ostringstream s;
  s << "method: " << io::method_name(w.method) << "\n"
    << "p: " << fmt(w.p) << "\n"
    << "xi: " << fmt_vec(w.xi.values()) << "\n"
    << "simplex: " << fmt_simplex(space, w.simplex) << "\n"
    << "residual: " << fmt(w.residual) << "\n"
    << "lhs: " << fmt(w.lhs) << "\n"
    << "rhs: " << fmt(w.rhs) << "\n"
    << "holds: " << (v.holds ? "yes" : "no") << ", nontrivial: " << (v.nontrivial ? "yes" : "no")
    << "\n";
  return s.str();
}

Outcome cmd_witness(const Options& o) {
  const MetricSpace space = io::load_space(o.space_path);
  std::optional<WitnessReport> w;
  std::string reason;
  try {
    if (o.at_supremal) {
      w = witness_at_supremal(space, supremal(space, supremal_options(o)));
    } else {
      w = witness_at(space, *o.p, o.tol);
    }
  } catch (const Error& e) {
    if (e.code() != Errc::NotApplicable) throw;
    if (o.at_supremal) {
      const SupremalResult sup = supremal(space, supremal_options(o));
      if (sup.status == SupremalStatus::ExceedsCap)
        throw Error(Errc::NoWitnessFound, "supremal exponent exceeds the cap " + fmt(o.cap));
      reason = "ultrametric space: no nontrivial polygonal equality for any p";
    } else {
      reason = "strict " + fmt(*o.p) + "-negative type: no nontrivial " + fmt(*o.p) +
               "-polygonal equality";
    }
  }
  if (!w) {
    if (o.format == "json") return {1, dump(json{{"witness", nullptr}, {"reason", reason}})};
    return {1, reason + "\n"};
  }
  const EqualityCheck v = verify_equality(space, w->p, w->simplex);
  if (o.format == "json") {
    json j = io::to_json(*w);
    j["verification"] = io::to_json(v);
    return {0, dump(j)};
  }
  return {0, witness_text(space, *w, v)};
}

Outcome cmd_verify(const Options& o) {
  const MetricSpace space = io::load_space(o.space_path);
  const SignedSimplex q = io::load_simplex(o.simplex_path);
  const EqualityCheck r = verify_equality(space, *o.p, q, o.verify_tol.value_or(kVerifyRelTol));
  const int code = r.holds ? (r.nontrivial ? 0 : 1) : 2;
  if (o.format == "json") return {code, dump(io::to_json(r))};
  std::ostringstream s;
  s << "simplex: " << fmt_simplex(space, q) << "\n"
    << "p: " << fmt(r.p) << "\n"
    << "lhs: " << fmt(r.lhs) << "\n"
    << "rhs: " << fmt(r.rhs) << "\n"
    << "gap: " << fmt(r.gap) << "\n"
    << "holds: " << (r.holds ? "yes" : "no") << "\n"
    << "nontrivial: " << (r.nontrivial ? "yes" : "no") << "\n";
  s << (code == 0   ? "nontrivial polygonal equality\n"
        : code == 1 ? "trivial equality (degenerate simplex)\n"
                    : "not an equality\n");
  return {code, s.str()};
}

Outcome cmd_interval(const Options& o) {
  const MetricSpace space = io::load_space(o.space_path);
  const PolygonalInterval r = polygonal_interval(supremal(space, supremal_options(o)));
  if (o.format == "json") return {0, dump(io::to_json(r))};
  std::string s = r.text() + "\n";
  if (r.kind == IntervalKind::ClosedRay)
    s += "left endpoint in [" + fmt(r.lo) + ", " + fmt(r.hi) + "]\n";
  return {0, s};
}

double parse_q(const std::string& q) {
  if (q == "inf" || q == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(q, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != q.size()) throw Error(Errc::InvalidArgument, "--q must be a number or 'inf'");
  return v;
}

Outcome cmd_gen(const Options& o) {
  const std::string& k = o.kind;
  MetricSpace space = [&] {
    if (k == "cycle") return cycle_metric(o.n);
    if (k == "path") return path_metric(o.n);
    if (k == "complete") return complete_metric(o.n);
    if (k == "points") return random_points(o.n, o.dim, parse_q(o.q), o.seed);
    if (k == "ultrametric") return random_ultrametric(o.n, o.seed);
    if (k == "random") return random_graph_metric(o.n, o.seed);
    throw Error(Errc::InvalidArgument, "unknown kind '" + k + "'");
  }();
  return {0, dump(io::space_to_json(space))};
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::EigenFailure:
    case Errc::NoRootInUnitInterval:
    case Errc::NoWitnessFound:
      return kExitNumericError;
    default:
      return kExitInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Negative type, supremal exponent and polygonal equalities of finite metric spaces"};
  app.name(args.empty() ? "negtype" : args.front());
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", o.out_path, "Write output to this file instead of stdout");

  auto add_space = [&](CLI::App* sub) {
    sub->add_option("space", o.space_path, "Metric space JSON file")->required();
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--cap", o.cap, "Largest exponent tried when bracketing");
    sub->add_option("--width-tol", o.width_tol, "Bracket width at which bisection stops");
  };

  CLI::App* check = app.add_subcommand("check", "Classify p-negative type at a fixed exponent");
  add_space(check);
  check->add_option("--p", o.p, "Exponent")->required();
  check->add_option("--tol", o.tol, "Relative classification tolerance");

  CLI::App* sup = app.add_subcommand("supremal", "Bracket the supremal p-negative type");
  add_space(sup);
  add_search(sup);

  CLI::App* wit = app.add_subcommand("witness", "Construct a nontrivial polygonal equality");
  add_space(wit);
  auto* wp = wit->add_option("--p", o.p, "Exponent");
  auto* ws = wit->add_flag("--at-supremal", o.at_supremal, "Use the supremal exponent");
  wp->excludes(ws);
  wit->add_option("--tol", o.tol, "Relative classification tolerance");
  add_search(wit);

  CLI::App* ver = app.add_subcommand("verify", "Check a polygonal equality for a simplex");
  add_space(ver);
  ver->add_option("simplex", o.simplex_path, "Simplex JSON file")->required();
  ver->add_option("--p", o.p, "Exponent")->required();
  ver->add_option("--tol", o.verify_tol, "Relative equality tolerance");

  CLI::App* itv = app.add_subcommand("interval", "Exponents admitting nontrivial polygonal equalities");
  add_space(itv);
  add_search(itv);

  CLI::App* gen = app.add_subcommand("gen", "Write a generated metric space as JSON");
  gen->add_option("kind", o.kind, "cycle|path|complete|points|ultrametric|random")
      ->required()
      ->check(CLI::IsMember({"cycle", "path", "complete", "points", "ultrametric", "random"}));
  gen->add_option("n", o.n, "Number of points")->required();
  gen->add_option("--q", o.q, "Norm order for 'points' (number or inf)");
  gen->add_option("--dim", o.dim, "Dimension for 'points'");
  gen->add_option("--seed", o.seed, "Random seed");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitInputError;
  }

  if (wit->parsed() && !o.p && !o.at_supremal) {
    err << "witness: one of --p or --at-supremal is required\n";
    return kExitInputError;
  }

  Outcome result;
  try {
    if (check->parsed()) result = cmd_check(o);
    else if (sup->parsed()) result = cmd_supremal(o);
    else if (wit->parsed()) result = cmd_witness(o);
    else if (ver->parsed()) result = cmd_verify(o);
    else if (itv->parsed()) result = cmd_interval(o);
    else result = cmd_gen(o);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }

  if (o.out_path.empty()) {
    out << result.text;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!(f << result.text)) {
      err << "error: cannot write '" << o.out_path << "'\n";
      return kExitInputError;
    }
  }
  return result.code;
}

}  // namespace negtype::cli
