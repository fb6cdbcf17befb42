#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "negtype/io.hpp"
#include "negtype/metric.hpp"

namespace fs = std::filesystem;
using negtype::io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "negtype");
  std::ostringstream out, err;
  const int code = negtype::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Files {
 public:
  Files() : dir_(fs::temp_directory_path() / ("negtype_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Files() { fs::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

const char* kLine = R"({"matrix":[[0,1,2],[1,0,1],[2,1,0]]})";
const char* kCycle = R"({"graph":{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}})";
const char* kTwo = R"({"matrix":[[0,1],[1,0]]})";
const char* kUltra = R"({"matrix":[[0,1,2],[1,0,2],[2,2,0]]})";

}  // namespace

TEST_CASE("check exit codes follow the classification") {
  Files f;
  const auto line = f.write("line.json", kLine);
  CHECK(run({"check", line, "--p", "1"}).code == 0);
  CHECK(run({"check", line, "--p", "2"}).code == 1);
  CHECK(run({"check", line, "--p", "3"}).code == 2);
  const Run r = run({"check", line, "--p", "3"});
  CHECK(r.out.find("NOT_NEG_TYPE") != std::string::npos);
}

TEST_CASE("input errors exit with 3") {
  Files f;
  const auto bad = f.write("bad.json", "{ \"matrix\": [[0, 1], ");
  const Run r = run({"check", bad, "--p", "1"});
  CHECK(r.code == negtype::cli::kExitInputError);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"check", f.path("missing.json"), "--p", "1"}).code == 3);
  const auto asym = f.write("asym.json", R"({"matrix":[[0,1],[2,0]]})");
  CHECK(run({"check", asym, "--p", "1"}).code == 3);
  const auto line = f.write("line.json", kLine);
  CHECK(run({"check", line}).code == 3);
  CHECK(run({"check", line, "--p", "-1"}).code == 3);
  CHECK(run({"supremal", line, "--p", "1"}).code == 3);
  CHECK(run({"interval", line, "--p", "1"}).code == 3);
  CHECK(run({"supremal", line, "--cap", "-2"}).code == 3);
  CHECK(run({"witness", line}).code == 3);
  CHECK(run({"witness", line, "--p", "3", "--at-supremal"}).code == 3);
  CHECK(run({"frobnicate", line}).code == 3);
  CHECK(run({"check", line, "--p", "1", "--format", "xml"}).code == 3);
  const auto unbalanced = f.write("q.json", R"({"left":[[0,1]],"right":[[1,2]]})");
  CHECK(run({"verify", line, unbalanced, "--p", "2"}).code == 3);
}

TEST_CASE("supremal") {
  Files f;
  const Run line = run({"--format", "json", "supremal", f.write("line.json", kLine)});
  CHECK(line.code == 0);
  const json j = json::parse(line.out);
  CHECK(j["status"] == "FINITE");
  CHECK(std::abs(j["midpoint"].get<double>() - 2.0) <= 1e-8);
  const Run cyc = run({"--format", "json", "supremal", f.write("c4.json", kCycle)});
  CHECK(std::abs(json::parse(cyc.out)["midpoint"].get<double>() - 1.0) <= 1e-8);
  const Run ultra = run({"supremal", f.write("u.json", kUltra)});
  CHECK(ultra.code == 0);
  CHECK(ultra.out.find("infinite (ultrametric)") != std::string::npos);
  const Run capped = run({"--format", "json", "supremal", f.path("line.json"), "--cap", "1.5"});
  CHECK(capped.code == 0);
  CHECK(json::parse(capped.out)["status"] == "EXCEEDS_CAP");
}

TEST_CASE("witness") {
  Files f;
  const auto line = f.write("line.json", kLine);
  SUBCASE("fixed p with a positive direction") {
    const Run r = run({"--format", "json", "witness", line, "--p", "3"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["method"] == "IVT");
    CHECK(j["verification"]["holds"] == true);
    CHECK(j["verification"]["nontrivial"] == true);
  }
  SUBCASE("strict negative type declines") {
    const Run r = run({"witness", line, "--p", "1"});
    CHECK(r.code == 1);
    CHECK(r.out.find("strict 1-negative type: no nontrivial 1-polygonal equality") != std::string::npos);
    const Run j = run({"--format", "json", "witness", line, "--p", "1"});
    CHECK(j.code == 1);
    CHECK(json::parse(j.out)["witness"].is_null());
  }
  SUBCASE("at the supremal exponent") {
    const Run r = run({"--format", "json", "witness", line, "--at-supremal"});
    CHECK(r.code == 0);
    const json xi = json::parse(r.out)["xi"];
    // the largest-magnitude entry is made positive
    const double s = xi[1].get<double>();
    CHECK(s > 0);
    CHECK(xi[0].get<double>() == doctest::Approx(-s / 2).epsilon(1e-6));
    CHECK(xi[2].get<double>() == doctest::Approx(-s / 2).epsilon(1e-6));
  }
  SUBCASE("ultrametric declines at the supremal exponent") {
    CHECK(run({"witness", f.write("u.json", kUltra), "--at-supremal"}).code == 1);
  }
  SUBCASE("cap too small is a numeric failure") {
    CHECK(run({"witness", line, "--at-supremal", "--cap", "1.5"}).code ==
          negtype::cli::kExitNumericError);
  }
}

TEST_CASE("verify") {
  Files f;
  const auto line = f.write("line.json", kLine);
  const auto q = f.write("q.json", R"({"left":[[0,1],[2,1]],"right":[[1,2]]})");
  const auto deg = f.write("deg.json", R"({"left":[[0,1],[1,1]],"right":[[0,1],[1,1]]})");
  const Run ok = run({"--format", "json", "verify", line, q, "--p", "2"});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["lhs"] == 4.0);
  const Run no = run({"--format", "json", "verify", line, q, "--p", "1"});
  CHECK(no.code == 2);
  CHECK(json::parse(no.out)["gap"] == 2.0);
  for (const char* p : {"0", "1", "2.5"}) CHECK(run({"verify", line, deg, "--p", p}).code == 1);
}

TEST_CASE("interval") {
  Files f;
  CHECK(run({"interval", f.write("two.json", kTwo)}).out.rfind("∅\n", 0) == 0);
  CHECK(run({"interval", f.write("line.json", kLine)}).out.rfind("[2.0000, ∞)\n", 0) == 0);
  CHECK(run({"interval", f.write("c4.json", kCycle)}).out.rfind("[1.0000, ∞)\n", 0) == 0);
  CHECK(run({"interval", f.path("line.json"), "--cap", "1.5"}).out.rfind("[>1.5, ∞)\n", 0) == 0);
  const Run j = run({"--format", "json", "interval", f.path("two.json")});
  CHECK(json::parse(j.out)["kind"] == "EMPTY");
}

TEST_CASE("gen") {
  const Run c = run({"gen", "cycle", "4"});
  CHECK(c.code == 0);
  CHECK(negtype::io::parse_space(json::parse(c.out)) == negtype::cycle_metric(4));
  const Run u = run({"gen", "ultrametric", "8", "--seed", "7"});
  CHECK(negtype::is_ultrametric(negtype::io::parse_space(json::parse(u.out))));
  CHECK(run({"gen", "ultrametric", "8", "--seed", "7"}).out == u.out);
  CHECK(run({"gen", "ultrametric", "8", "--seed", "8"}).out != u.out);
  const Run p = run({"gen", "points", "5", "--q", "2", "--dim", "3", "--seed", "1"});
  CHECK(p.code == 0);
  CHECK(negtype::io::parse_space(json::parse(p.out)).size() == 5);
  CHECK(run({"gen", "points", "5", "--q", "inf"}).code == 0);
  CHECK(run({"gen", "points", "5", "--q", "0.3"}).code == 3);
  CHECK(run({"gen", "blob", "5"}).code == 3);
  CHECK(run({"gen", "random", "6", "--seed", "3"}).code == 0);
}

TEST_CASE("exit codes do not depend on the output format") {
  Files f;
  const auto line = f.write("line.json", kLine);
  const auto q = f.write("q.json", R"({"left":[[0,1],[2,1]],"right":[[1,2]]})");
  const std::vector<std::vector<std::string>> cmds = {
      {"check", line, "--p", "1"},   {"check", line, "--p", "2"},   {"check", line, "--p", "3"},
      {"supremal", line},            {"witness", line, "--p", "1"}, {"witness", line, "--p", "3"},
      {"witness", line, "--at-supremal"}, {"verify", line, q, "--p", "1"},
      {"verify", line, q, "--p", "2"}, {"interval", line}};
  for (const auto& c : cmds) {
    auto text = c, js = c;
    text.insert(text.begin(), {"--format", "text"});
    js.insert(js.begin(), {"--format", "json"});
    CHECK(run(text).code == run(js).code);
  }
}

TEST_CASE("JSON output is byte-identical across runs") {
  Files f;
  const auto c4 = f.write("c4.json", kCycle);
  for (const std::vector<std::string>& c :
       std::vector<std::vector<std::string>>{{"--format", "json", "supremal", c4},
                                             {"--format", "json", "witness", c4, "--at-supremal"},
                                             {"--format", "json", "check", c4, "--p", "1.5"}}) {
    CHECK(run(c).out == run(c).out);
  }
}

TEST_CASE("--out writes the report to a file") {
  Files f;
  const auto line = f.write("line.json", kLine);
  const auto dest = f.path("report.json");
  const Run r = run({"--format", "json", "--out", dest, "check", line, "--p", "3"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  std::ifstream in(dest);
  const json j = json::parse(in);
  CHECK(j["classification"] == "NOT_NEG_TYPE");
}
