#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "generators.hpp"
#include "negtype/error.hpp"
#include "negtype/metric.hpp"

using namespace negtype;

namespace {

template <class F>
Error capture_error(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected negtype::Error");
  return Error(Errc::InvalidArgument, "unreachable");
}

}  // namespace

TEST_CASE("validate_metric accepts the two-point space") {
  const MetricSpace x = validate_metric({"a", "b"}, {{0, 1}, {1, 0}});
  CHECK(x.size() == 2);
  CHECK(x.labels() == std::vector<std::string>{"a", "b"});
  CHECK(x(0, 1) == 1.0);
  CHECK(x.max_distance() == 1.0);
}

TEST_CASE("validate_metric defaults labels") {
  const MetricSpace x = validate_metric({}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(x.labels() == std::vector<std::string>{"x1", "x2", "x3"});
}

TEST_CASE("validate_metric names the offending indices") {
  SUBCASE("asymmetric") {
    const Error e = capture_error([] { validate_metric({}, {{0, 1}, {2, 0}}); });
    CHECK(e.code() == Errc::AsymmetricEntry);
    CHECK(e.indices() == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("triangle") {
    const Error e = capture_error([] { validate_metric({}, {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}); });
    CHECK(e.code() == Errc::TriangleViolation);
    CHECK(e.indices() == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("not square") {
    const Error e = capture_error([] { validate_metric({}, {{0, 1}, {1}}); });
    CHECK(e.code() == Errc::NotSquare);
  }
  SUBCASE("nonzero diagonal") {
    const Error e = capture_error([] { validate_metric({}, {{0, 1}, {1, 0.5}}); });
    CHECK(e.code() == Errc::NonzeroDiagonal);
    CHECK(e.indices() == std::vector<std::size_t>{1});
  }
  SUBCASE("nonpositive distance") {
    const Error e = capture_error([] { validate_metric({}, {{0, 0, 1}, {0, 0, 1}, {1, 1, 0}}); });
    CHECK(e.code() == Errc::NonpositiveDistance);
    CHECK(e.indices() == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("too small") {
    CHECK(capture_error([] { validate_metric({}, std::vector<std::vector<double>>{{0.0}}); }).code() == Errc::DimensionTooSmall);
  }
  SUBCASE("label count") {
    CHECK(capture_error([] { validate_metric({"a"}, {{0, 1}, {1, 0}}); }).code() ==
          Errc::LabelCountMismatch);
  }
  SUBCASE("non-finite") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(capture_error([&] { validate_metric({}, {{0, inf}, {inf, 0}}); }).code() ==
          Errc::NonFiniteEntry);
  }
}

TEST_CASE("validation tolerance is relative to the largest entry") {
  // Asymmetry of 1e-3 is below 1e-12 * 1e12 but far above an absolute 1e-12.
  CHECK_NOTHROW(validate_metric({}, {{0, 1e12}, {1e12 + 1e-3, 0}}));
  // The same relative slack on a unit-scale triangle is accepted.
  CHECK_NOTHROW(validate_metric({}, {{0, 1, 2 + 1e-13}, {1, 0, 1}, {2 + 1e-13, 1, 0}}));
}

TEST_CASE("power_matrix") {
  const MetricSpace line = path_metric(3);
  SUBCASE("p = 2 squares entries") {
    const PowerMatrix d2 = power_matrix(line, 2.0);
    Matrix expected(3);
    const double e[3][3] = {{0, 1, 4}, {1, 0, 1}, {4, 1, 0}};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) expected(i, j) = e[i][j];
    CHECK(d2.entries == expected);
    CHECK(d2.p == 2.0);
  }
  SUBCASE("p = 0 is the discrete metric") {
    const MetricSpace x = testgen::random_space(6, 11);
    const PowerMatrix d0 = power_matrix(x, 0.0);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) CHECK(d0.entries(i, j) == (i == j ? 0.0 : 1.0));
  }
  SUBCASE("p = 1 is the distance matrix") {
    const MetricSpace x = testgen::random_space(5, 3);
    CHECK(power_matrix(x, 1.0).entries == x.dist());
  }
  SUBCASE("negative exponent") {
    CHECK(capture_error([&] { power_matrix(line, -0.5); }).code() == Errc::NegativeExponent);
  }
}

TEST_CASE("is_ultrametric") {
  CHECK(is_ultrametric(complete_metric(3)));
  CHECK_FALSE(is_ultrametric(path_metric(3)));
  CHECK(is_ultrametric(validate_metric({}, {{0, 3.7}, {3.7, 0}})));
  CHECK_FALSE(is_ultrametric(cycle_metric(4)));
}

TEST_CASE("from_graph") {
  SUBCASE("4-cycle") {
    const MetricSpace c4 = cycle_metric(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const std::size_t hop = (j + 4 - i) % 4;
        CHECK(c4(i, j) == (hop == 0 ? 0.0 : hop == 2 ? 2.0 : 1.0));
      }
  }
  SUBCASE("path on 3 vertices is the collinear triple") {
    const MetricSpace p3 = path_metric(3);
    CHECK(p3(0, 1) == 1.0);
    CHECK(p3(1, 2) == 1.0);
    CHECK(p3(0, 2) == 2.0);
  }
  SUBCASE("disconnected") {
    const std::vector<WeightedEdge> edges{{0, 1, 1.0}, {2, 3, 1.0}};
    CHECK(capture_error([&] { from_graph(4, edges); }).code() == Errc::DisconnectedGraph);
  }
  SUBCASE("nonpositive weight") {
    const std::vector<WeightedEdge> edges{{0, 1, 0.0}};
    CHECK(capture_error([&] { from_graph(2, edges); }).code() == Errc::NonpositiveWeight);
  }
  SUBCASE("parallel edges keep the lightest") {
    const std::vector<WeightedEdge> edges{{0, 1, 3.0}, {1, 0, 2.0}};
    CHECK(from_graph(2, edges)(0, 1) == 2.0);
  }
}

TEST_CASE("from_points") {
  SUBCASE("line under l2") {
    const MetricSpace x = from_points({{0.0}, {1.0}, {2.0}}, 2.0);
    CHECK(x.dist() == path_metric(3).dist());
  }
  SUBCASE("unit square under l1 matches the 4-cycle") {
    const MetricSpace sq = from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 1.0);
    CHECK(sq.dist() == cycle_metric(4).dist());
  }
  SUBCASE("l_inf and l3") {
    const MetricSpace a = from_points({{0, 0}, {3, 4}}, std::numeric_limits<double>::infinity());
    CHECK(a(0, 1) == 4.0);
    const MetricSpace b = from_points({{0, 0}, {1, 1}}, 3.0);
    CHECK(b(0, 1) == doctest::Approx(std::cbrt(2.0)));
  }
  SUBCASE("errors") {
    CHECK(capture_error([] { from_points({{1, 2}, {1, 2}}, 2.0); }).code() == Errc::DuplicatePoint);
    CHECK(capture_error([] { from_points({{0}, {1}}, 0.5); }).code() == Errc::InvalidNormOrder);
  }
}

TEST_CASE("random_ultrametric") {
  CHECK(random_ultrametric(2, 5).size() == 2);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const MetricSpace u = random_ultrametric(2 + seed % 9, seed);
    CHECK(is_ultrametric(u));
  }
  CHECK(random_ultrametric(8, 7).dist() == random_ultrametric(8, 7).dist());
  CHECK_FALSE(random_ultrametric(8, 7).dist() == random_ultrametric(8, 8).dist());
}

TEST_CASE("generated spaces are deterministic and valid") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const MetricSpace a = testgen::random_space(2 + seed % 10, seed);
    const MetricSpace b = testgen::random_space(2 + seed % 10, seed);
    CHECK(a.dist() == b.dist());
    CHECK_NOTHROW(validate_metric({}, a.dist()));
  }
  CHECK(random_graph_metric(7, 1).dist() == random_graph_metric(7, 1).dist());
  CHECK(random_points(5, 3, 2.0, 9).dist() == random_points(5, 3, 2.0, 9).dist());
}

TEST_CASE("path graph distances are exact integers") {
  const MetricSpace p = path_metric(12);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j)
      CHECK(p(i, j) == static_cast<double>(i > j ? i - j : j - i));
}

TEST_CASE("power matrix monotone in p for distances >= 1, zero diagonal") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MetricSpace x = testgen::random_space(6, seed);
    // rescale so the smallest distance is at least 1
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j) dmin = std::min(dmin, x(i, j));
    const MetricSpace y = scaled(x, 1.000001 / dmin);
    double prev_p = 0.0;
    PowerMatrix prev = power_matrix(y, prev_p);
    for (double p : {0.3, 1.0, 1.7, 2.0, 4.5}) {
      const PowerMatrix cur = power_matrix(y, p);
      for (std::size_t i = 0; i < 6; ++i) {
        CHECK(cur.entries(i, i) == 0.0);
        for (std::size_t j = 0; j < 6; ++j) CHECK(cur.entries(i, j) >= prev.entries(i, j));
      }
      prev = cur;
    }
  }
}

TEST_CASE("permutation equivariance") {
  const MetricSpace x = testgen::random_space(7, 42);
  std::vector<std::size_t> perm(7);
  std::iota(perm.begin(), perm.end(), 0);
  std::rotate(perm.begin(), perm.begin() + 3, perm.end());
  std::swap(perm[0], perm[5]);
  const MetricSpace y = permuted(x, perm);
  const PowerMatrix dx = power_matrix(x, 1.3);
  const PowerMatrix dy = power_matrix(y, 1.3);
  for (std::size_t a = 0; a < 7; ++a) {
    CHECK(y.labels()[a] == x.labels()[perm[a]]);
    for (std::size_t b = 0; b < 7; ++b) {
      CHECK(y(a, b) == x(perm[a], perm[b]));
      CHECK(dy.entries(a, b) == dx.entries(perm[a], perm[b]));
    }
  }
}
