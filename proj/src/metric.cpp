#include "negtype/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "negtype/error.hpp"
#include "negtype/kernels.hpp"
#include "negtype/rng.hpp"

namespace negtype {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

std::vector<std::string> default_labels(std::size_t m) {
  std::vector<std::string> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

}  // namespace

MetricSpace validate_metric(std::vector<std::string> labels, Matrix dist) {
  const std::size_t m = dist.size();
  if (m < 2) throw Error(Errc::DimensionTooSmall, "a metric space needs at least 2 points");
  if (labels.empty()) labels = default_labels(m);
  if (labels.size() != m)
    throw Error(Errc::LabelCountMismatch,
                std::to_string(labels.size()) + " labels for " + std::to_string(m) + " points");

  double max_entry = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double v = dist(i, j);
      if (!std::isfinite(v))
        throw Error(Errc::NonFiniteEntry, "entry (" + idx(i) + "," + idx(j) + ") is not finite",
                    {i, j});
      max_entry = std::max(max_entry, std::abs(v));
    }
  const double tol = kMetricRelTol * max_entry;

  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(dist(i, i)) > tol)
      throw Error(Errc::NonzeroDiagonal, "d(" + idx(i) + "," + idx(i) + ") != 0", {i});
    dist(i, i) = 0.0;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (std::abs(dist(i, j) - dist(j, i)) > tol)
        throw Error(Errc::AsymmetricEntry, "d(" + idx(i) + "," + idx(j) + ") != d(" + idx(j) +
                                               "," + idx(i) + ")",
                    {i, j});
      const double v = 0.5 * (dist(i, j) + dist(j, i));
      dist(i, j) = dist(j, i) = v;
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && !(dist(i, j) > 0.0))
        throw Error(Errc::NonpositiveDistance,
                    "d(" + idx(i) + "," + idx(j) + ") must be positive", {std::min(i, j), std::max(i, j)});

  const auto& k = kernels::active();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (k.max_triangle_excess(dist.row(i).data(), dist.row(j).data(), dist(i, j), m) <= tol)
        continue;
      for (std::size_t l = 0; l < m; ++l)
        if (dist(i, l) - dist(i, j) - dist(j, l) > tol)
          throw Error(Errc::TriangleViolation,
                      "d(" + idx(i) + "," + idx(l) + ") > d(" + idx(i) + "," + idx(j) + ") + d(" +
                          idx(j) + "," + idx(l) + ")",
                      {i, j, l});
    }

  double max_distance = kernels::max_abs(dist.flat());
  return MetricSpace(std::move(labels), std::move(dist), max_distance);
}

MetricSpace validate_metric(std::vector<std::string> labels,
                            const std::vector<std::vector<double>>& rows) {
  const std::size_t m = rows.size();
  Matrix dist(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != m)
      throw Error(Errc::NotSquare, "row " + idx(i) + " has " + std::to_string(rows[i].size()) +
                                       " entries, expected " + std::to_string(m),
                  {i});
    std::copy(rows[i].begin(), rows[i].end(), dist.row(i).begin());
  }
  return validate_metric(std::move(labels), std::move(dist));
}

PowerMatrix power_matrix(const MetricSpace& space, double p) {
  if (!(p >= 0.0) || !std::isfinite(p))
    throw Error(Errc::NegativeExponent, "exponent must be a finite value >= 0");
  const std::size_t m = space.size();
  PowerMatrix out{p, Matrix(m)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = p == 0.0 ? 1.0 : p == 1.0 ? space(i, j) : std::pow(space(i, j), p);
      out.entries(i, j) = out.entries(j, i) = v;
    }
  return out;
}

bool is_ultrametric(const MetricSpace& space) {
  const std::size_t m = space.size();
  const double tol = kMetricRelTol * space.max_distance();
  const auto& k = kernels::active();
  const Matrix& d = space.dist();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (k.max_ultrametric_excess(d.row(i).data(), d.row(j).data(), d(i, j), m) > tol)
        return false;
  return true;
}

MetricSpace from_graph(std::size_t n, std::span<const WeightedEdge> edges) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "graph needs at least 2 vertices");
  constexpr double inf = std::numeric_limits<double>::infinity();
  Matrix d(n, inf);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 0.0;
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n)
      throw Error(Errc::IndexOutOfRange,
                  "edge (" + idx(e.u) + "," + idx(e.v) + ") outside 0.." + idx(n - 1), {e.u, e.v});
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw Error(Errc::NonpositiveWeight,
                  "edge (" + idx(e.u) + "," + idx(e.v) + ") has weight " + std::to_string(e.weight),
                  {e.u, e.v});
    if (e.u == e.v) continue;
    d(e.u, e.v) = d(e.v, e.u) = std::min(d(e.u, e.v), e.weight);
  }

  const auto& k = kernels::active();
  for (std::size_t via = 0; via < n; ++via)
    for (std::size_t i = 0; i < n; ++i)
      if (d(i, via) < inf) k.relax_min(d.row(i).data(), d.row(via).data(), d(i, via), n);

  for (std::size_t j = 1; j < n; ++j)
    if (d(0, j) == inf)
      throw Error(Errc::DisconnectedGraph, "vertex " + idx(j) + " is unreachable from vertex 0",
                  {0, j});
  return validate_metric({}, std::move(d));
}

MetricSpace from_points(const std::vector<std::vector<double>>& coords, double q) {
  if (std::isnan(q) || q < 1.0) throw Error(Errc::InvalidNormOrder, "norm order must be >= 1 or inf");
  const std::size_t n = coords.size();
  if (n < 2) throw Error(Errc::DimensionTooSmall, "need at least 2 points");
  const std::size_t dim = coords.front().size();
  if (dim == 0) throw Error(Errc::InvalidArgument, "points must have at least one coordinate");
  for (std::size_t i = 0; i < n; ++i) {
    if (coords[i].size() != dim)
      throw Error(Errc::InvalidArgument, "point " + idx(i) + " has dimension " +
                                             std::to_string(coords[i].size()) + ", expected " +
                                             std::to_string(dim),
                  {i});
    for (double c : coords[i])
      if (!std::isfinite(c)) throw Error(Errc::NonFiniteEntry, "point " + idx(i) + " is not finite", {i});
  }

  const bool sup_norm = std::isinf(q);
  Matrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double diff = std::abs(coords[i][c] - coords[j][c]);
        if (sup_norm)
          acc = std::max(acc, diff);
        else if (q == 1.0)
          acc += diff;
        else if (q == 2.0)
          acc += diff * diff;
        else
          acc += std::pow(diff, q);
      }
      if (!sup_norm && q == 2.0)
        acc = std::sqrt(acc);
      else if (!sup_norm && q != 1.0)
        acc = std::pow(acc, 1.0 / q);
      if (acc == 0.0)
        throw Error(Errc::DuplicatePoint, "points " + idx(i) + " and " + idx(j) + " coincide",
                    {i, j});
      d(i, j) = d(j, i) = acc;
    }
  return validate_metric({}, std::move(d));
}

MetricSpace random_ultrametric(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "need at least 2 points");
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> clusters(n);
  for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};

  Matrix d(n);
  double height = 0.0;
  while (clusters.size() > 1) {
    height += rng.uniform(0.1, 1.0);
    const std::size_t a = rng.index(clusters.size());
    std::size_t b = rng.index(clusters.size() - 1);
    if (b >= a) ++b;
    for (std::size_t x : clusters[a])
      for (std::size_t y : clusters[b]) d(x, y) = d(y, x) = height;
    clusters[a].insert(clusters[a].end(), clusters[b].begin(), clusters[b].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
  }
  return validate_metric({}, std::move(d));
}

MetricSpace random_graph_metric(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "need at least 2 vertices");
  Rng rng(seed);
  std::vector<WeightedEdge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({rng.index(v), v, rng.uniform(0.5, 2.0)});
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.uniform() < 0.3) edges.push_back({u, v, rng.uniform(0.5, 2.0)});
  return from_graph(n, edges);
}

MetricSpace random_points(std::size_t n, std::size_t dim, double q, std::uint64_t seed) {
  if (dim == 0) throw Error(Errc::InvalidArgument, "dimension must be positive");
  Rng rng(seed);
  std::vector<std::vector<double>> coords(n, std::vector<double>(dim));
  for (auto& pt : coords)
    for (auto& c : pt) c = rng.uniform();
  return from_points(coords, q);
}

MetricSpace cycle_metric(std::size_t n) {
  if (n < 3) throw Error(Errc::DimensionTooSmall, "a cycle needs at least 3 vertices");
  std::vector<WeightedEdge> edges;
  for (std::size_t v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 1.0});
  return from_graph(n, edges);
}

MetricSpace path_metric(std::size_t n) {
  std::vector<WeightedEdge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
  return from_graph(n, edges);
}

MetricSpace complete_metric(std::size_t n) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "need at least 2 points");
  Matrix d(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 0.0;
  return validate_metric({}, std::move(d));
}

MetricSpace scaled(const MetricSpace& space, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(Errc::InvalidArgument, "scale must be positive");
  Matrix d = space.dist();
  for (double& v : d.flat()) v *= c;
  return validate_metric(space.labels(), std::move(d));
}

MetricSpace permuted(const MetricSpace& space, std::span<const std::size_t> perm) {
  const std::size_t m = space.size();
  if (perm.size() != m) throw Error(Errc::LengthMismatch, "permutation length differs from space size");
  std::vector<bool> seen(m, false);
  for (std::size_t k : perm) {
    if (k >= m || seen[k]) throw Error(Errc::InvalidArgument, "not a permutation");
    seen[k] = true;
  }
  Matrix d(m);
  std::vector<std::string> labels(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels[a] = space.labels()[perm[a]];
    for (std::size_t b = 0; b < m; ++b) d(a, b) = space(perm[a], perm[b]);
  }
  return validate_metric(std::move(labels), std::move(d));
}

}  // namespace negtype
