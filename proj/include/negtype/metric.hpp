#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "negtype/matrix.hpp"

namespace negtype {

/// Finite metric space: labelled points and a validated distance matrix.
/// Only constructible through validate_metric (directly or via the
/// generators below), so every instance satisfies the metric axioms.
class MetricSpace {
 public:
  std::size_t size() const noexcept { return dist_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Matrix& dist() const noexcept { return dist_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_(i, j); }
  double max_distance() const noexcept { return max_distance_; }
  bool operator==(const MetricSpace&) const = default;

 private:
  friend MetricSpace validate_metric(std::vector<std::string>, Matrix);
  MetricSpace(std::vector<std::string> labels, Matrix dist, double max_distance)
      : labels_(std::move(labels)), dist_(std::move(dist)), max_distance_(max_distance) {}

  std::vector<std::string> labels_;
  Matrix dist_;
  double max_distance_ = 0.0;
};

/// p-distance matrix: entries d(x_i, x_j)^p, with a zero diagonal for every
/// p >= 0 (so D_0 is the discrete-metric matrix).
struct PowerMatrix {
  double p = 0.0;
  Matrix entries;
};

/// Relative tolerance applied to symmetry, triangle and ultrametric checks.
inline constexpr double kMetricRelTol = 1e-12;

/// Validates and builds a metric space. Empty `labels` default to x1..xm.
/// Throws Error with NotSquare, DimensionTooSmall, LabelCountMismatch,
/// NonFiniteEntry, NonzeroDiagonal(i), AsymmetricEntry(i,j),
/// NonpositiveDistance(i,j) or TriangleViolation(i,j,k).
MetricSpace validate_metric(std::vector<std::string> labels, Matrix dist);
MetricSpace validate_metric(std::vector<std::string> labels,
                            const std::vector<std::vector<double>>& rows);

PowerMatrix power_matrix(const MetricSpace& space, double p);

bool is_ultrametric(const MetricSpace& space);

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
};

/// Shortest-path metric of a connected graph on vertices 0..n-1.
/// Parallel edges keep the lightest; self-loops are ignored.
MetricSpace from_graph(std::size_t n, std::span<const WeightedEdge> edges);

/// Pairwise l_q distances; q >= 1 or q = +infinity.
MetricSpace from_points(const std::vector<std::vector<double>>& coords, double q);

/// Random dendrogram metric: n singletons merged pairwise at strictly
/// increasing heights; d(x, y) is the height of their lowest common merge.
MetricSpace random_ultrametric(std::size_t n, std::uint64_t seed);

/// Shortest-path metric of a random connected graph (random spanning tree
/// plus extra edges), edge weights in [0.5, 2).
MetricSpace random_graph_metric(std::size_t n, std::uint64_t seed);

/// n uniform points in [0,1)^dim under the l_q norm.
MetricSpace random_points(std::size_t n, std::size_t dim, double q, std::uint64_t seed);

MetricSpace cycle_metric(std::size_t n);
MetricSpace path_metric(std::size_t n);
MetricSpace complete_metric(std::size_t n);

/// The space with every distance multiplied by c > 0.
MetricSpace scaled(const MetricSpace& space, double c);

/// Relabelled copy: point k of the result is point perm[k] of `space`.
MetricSpace permuted(const MetricSpace& space, std::span<const std::size_t> perm);

}  // namespace negtype
