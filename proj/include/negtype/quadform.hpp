#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "negtype/matrix.hpp"
#include "negtype/metric.hpp"

namespace negtype {

/// Vector in the zero-sum hyperplane F0.
class BalancedVector {
 public:
  BalancedVector() = default;

  /// Throws NotBalanced unless |sum| <= kBalanceRelTol * max|w_i|.
  static BalancedVector from(std::vector<double> weights);
  /// Orthogonal projection onto F0 (subtracts the mean).
  static BalancedVector projected(std::vector<double> weights);
  /// No check; the caller has already established the zero sum.
  static BalancedVector trusted(std::vector<double> weights) { return BalancedVector(std::move(weights)); }

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> values() const noexcept { return w_; }
  double norm() const;

  bool operator==(const BalancedVector&) const = default;

 private:
  explicit BalancedVector(std::vector<double> w) : w_(std::move(w)) {}
  std::vector<double> w_;
};

inline constexpr double kBalanceRelTol = 1e-12;

/// Orthonormal basis of F0 in R^m (Helmert vectors): vector k has
/// 1/sqrt((k+1)(k+2)) on its first k+1 entries and -(k+1)/sqrt((k+1)(k+2))
/// at index k+1.
std::vector<BalancedVector> balanced_basis(std::size_t m);

/// <D_p xi, xi> summed over all ordered pairs.
double quad_form(const MetricSpace& space, double p, const BalancedVector& xi);
double quad_form(const PowerMatrix& dp, std::span<const double> xi);

/// B^T D B for the Helmert basis B; (m-1) x (m-1), symmetric.
Matrix restricted_matrix(const Matrix& d);

enum class Classification { Strict, Boundary, NotNegType };

struct QuadFormReport {
  double p = 0.0;
  double lambda_max = 0.0;
  Classification classification = Classification::Strict;
  BalancedVector direction;  // unit vector in F0 attaining lambda_max
  double tolerance = 0.0;    // epsilon used for the three-way split
};

inline constexpr double kClassifyRelTol = 1e-9;

/// Largest eigenvalue of the form restricted to F0 and the three-way split
/// STRICT (< -eps), BOUNDARY (|.| <= eps), NOT_NEG_TYPE (> eps), where
/// eps = rel_tol * max |restricted entry|. The eigenproblem is solved on the
/// space rescaled to unit diameter; lambda_max and eps are reported in the
/// original units (they scale by c^p).
QuadFormReport classify(const MetricSpace& space, double p, double rel_tol = kClassifyRelTol);

/// Largest restricted eigenvalue of the unit-diameter rescaling of `space`.
/// Same sign as the unscaled value; used by bisection.
double normalized_lambda_max(const MetricSpace& space, double p);

enum class SupremalStatus { Finite, InfiniteUltrametric, ExceedsCap };

struct SupremalOptions {
  double cap = 64.0;
  double width_tol = 1e-10;
};

struct SupremalResult {
  SupremalStatus status = SupremalStatus::Finite;
  double lo = 0.0;  // bracket for the supremal exponent (FINITE only)
  double hi = 0.0;
  double cap = 64.0;
  double width_tol = 1e-10;
  std::size_t evaluations = 0;

  double midpoint() const noexcept { return 0.5 * (lo + hi); }
};

/// Supremal p-negative type. Ultrametric spaces short-circuit to
/// INFINITE_ULTRAMETRIC; otherwise lambda_max is sampled at p = 1, 2, 4, ...
/// up to `cap` and the first sign change is bisected to `width_tol`.
SupremalResult supremal(const MetricSpace& space, SupremalOptions opts = {});

/// True iff the space is of 2-negative type (supremal exponent >= 2).
bool hilbert_embeddable(const MetricSpace& space);

}  // namespace negtype
