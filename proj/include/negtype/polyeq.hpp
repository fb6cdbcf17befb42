#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "negtype/metric.hpp"
#include "negtype/quadform.hpp"

namespace negtype {

struct WeightedPoint {
  std::size_t index = 0;
  double weight = 0.0;
  bool operator==(const WeightedPoint&) const = default;
};

/// Signed (s,t)-simplex [x_i(m_i); y_j(n_j)]. Points may repeat and weights
/// may have any sign; weight balance is checked where it matters.
struct SignedSimplex {
  std::vector<WeightedPoint> left;
  std::vector<WeightedPoint> right;
  bool operator==(const SignedSimplex&) const = default;
};

enum class ReducedKind { Degenerate, CompletelyRefined };

struct ReducedForm {
  ReducedKind kind = ReducedKind::Degenerate;
  std::optional<SignedSimplex> simplex;  // set iff CompletelyRefined
};

enum class WitnessMethod { Ivt, Kernel, Inverse, EigenDirection };

struct WitnessReport {
  double p = 0.0;
  BalancedVector xi;       // unit length, zero sum
  SignedSimplex simplex;   // completely refined, induced by xi
  double residual = 0.0;   // |<D_p xi, xi>|
  WitnessMethod method = WitnessMethod::Ivt;
  double lhs = 0.0;        // cross-side sum of the polygonal equality
  double rhs = 0.0;        // same-side sums
};

/// gamma_p(Q): cross-side sum minus both same-side sums, evaluated term by
/// term from the distances (0^p = 0 for repeated points).
double gap(const MetricSpace& space, double p, const SignedSimplex& q);

/// Left weights minus right weights at each point; unused points get 0.
/// Throws UnbalancedWeights when sum(m) != sum(n) beyond 1e-12 relative.
BalancedVector simplex_to_vector(const MetricSpace& space, const SignedSimplex& q);

/// Sign split of a nonzero balanced vector into a completely refined simplex.
/// Components with |xi_i| <= 1e-12 * max|xi| are dropped; if any are, the
/// right weights are rescaled so both sides still carry equal mass.
SignedSimplex vector_to_simplex(const MetricSpace& space, std::span<const double> xi);

ReducedForm reduce(const MetricSpace& space, const SignedSimplex& q);
bool is_nondegenerate(const MetricSpace& space, const SignedSimplex& q);

struct IvtOptions {
  // Endpoints of the negative direction e_first - e_second.
  std::size_t first = 0;
  std::size_t second = 1;
};

/// Nontrivial p-polygonal equality for a space that is not of p-negative
/// type: walks from e_1 - e_2 (negative form) to the report's extremal
/// direction (positive form) and takes the zero of the quadratic in between.
WitnessReport witness_ivt(const MetricSpace& space, double p, const QuadFormReport& report,
                          IvtOptions opts = {});

/// Witness at the midpoint of a FINITE supremal bracket: null vector of D_p
/// if singular, else D_p^{-1} 1, else the top restricted eigendirection.
WitnessReport witness_at_supremal(const MetricSpace& space, const SupremalResult& sup);

/// Witness at a fixed exponent: IVT when not of p-negative type, the top
/// eigendirection on the boundary, NotApplicable for strict p-negative type.
WitnessReport witness_at(const MetricSpace& space, double p, double rel_tol = kClassifyRelTol);

struct EqualityCheck {
  double p = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;  // absolute threshold applied to |gap|
  bool holds = false;
  bool nontrivial = false;

  bool nontrivial_equality() const noexcept { return holds && nontrivial; }
};

inline constexpr double kVerifyRelTol = 1e-9;

/// Checks the p-polygonal equality for q: holds iff
/// |lhs - rhs| <= rel_tol * max(|lhs|, |rhs|, 1).
EqualityCheck verify_equality(const MetricSpace& space, double p, const SignedSimplex& q,
                              double rel_tol = kVerifyRelTol);

enum class IntervalKind { ClosedRay, Empty, LowerBound };

/// Set of exponents admitting a nontrivial polygonal equality.
struct PolygonalInterval {
  IntervalKind kind = IntervalKind::Empty;
  double lo = 0.0;  // bracket of the left endpoint (ClosedRay), or the cap (LowerBound)
  double hi = 0.0;

  double start() const noexcept { return 0.5 * (lo + hi); }
  std::string text() const;
};

PolygonalInterval polygonal_interval(const SupremalResult& sup);

}  // namespace negtype
