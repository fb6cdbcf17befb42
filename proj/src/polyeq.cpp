#include "negtype/polyeq.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "eigen_util.hpp"
#include "negtype/error.hpp"
#include "negtype/kernels.hpp"

namespace negtype {

namespace {

constexpr double kCleanupRelTol = 1e-12;
constexpr double kIvtResidualRelTol = 1e-9;
constexpr double kSupremalResidualRelTol = 1e-6;
constexpr double kSingularRelTol = 1e-9;
constexpr double kCandidateBalanceRelTol = 1e-6;

// d^p with 0^p = 0 for every p >= 0 (matches the zero diagonal of D_p).
double dpow(double d, double p) {
  if (d == 0.0) return 0.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return d;
  return std::pow(d, p);
}

void check_indices(const MetricSpace& space, const SignedSimplex& q) {
  const std::size_t m = space.size();
  for (const auto* side : {&q.left, &q.right})
    for (const auto& wp : *side)
      if (wp.index >= m)
        throw Error(Errc::IndexOutOfRange,
                    "point " + std::to_string(wp.index) + " outside 0.." + std::to_string(m - 1),
                    {wp.index});
}

void check_exponent(double p) {
  if (!(p >= 0.0) || !std::isfinite(p))
    throw Error(Errc::NegativeExponent, "exponent must be a finite value >= 0");
}

void check_balance(const SignedSimplex& q) {
  double sum_m = 0.0, sum_n = 0.0, abs_m = 0.0, abs_n = 0.0;
  for (const auto& wp : q.left) {
    sum_m += wp.weight;
    abs_m += std::abs(wp.weight);
  }
  for (const auto& wp : q.right) {
    sum_n += wp.weight;
    abs_n += std::abs(wp.weight);
  }
  if (!std::isfinite(sum_m) || !std::isfinite(sum_n) ||
      std::abs(sum_m - sum_n) > kBalanceRelTol * std::max(abs_m, abs_n))
    throw Error(Errc::UnbalancedWeights,
                "left weights sum to " + std::to_string(sum_m) + ", right to " + std::to_string(sum_n));
}

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

Sides polygonal_sides(const MetricSpace& space, double p, const SignedSimplex& q) {
  Sides s;
  for (const auto& x : q.left)
    for (const auto& y : q.right) s.lhs += x.weight * y.weight * dpow(space(x.index, y.index), p);
  for (const auto* side : {&q.left, &q.right})
    for (std::size_t a = 0; a < side->size(); ++a)
      for (std::size_t b = a + 1; b < side->size(); ++b) {
        const auto& u = (*side)[a];
        const auto& v = (*side)[b];
        s.rhs += u.weight * v.weight * dpow(space(u.index, v.index), p);
      }
  return s;
}

std::vector<double> induced_vector(std::size_t m, const SignedSimplex& q) {
  std::vector<double> v(m, 0.0);
  for (const auto& wp : q.left) v[wp.index] += wp.weight;
  for (const auto& wp : q.right) v[wp.index] -= wp.weight;
  return v;
}

SignedSimplex split(std::span<const double> xi, double inf_norm) {
  const double theta = kCleanupRelTol * inf_norm;
  SignedSimplex q;
  bool dropped = false;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i] > theta)
      q.left.push_back({i, xi[i]});
    else if (xi[i] < -theta)
      q.right.push_back({i, -xi[i]});
    else if (xi[i] != 0.0)
      dropped = true;
  }
  if (dropped && !q.left.empty() && !q.right.empty()) {
    double sum_m = 0.0, sum_n = 0.0;
    for (const auto& wp : q.left) sum_m += wp.weight;
    for (const auto& wp : q.right) sum_n += wp.weight;
    const double ratio = sum_m / sum_n;
    for (auto& wp : q.right) wp.weight *= ratio;
  }
  return q;
}

double inf_norm(std::span<const double> v) { return kernels::max_abs(v); }

// Unit-normalizes `raw` in F0, converts it to a refined simplex and back, and
// fills the report. Returns nullopt if the vector vanishes or the residual
// exceeds `tol`.
std::optional<WitnessReport> finalize_witness(const MetricSpace& space, const PowerMatrix& dp,
                                              std::vector<double> raw, WitnessMethod method,
                                              double tol) {
  BalancedVector v = BalancedVector::projected(std::move(raw));
  const double n0 = v.norm();
  if (!(n0 > 0.0) || !std::isfinite(n0)) return std::nullopt;
  std::vector<double> unit(v.values().begin(), v.values().end());
  for (double& x : unit) x /= n0;
  detail::canonical_sign(unit);

  SignedSimplex q = split(unit, inf_norm(unit));
  if (q.left.empty() || q.right.empty()) return std::nullopt;
  BalancedVector xi = simplex_to_vector(space, q);
  const double n1 = xi.norm();
  for (auto* side : {&q.left, &q.right})
    for (auto& wp : *side) wp.weight /= n1;
  xi = simplex_to_vector(space, q);

  WitnessReport w;
  w.p = dp.p;
  w.method = method;
  w.residual = std::abs(quad_form(dp, xi.values()));
  const Sides s = polygonal_sides(space, dp.p, q);
  w.lhs = s.lhs;
  w.rhs = s.rhs;
  w.xi = std::move(xi);
  w.simplex = std::move(q);
  if (!(w.residual <= tol)) return std::nullopt;
  return w;
}

double max_entry(const PowerMatrix& dp) { return kernels::max_abs(dp.entries.flat()); }

}  // namespace

double gap(const MetricSpace& space, double p, const SignedSimplex& q) {
  check_exponent(p);
  check_indices(space, q);
  const Sides s = polygonal_sides(space, p, q);
  return s.lhs - s.rhs;
}

BalancedVector simplex_to_vector(const MetricSpace& space, const SignedSimplex& q) {
  check_indices(space, q);
  check_balance(q);
  return BalancedVector::trusted(induced_vector(space.size(), q));
}

SignedSimplex vector_to_simplex(const MetricSpace& space, std::span<const double> xi) {
  if (xi.size() != space.size())
    throw Error(Errc::LengthMismatch, "vector length " + std::to_string(xi.size()) +
                                          " vs space size " + std::to_string(space.size()));
  const double norm = inf_norm(xi);
  if (!std::isfinite(norm)) throw Error(Errc::NotBalanced, "vector has non-finite components");
  if (norm == 0.0) throw Error(Errc::ZeroVector, "cannot split the zero vector");
  double sum = 0.0;
  for (double x : xi) sum += x;
  if (std::abs(sum) > kBalanceRelTol * norm)
    throw Error(Errc::NotBalanced, "components sum to " + std::to_string(sum));
  return split(xi, norm);
}

ReducedForm reduce(const MetricSpace& space, const SignedSimplex& q) {
  check_indices(space, q);
  check_balance(q);
  double weight_scale = 0.0;
  for (const auto* side : {&q.left, &q.right})
    for (const auto& wp : *side) weight_scale = std::max(weight_scale, std::abs(wp.weight));

  const std::vector<double> v = induced_vector(space.size(), q);
  const double norm = inf_norm(v);
  if (norm <= kCleanupRelTol * weight_scale) return {ReducedKind::Degenerate, std::nullopt};
  SignedSimplex refined = split(v, norm);
  if (refined.left.empty() || refined.right.empty()) return {ReducedKind::Degenerate, std::nullopt};
  return {ReducedKind::CompletelyRefined, std::move(refined)};
}

bool is_nondegenerate(const MetricSpace& space, const SignedSimplex& q) {
  return reduce(space, q).kind == ReducedKind::CompletelyRefined;
}

WitnessReport witness_ivt(const MetricSpace& space, double p, const QuadFormReport& report,
                          IvtOptions opts) {
  check_exponent(p);
  const std::size_t m = space.size();
  if (report.classification != Classification::NotNegType)
    throw Error(Errc::NotApplicable, "space is of " + std::to_string(p) + "-negative type");
  if (report.direction.size() != m)
    throw Error(Errc::LengthMismatch, "report direction does not match the space");
  if (opts.first >= m || opts.second >= m || opts.first == opts.second)
    throw Error(Errc::InvalidArgument, "IVT anchor pair must be two distinct points",
                {opts.first, opts.second});

  const PowerMatrix dp = power_matrix(space, p);
  const std::span<const double> xi1 = report.direction.values();
  std::vector<double> d_xi1(m);
  kernels::gemv(dp.entries.flat(), xi1, d_xi1);

  // q(t) = <D xi_t, xi_t>,  xi_t = (1-t) xi0 + t xi1,  xi0 = e_a - e_b
  const double a0 = -2.0 * dp.entries(opts.first, opts.second);
  const double a1 = kernels::dot(xi1, d_xi1);
  const double c = d_xi1[opts.first] - d_xi1[opts.second];
  if (!(a1 > 0.0) || !(a0 < 0.0))
    throw Error(Errc::NoRootInUnitInterval, "endpoint forms do not change sign");

  const double qa = a0 - 2.0 * c + a1;
  const double qb = 2.0 * (c - a0);
  const double qc = a0;
  const double scale = std::max({std::abs(a0), std::abs(a1), std::abs(c)});

  std::vector<double> roots;
  if (std::abs(qa) <= 1e-14 * scale) {
    roots.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) throw Error(Errc::NoRootInUnitInterval, "quadratic has no real root");
    const double h = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
    roots.push_back(h / qa);
    if (h != 0.0) roots.push_back(qc / h);
  }
  double s = std::numeric_limits<double>::infinity();
  for (double r : roots)
    if (r > 0.0 && r < 1.0) s = std::min(s, r);
  if (!std::isfinite(s)) throw Error(Errc::NoRootInUnitInterval, "no root of q(t) in (0,1)");

  std::vector<double> xs(m);
  for (std::size_t i = 0; i < m; ++i) xs[i] = s * xi1[i];
  xs[opts.first] += 1.0 - s;
  xs[opts.second] -= 1.0 - s;
  // xi_s = 0 would force xi1 to be a multiple of e_a - e_b, whose form is negative.
  if (inf_norm(xs) == 0.0) throw Error(Errc::NoRootInUnitInterval, "xi_s vanished");

  const double tol = kIvtResidualRelTol * std::max(1.0, max_entry(dp));
  auto w = finalize_witness(space, dp, std::move(xs), WitnessMethod::Ivt, tol);
  if (!w) throw Error(Errc::NoRootInUnitInterval, "root of q(t) failed the residual check");
  return std::move(*w);
}

WitnessReport witness_at_supremal(const MetricSpace& space, const SupremalResult& sup) {
  if (sup.status != SupremalStatus::Finite)
    throw Error(Errc::NotApplicable, "supremal exponent is not finite");
  const double p = sup.midpoint();
  const PowerMatrix dp = power_matrix(space, p);
  const std::size_t m = space.size();
  const double tol = kSupremalResidualRelTol * max_entry(dp);

  const auto eig = detail::symmetric_eigen(dp.entries, true);
  double smax = 0.0, smin = std::numeric_limits<double>::infinity();
  Eigen::Index imin = 0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double sv = std::abs(eig.values(k));
    smax = std::max(smax, sv);
    if (sv < smin) {
      smin = sv;
      imin = k;
    }
  }

  auto balanced_enough = [](const std::vector<double>& v) {
    double sum = 0.0, l1 = 0.0;
    for (double x : v) {
      sum += x;
      l1 += std::abs(x);
    }
    return std::abs(sum) <= kCandidateBalanceRelTol * l1;
  };

  if (smin <= kSingularRelTol * smax) {
    std::vector<double> null(m);
    for (std::size_t i = 0; i < m; ++i) null[i] = eig.vectors(static_cast<Eigen::Index>(i), imin);
    if (balanced_enough(null))
      if (auto w = finalize_witness(space, dp, std::move(null), WitnessMethod::Kernel, tol))
        return std::move(*w);
  } else {
    // D^{-1} 1 through the eigendecomposition: V diag(1/lambda) V^T 1
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m));
    const Eigen::VectorXd coef =
        (eig.vectors.transpose() * ones).cwiseQuotient(eig.values);
    const Eigen::VectorXd sol = eig.vectors * coef;
    std::vector<double> inv(sol.data(), sol.data() + sol.size());
    if (balanced_enough(inv))
      if (auto w = finalize_witness(space, dp, std::move(inv), WitnessMethod::Inverse, tol))
        return std::move(*w);
  }

  const QuadFormReport report = classify(space, p);
  std::vector<double> dir(report.direction.values().begin(), report.direction.values().end());
  if (auto w = finalize_witness(space, dp, std::move(dir), WitnessMethod::EigenDirection, tol))
    return std::move(*w);
  throw Error(Errc::NoWitnessFound,
              "no candidate met the residual bound at p = " + std::to_string(p));
}

WitnessReport witness_at(const MetricSpace& space, double p, double rel_tol) {
  const QuadFormReport report = classify(space, p, rel_tol);
  switch (report.classification) {
    case Classification::Strict:
      throw Error(Errc::NotApplicable, "strict p-negative type: no nontrivial p-polygonal equality");
    case Classification::NotNegType:
      return witness_ivt(space, p, report);
    case Classification::Boundary: break;
  }
  const PowerMatrix dp = power_matrix(space, p);
  std::vector<double> dir(report.direction.values().begin(), report.direction.values().end());
  const double tol = kSupremalResidualRelTol * max_entry(dp);
  if (auto w = finalize_witness(space, dp, std::move(dir), WitnessMethod::EigenDirection, tol))
    return std::move(*w);
  throw Error(Errc::NoWitnessFound, "boundary eigendirection failed the residual bound");
}

EqualityCheck verify_equality(const MetricSpace& space, double p, const SignedSimplex& q,
                              double rel_tol) {
  check_exponent(p);
  check_indices(space, q);
  check_balance(q);
  const Sides s = polygonal_sides(space, p, q);
  EqualityCheck out;
  out.p = p;
  out.lhs = s.lhs;
  out.rhs = s.rhs;
  out.gap = s.lhs - s.rhs;
  out.tolerance = rel_tol * std::max({std::abs(s.lhs), std::abs(s.rhs), 1.0});
  out.holds = std::abs(out.gap) <= out.tolerance;
  out.nontrivial = is_nondegenerate(space, q);
  return out;
}

std::string PolygonalInterval::text() const {
  std::array<char, 64> buf{};
  switch (kind) {
    case IntervalKind::Empty: return "∅";
    case IntervalKind::ClosedRay:
      std::snprintf(buf.data(), buf.size(), "[%.4f, ∞)", start());
      return buf.data();
    case IntervalKind::LowerBound:
      std::snprintf(buf.data(), buf.size(), "[>%g, ∞)", lo);
      return buf.data();
  }
  return {};
}

PolygonalInterval polygonal_interval(const SupremalResult& sup) {
  switch (sup.status) {
    case SupremalStatus::Finite: return {IntervalKind::ClosedRay, sup.lo, sup.hi};
    case SupremalStatus::InfiniteUltrametric:
      return {IntervalKind::Empty, std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity()};
    case SupremalStatus::ExceedsCap:
      return {IntervalKind::LowerBound, sup.cap, std::numeric_limits<double>::infinity()};
  }
  return {};
}

}  // namespace negtype
