#include "negtype/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eigen_util.hpp"
#include "negtype/error.hpp"
#include "negtype/kernels.hpp"

namespace negtype {

BalancedVector BalancedVector::from(std::vector<double> weights) {
  double inf_norm = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) throw Error(Errc::NotBalanced, "vector has non-finite components");
    inf_norm = std::max(inf_norm, std::abs(w));
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(sum) > kBalanceRelTol * inf_norm)
    throw Error(Errc::NotBalanced, "components sum to " + std::to_string(sum));
  return BalancedVector(std::move(weights));
}

BalancedVector BalancedVector::projected(std::vector<double> weights) {
  if (weights.empty()) return BalancedVector();
  const double mean =
      std::accumulate(weights.begin(), weights.end(), 0.0) / static_cast<double>(weights.size());
  for (double& w : weights) w -= mean;
  return BalancedVector(std::move(weights));
}

double BalancedVector::norm() const { return std::sqrt(kernels::dot(w_, w_)); }

std::vector<BalancedVector> balanced_basis(std::size_t m) {
  if (m < 2) throw Error(Errc::DimensionTooSmall, "F0 is trivial for m < 2");
  std::vector<BalancedVector> basis;
  basis.reserve(m - 1);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double kk = static_cast<double>(k + 1);
    const double scale = 1.0 / std::sqrt(kk * (kk + 1.0));
    std::vector<double> v(m, 0.0);
    std::fill_n(v.begin(), k + 1, scale);
    v[k + 1] = -kk * scale;
    basis.push_back(BalancedVector::from(std::move(v)));
  }
  return basis;
}

double quad_form(const PowerMatrix& dp, std::span<const double> xi) {
  if (xi.size() != dp.entries.size())
    throw Error(Errc::LengthMismatch, "vector length " + std::to_string(xi.size()) +
                                          " vs space size " + std::to_string(dp.entries.size()));
  return kernels::quad_form(dp.entries.flat(), xi);
}

double quad_form(const MetricSpace& space, double p, const BalancedVector& xi) {
  if (xi.size() != space.size())
    throw Error(Errc::LengthMismatch, "vector length " + std::to_string(xi.size()) +
                                          " vs space size " + std::to_string(space.size()));
  return quad_form(power_matrix(space, p), xi.values());
}

Matrix restricted_matrix(const Matrix& d) {
  const std::size_t m = d.size();
  const auto basis = balanced_basis(m);
  const std::size_t r = m - 1;

  std::vector<std::vector<double>> db(r, std::vector<double>(m));
  for (std::size_t k = 0; k < r; ++k) kernels::gemv(d.flat(), basis[k].values(), db[k]);

  Matrix out(r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = k; l < r; ++l) {
      const double a = kernels::dot(basis[k].values(), db[l]);
      const double b = kernels::dot(basis[l].values(), db[k]);
      out(k, l) = out(l, k) = 0.5 * (a + b);
    }
  return out;
}

namespace {

Matrix normalized_power(const MetricSpace& space, double p) {
  if (!(p >= 0.0) || !std::isfinite(p))
    throw Error(Errc::NegativeExponent, "exponent must be a finite value >= 0");
  const std::size_t m = space.size();
  const double inv = 1.0 / space.max_distance();
  Matrix out(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double r = space(i, j) * inv;
      out(i, j) = out(j, i) = p == 0.0 ? 1.0 : p == 1.0 ? r : std::pow(r, p);
    }
  return out;
}

}  // namespace

double normalized_lambda_max(const MetricSpace& space, double p) {
  const Matrix m = restricted_matrix(normalized_power(space, p));
  const auto eig = detail::symmetric_eigen(m, false);
  return eig.values(eig.values.size() - 1);
}

QuadFormReport classify(const MetricSpace& space, double p, double rel_tol) {
  if (!(rel_tol >= 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be >= 0");
  const Matrix restricted = restricted_matrix(normalized_power(space, p));
  const auto eig = detail::symmetric_eigen(restricted, true);
  const Eigen::Index top = eig.values.size() - 1;
  const double lambda = eig.values(top);
  const double eps = rel_tol * kernels::max_abs(restricted.flat());

  const std::size_t m = space.size();
  const auto basis = balanced_basis(m);
  std::vector<double> dir(m, 0.0);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double c = eig.vectors(static_cast<Eigen::Index>(k), top);
    for (std::size_t i = 0; i < m; ++i) dir[i] += c * basis[k][i];
  }
  detail::canonical_sign(dir);

  QuadFormReport report;
  report.p = p;
  report.classification = lambda < -eps  ? Classification::Strict
                          : lambda > eps ? Classification::NotNegType
                                         : Classification::Boundary;
  const double unscale = std::pow(space.max_distance(), p);
  report.lambda_max = lambda * unscale;
  report.tolerance = eps * unscale;
  report.direction = BalancedVector::projected(std::move(dir));
  return report;
}

SupremalResult supremal(const MetricSpace& space, SupremalOptions opts) {
  if (!(opts.cap > 0.0) || !std::isfinite(opts.cap))
    throw Error(Errc::InvalidCap, "cap must be a positive finite exponent");
  if (!(opts.width_tol > 0.0)) throw Error(Errc::InvalidArgument, "width tolerance must be positive");

  SupremalResult out;
  out.cap = opts.cap;
  out.width_tol = opts.width_tol;
  if (is_ultrametric(space)) {
    out.status = SupremalStatus::InfiniteUltrametric;
    out.lo = out.hi = std::numeric_limits<double>::infinity();
    return out;
  }

  auto positive = [&](double p) {
    ++out.evaluations;
    return normalized_lambda_max(space, p) > 0.0;
  };

  // lambda_max(0) = -1 on the unit-diameter space, so 0 is always a valid lower end.
  double lo = 0.0;
  double hi = std::numeric_limits<double>::quiet_NaN();
  for (double p = std::min(1.0, opts.cap);; p = std::min(2.0 * p, opts.cap)) {
    if (positive(p)) {
      hi = p;
      break;
    }
    lo = p;
    if (p >= opts.cap) break;
  }
  if (std::isnan(hi)) {
    out.status = SupremalStatus::ExceedsCap;
    out.lo = opts.cap;
    out.hi = std::numeric_limits<double>::infinity();
    return out;
  }

  while (hi - lo > opts.width_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (positive(mid))
      hi = mid;
    else
      lo = mid;
  }
  out.status = SupremalStatus::Finite;
  out.lo = lo;
  out.hi = hi;
  return out;
}

bool hilbert_embeddable(const MetricSpace& space) {
  return classify(space, 2.0).classification != Classification::NotNegType;
}

}  // namespace negtype
