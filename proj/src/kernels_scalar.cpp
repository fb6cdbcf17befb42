#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace negtype::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

void gemv(const double* a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = dot(a + i * n, x, n);
}

double quad_form(const double* a, const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * dot(a + i * n, x, n);
  return s;
}

double max_triangle_excess(const double* row_i, const double* row_j, double d_ij,
                           std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, row_i[k] - d_ij - row_j[k]);
  return m;
}

double max_ultrametric_excess(const double* row_i, const double* row_j, double d_ij,
                              std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, row_i[k] - std::max(d_ij, row_j[k]));
  return m;
}

void relax_min(double* row_i, const double* row_k, double d_ik, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) row_i[j] = std::min(row_i[j], d_ik + row_k[j]);
}

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(a[k]));
  return m;
}

}  // namespace negtype::kernels::scalar
