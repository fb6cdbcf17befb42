#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace negtype::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
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
  const __m256d dij = _mm256_set1_pd(d_ij);
  __m256d m = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d e = _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(row_i + k), dij),
                              _mm256_loadu_pd(row_j + k));
    m = _mm256_max_pd(m, e);
  }
  double r = hmax(m);
  for (; k < n; ++k) r = std::max(r, row_i[k] - d_ij - row_j[k]);
  return r;
}

double max_ultrametric_excess(const double* row_i, const double* row_j, double d_ij,
                              std::size_t n) {
  const __m256d dij = _mm256_set1_pd(d_ij);
  __m256d m = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d e = _mm256_sub_pd(_mm256_loadu_pd(row_i + k),
                              _mm256_max_pd(dij, _mm256_loadu_pd(row_j + k)));
    m = _mm256_max_pd(m, e);
  }
  double r = hmax(m);
  for (; k < n; ++k) r = std::max(r, row_i[k] - std::max(d_ij, row_j[k]));
  return r;
}

void relax_min(double* row_i, const double* row_k, double d_ik, std::size_t n) {
  const __m256d dik = _mm256_set1_pd(d_ik);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d cand = _mm256_add_pd(dik, _mm256_loadu_pd(row_k + j));
    // _mm256_min_pd(cand, cur) picks cur unless cand < cur, same as std::min(cur, cand)
    __m256d cur = _mm256_loadu_pd(row_i + j);
    _mm256_storeu_pd(row_i + j, _mm256_min_pd(cand, cur));
  }
  for (; j < n; ++j) row_i[j] = std::min(row_i[j], d_ik + row_k[j]);
}

double max_abs(const double* a, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(a + k)));
  double r = hmax(m);
  for (; k < n; ++k) r = std::max(r, std::abs(a[k]));
  return r;
}

}  // namespace negtype::kernels::avx2
