#pragma once

// Data-parallel inner loops shared by the metric, quadform and polyeq
// modules. Each kernel has a scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The active table is picked once at first use from the
// host CPU features; tests can pin a backend explicitly.
//
// Matrices are dense row-major n x n. Summation kernels may differ between
// backends by rounding only; min/max kernels are bit-identical.

#include <cstddef>
#include <span>
#include <string_view>

namespace negtype::kernels {

enum class Backend { Scalar, Avx2 };

struct Table {
  Backend backend;
  std::string_view name;

  double (*dot)(const double* a, const double* b, std::size_t n);
  // y = A x, A is n x n row-major
  void (*gemv)(const double* a, const double* x, double* y, std::size_t n);
  // x^T A x
  double (*quad_form)(const double* a, const double* x, std::size_t n);
  // max_k (row_i[k] - d_ij - row_j[k])
  double (*max_triangle_excess)(const double* row_i, const double* row_j, double d_ij,
                                std::size_t n);
  // max_k (row_i[k] - max(d_ij, row_j[k]))
  double (*max_ultrametric_excess)(const double* row_i, const double* row_j, double d_ij,
                                   std::size_t n);
  // row_i[k] = min(row_i[k], d_ik + row_k[k'])  (one Floyd-Warshall row update)
  void (*relax_min)(double* row_i, const double* row_k, double d_ik, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);
};

const Table& scalar_table() noexcept;

// nullptr when the build or the host CPU lacks AVX2/FMA.
const Table* avx2_table() noexcept;

// Active table. Defaults to the widest supported backend.
const Table& active() noexcept;

// Returns false (and leaves the active table unchanged) if `b` is unavailable.
bool select(Backend b) noexcept;

// Span conveniences over the active table.
double dot(std::span<const double> a, std::span<const double> b);
void gemv(std::span<const double> a, std::span<const double> x, std::span<double> y);
double quad_form(std::span<const double> a, std::span<const double> x);
double max_abs(std::span<const double> a);

}  // namespace negtype::kernels
