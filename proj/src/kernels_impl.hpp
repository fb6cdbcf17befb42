#pragma once

#include <cstddef>

#include "negtype/kernels.hpp"

namespace negtype::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void gemv(const double* a, const double* x, double* y, std::size_t n);
double quad_form(const double* a, const double* x, std::size_t n);
double max_triangle_excess(const double* row_i, const double* row_j, double d_ij, std::size_t n);
double max_ultrametric_excess(const double* row_i, const double* row_j, double d_ij,
                              std::size_t n);
void relax_min(double* row_i, const double* row_k, double d_ik, std::size_t n);
double max_abs(const double* a, std::size_t n);
}  // namespace scalar

#ifdef NEGTYPE_HAVE_AVX2
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void gemv(const double* a, const double* x, double* y, std::size_t n);
double quad_form(const double* a, const double* x, std::size_t n);
double max_triangle_excess(const double* row_i, const double* row_j, double d_ij, std::size_t n);
double max_ultrametric_excess(const double* row_i, const double* row_j, double d_ij,
                              std::size_t n);
void relax_min(double* row_i, const double* row_k, double d_ik, std::size_t n);
double max_abs(const double* a, std::size_t n);
}  // namespace avx2
#endif

}  // namespace negtype::kernels
