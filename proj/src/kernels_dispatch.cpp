#include <atomic>
#include <cassert>

#include "kernels_impl.hpp"

namespace negtype::kernels {

namespace {

constexpr Table kScalar{
    Backend::Scalar,          "scalar",
    &scalar::dot,             &scalar::gemv,
    &scalar::quad_form,       &scalar::max_triangle_excess,
    &scalar::max_ultrametric_excess, &scalar::relax_min,
    &scalar::max_abs,
};

#ifdef NEGTYPE_HAVE_AVX2
constexpr Table kAvx2{
    Backend::Avx2,          "avx2",
    &avx2::dot,             &avx2::gemv,
    &avx2::quad_form,       &avx2::max_triangle_excess,
    &avx2::max_ultrametric_excess, &avx2::relax_min,
    &avx2::max_abs,
};

bool host_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Table* detect() noexcept {
#ifdef NEGTYPE_HAVE_AVX2
  if (host_has_avx2()) return &kAvx2;
#endif
  return &kScalar;
}

std::atomic<const Table*>& current() noexcept {
  static std::atomic<const Table*> table{detect()};
  return table;
}

}  // namespace

const Table& scalar_table() noexcept { return kScalar; }

const Table* avx2_table() noexcept {
#ifdef NEGTYPE_HAVE_AVX2
  static const bool ok = host_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(Backend b) noexcept {
  const Table* t = b == Backend::Scalar ? &kScalar : avx2_table();
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

void gemv(std::span<const double> a, std::span<const double> x, std::span<double> y) {
  assert(a.size() == x.size() * x.size() && y.size() == x.size());
  active().gemv(a.data(), x.data(), y.data(), x.size());
}

double quad_form(std::span<const double> a, std::span<const double> x) {
  assert(a.size() == x.size() * x.size());
  return active().quad_form(a.data(), x.data(), x.size());
}

double max_abs(std::span<const double> a) { return active().max_abs(a.data(), a.size()); }

}  // namespace negtype::kernels
