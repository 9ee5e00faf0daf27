#include <atomic>
#include <cstdlib>
#include <string_view>

#include "glfs/kernels/kernels.hpp"

namespace glfs::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  Backend backend = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
  if (const char* env = std::getenv("GLFS_KERNELS")) {
    const std::string_view value(env);
    if (value == "scalar") {
      backend = Backend::Scalar;
    } else if (value == "avx2" && cpu_has_avx2()) {
      backend = Backend::Avx2;
    }
  }
  return backend;
}

std::atomic<Backend>& backend_slot() noexcept {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

Backend active_backend() noexcept { return backend_slot().load(std::memory_order_relaxed); }

bool backend_supported(Backend backend) noexcept {
  return backend == Backend::Scalar || cpu_has_avx2();
}

bool set_backend(Backend backend) noexcept {
  if (!backend_supported(backend)) return false;
  backend_slot().store(backend, std::memory_order_relaxed);
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  return active_backend() == Backend::Avx2 ? avx2::dot(a.data(), b.data(), n)
                                           : scalar::dot(a.data(), b.data(), n);
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  return active_backend() == Backend::Avx2 ? avx2::squared_distance(a.data(), b.data(), n)
                                           : scalar::squared_distance(a.data(), b.data(), n);
}

void column_dots(const double* a, const double* b, std::size_t rows, std::size_t cols,
                 double* out) noexcept {
  const bool wide = active_backend() == Backend::Avx2;
  for (std::size_t j = 0; j < cols; ++j) {
    const double* ca = a + j * rows;
    const double* cb = b + j * rows;
    out[j] = wide ? avx2::dot(ca, cb, rows) : scalar::dot(ca, cb, rows);
  }
}

}  // namespace glfs::kernels
