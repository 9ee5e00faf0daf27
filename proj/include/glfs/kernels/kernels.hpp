#pragma once

// Data-parallel inner loops shared by the graph, objective and evaluation
// code. Every kernel has a scalar reference implementation and, on x86-64,
// an AVX2/FMA variant chosen at runtime. The reference path sums strictly
// left to right; the AVX2 path keeps four independent lane accumulators
// (plus a scalar tail) and reduces them in a fixed order, so both paths are
// deterministic but they are not bit-identical to each other.

#include <cstddef>
#include <span>
#include <string_view>

namespace glfs::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend) noexcept;

/// Backend used by the free functions below. Resolved once from CPUID, then
/// overridable by the GLFS_KERNELS environment variable ("scalar" / "avx2")
/// or by set_backend().
Backend active_backend() noexcept;

/// True when the host CPU can execute the given backend.
bool backend_supported(Backend backend) noexcept;

/// Switches the process-wide backend. Returns false (and changes nothing)
/// if the backend is not supported on this CPU.
bool set_backend(Backend backend) noexcept;

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// out[j] = dot(column j of a, column j of b) for column-major blocks with
/// `rows` rows and leading dimension `rows`.
void column_dots(const double* a, const double* b, std::size_t rows, std::size_t cols,
                 double* out) noexcept;

/// Per-backend entry points, used by the equivalence tests.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double squared_distance(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double squared_distance(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace avx2

}  // namespace glfs::kernels
