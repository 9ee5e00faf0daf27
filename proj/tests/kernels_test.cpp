#include <doctest.h>

#include <cmath>
#include <vector>

#include "glfs/kernels/kernels.hpp"
#include "support.hpp"

using namespace glfs;

namespace {

std::vector<double> random_values(std::size_t n, Rng& rng, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

double long_double_dot(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s);
}

}  // namespace

TEST_CASE("scalar kernels sum left to right") {
  const std::vector<double> a = {1e16, 1.0, -1e16, 1.0};
  const std::vector<double> ones(4, 1.0);
  // ((1e16 + 1) - 1e16) + 1 in double: the first 1 is absorbed.
  CHECK(kernels::scalar::dot(a.data(), ones.data(), 4) == 1.0);
  const std::vector<double> p = {0.0, 0.0}, q = {3.0, 4.0};
  CHECK(kernels::scalar::squared_distance(p.data(), q.data(), 2) == 25.0);
}

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!kernels::backend_supported(kernels::Backend::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  Rng rng = make_rng(11, 0);
  // Lengths cover the empty case, every tail length and long vectors.
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 100u, 1003u, 4096u}) {
    const auto a = random_values(n, rng, 1.0);
    const auto b = random_values(n, rng, 1.0);
    const double ref = long_double_dot(a, b);
    double abs_sum = 0.0, sq_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      abs_sum += std::abs(a[i] * b[i]);
      sq_sum += (a[i] - b[i]) * (a[i] - b[i]);
    }
    const double bound = 4.0 * static_cast<double>(n + 1) * 1.2e-16 * abs_sum;
    const double sd = kernels::scalar::dot(a.data(), b.data(), n);
    const double vd = kernels::avx2::dot(a.data(), b.data(), n);
    CHECK(std::abs(sd - ref) <= bound);
    CHECK(std::abs(vd - ref) <= bound);
    const double sq = kernels::scalar::squared_distance(a.data(), b.data(), n);
    const double vq = kernels::avx2::squared_distance(a.data(), b.data(), n);
    CHECK(std::abs(sq - vq) <= 4.0 * static_cast<double>(n + 1) * 1.2e-16 * sq_sum);
  }
}

TEST_CASE("avx2 kernels are exact on integer data") {
  if (!kernels::backend_supported(kernels::Backend::Avx2)) return;
  std::vector<double> a(1001), b(1001);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<double>(i % 17) - 8.0;
    b[i] = static_cast<double>(i % 5) + 1.0;
  }
  CHECK(kernels::avx2::dot(a.data(), b.data(), a.size()) ==
        kernels::scalar::dot(a.data(), b.data(), a.size()));
  CHECK(kernels::avx2::squared_distance(a.data(), b.data(), a.size()) ==
        kernels::scalar::squared_distance(a.data(), b.data(), a.size()));
}

TEST_CASE("backend switching and column_dots") {
  const kernels::Backend original = kernels::active_backend();
  CHECK(kernels::set_backend(kernels::Backend::Scalar));
  CHECK(kernels::active_backend() == kernels::Backend::Scalar);
  CHECK(kernels::to_string(kernels::Backend::Scalar) == "scalar");

  Rng rng = make_rng(12, 0);
  const Matrix a = testing::gaussian(37, 6, rng);
  const Matrix b = testing::gaussian(37, 6, rng);
  std::vector<double> out(6);
  kernels::column_dots(a.data(), b.data(), 37, 6, out.data());
  for (Index j = 0; j < 6; ++j) {
    CHECK(out[static_cast<std::size_t>(j)] ==
          kernels::scalar::dot(a.col(j).data(), b.col(j).data(), 37));
  }
  if (kernels::backend_supported(kernels::Backend::Avx2)) {
    CHECK(kernels::set_backend(kernels::Backend::Avx2));
    kernels::column_dots(a.data(), b.data(), 37, 6, out.data());
    for (Index j = 0; j < 6; ++j) {
      CHECK(out[static_cast<std::size_t>(j)] ==
            kernels::avx2::dot(a.col(j).data(), b.col(j).data(), 37));
    }
  }
  kernels::set_backend(original);
}
