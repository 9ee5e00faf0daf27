#pragma once

#include <cstdint>
#include <random>

namespace glfs {

using Rng = std::mt19937_64;

/// Independent stream for (master seed, task index), so restarts, folds and
/// repetitions do not depend on scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t task) noexcept {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(master ^ mix(task + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t task) {
  return Rng(derive_seed(master, task));
}

}  // namespace glfs
