#pragma once

#include "ogk/intlin.hpp"

#include <cstdint>
#include <random>

namespace test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline long uniform(std::mt19937_64& g, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(g);
}

inline ogk::IntMatrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols, long bound) {
  ogk::IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(g, -bound, bound);
  return m;
}

} // namespace test
