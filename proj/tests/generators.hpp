#pragma once

#include <random>

#include "msets/arith.hpp"

namespace gen {

using msets::Integer;
using msets::IntMatrix;
using msets::IntVector;

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline IntVector vector(std::mt19937_64& rng, std::size_t n, long bound) {
  IntVector v(n);
  for (auto& x : v) x = uniform(rng, -bound, bound);
  return v;
}

inline IntMatrix matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

// Product of random elementary operations, so |det| = 1.
inline IntMatrix unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12, long bound = 3) {
  auto u = IntMatrix::identity(n);
  if (n < 2) {
    if (uniform(rng, 0, 1)) u.negate_row(0);
    return u;
  }
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    switch (uniform(rng, 0, 2)) {
      case 0:
        u.add_row_multiple(i, j, uniform(rng, -bound, bound));
        break;
      case 1:
        u.swap_rows(i, j);
        break;
      default:
        u.negate_row(i);
        break;
    }
  }
  return u;
}

// Full-rank n x n matrix with entries bounded by `bound`.
inline IntMatrix full_rank(std::mt19937_64& rng, std::size_t n, long bound, std::size_t (*rank)(const IntMatrix&)) {
  for (;;) {
    auto m = matrix(rng, n, n, bound);
    if (rank(m) == n) return m;
  }
}

}  // namespace gen
