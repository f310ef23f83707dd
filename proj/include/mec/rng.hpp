#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace mec {

using Rng = std::mt19937_64;

// Unbiased index in [0, n) by rejection; avoids implementation-defined distributions
// so runs are reproducible across standard libraries.
template <class Engine>
uint64_t uniform_index(Engine& rng, uint64_t n) {
  if (n <= 1) return 0;
  const uint64_t limit = Engine::max() - (Engine::max() % n);
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

template <class Engine, class T>
void shuffle_in_place(Engine& rng, std::vector<T>& v) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

template <class Engine>
double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace mec
