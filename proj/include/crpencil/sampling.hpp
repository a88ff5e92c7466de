#pragma once

// Seeded integer sampling with a platform-independent mapping from the engine output.

#include <cstdint>
#include <random>
#include <vector>

#include "crpencil/field.hpp"

namespace crpencil {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  // Uniform on [-bound, bound] by rejection, so results do not depend on the standard library.
  long uniform(long bound) {
    const std::uint64_t span = 2 * static_cast<std::uint64_t>(bound) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = rng_();
    } while (x >= limit);
    return static_cast<long>(x % span) - bound;
  }

  std::vector<CycloElem> point(int nvars, int order, long bound) {
    std::vector<CycloElem> p;
    p.reserve(nvars);
    for (int i = 0; i < nvars; ++i) p.push_back(embed(uniform(bound), order));
    return p;
  }

  // Integer combination sum c_i v_i with c_i drawn from [-bound, bound].
  std::vector<CycloElem> combination(const std::vector<std::vector<CycloElem>>& vs, int order, long bound) {
    std::vector<CycloElem> out(vs.empty() ? 0 : vs[0].size(), embed(0, order));
    for (const auto& v : vs) {
      const CycloElem c = embed(uniform(bound), order);
      for (std::size_t i = 0; i < v.size(); ++i) out[i] += c * v[i];
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace crpencil
