#pragma once

// Random valid inputs for property tests.

#include <cmath>
#include <random>
#include <vector>

#include "povm/bloch.hpp"
#include "povm/vec3.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline povm::Vec3 unit_vector(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const povm::Vec3 v{n(rng), n(rng), n(rng)};
    const double len = v.norm();
    if (len > 1e-6) return v / len;
  }
}

/// Uniform in the Bloch ball.
inline povm::BlochState state(Rng& rng) {
  return povm::BlochState(unit_vector(rng) * std::cbrt(uniform(rng, 0.0, 1.0)));
}

inline povm::BlochState pure_state(Rng& rng) { return povm::BlochState(unit_vector(rng)); }

/// Positive element with weight in (0, max_weight] and |v| <= a.
inline povm::PovmElement element(Rng& rng, double max_weight = 2.0) {
  const double a = uniform(rng, 1e-3, max_weight);
  return {a, unit_vector(rng) * (a * uniform(rng, 0.0, 1.0))};
}

inline povm::PovmElement rank1_element(Rng& rng, double max_weight = 2.0) {
  const double a = uniform(rng, 1e-3, max_weight);
  return {a, unit_vector(rng) * a};
}

/// Strictly rank-2: |v| <= 0.95 a.
inline povm::PovmElement rank2_element(Rng& rng) {
  const double a = uniform(rng, 0.05, 2.0);
  return {a, unit_vector(rng) * (a * uniform(rng, 0.0, 0.95))};
}

/// Valid set of `count` elements. Free elements are drawn at random and
/// rescaled; the last element closes sum(v) = 0 and sum(a) = 2.
inline povm::PovmSet povm_set(Rng& rng, int count, bool all_rank1 = false) {
  std::vector<povm::PovmElement> els;
  double weight = 0.0;
  povm::Vec3 vsum;
  for (int i = 0; i + 1 < count; ++i) {
    const bool pure = all_rank1 || uniform(rng, 0.0, 1.0) < 0.5;
    els.push_back(pure ? rank1_element(rng, 1.0) : element(rng, 1.0));
    weight += els.back().a;
    vsum += els.back().v;
  }
  // t (W + |S|) <= 2 keeps the closing element positive; equality makes it rank-1.
  const double slack = (all_rank1 || uniform(rng, 0.0, 1.0) < 0.3) ? 1.0 : uniform(rng, 0.2, 0.999);
  const double t = slack * 2.0 / (weight + vsum.norm());
  for (auto& e : els) e = {t * e.a, t * e.v};
  double scaled_weight = 0.0;
  povm::Vec3 scaled_sum;
  for (const auto& e : els) {
    scaled_weight += e.a;
    scaled_sum += e.v;
  }
  els.push_back({2.0 - scaled_weight, -scaled_sum});
  return povm::PovmSet(std::move(els));
}

}  // namespace gen
