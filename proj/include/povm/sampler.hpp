#pragma once

// Seeded Monte Carlo sampling of POVM outcomes.
//
// The generator is std::mt19937_64 (the standard 64-bit Mersenne Twister,
// whose output sequence is fixed by the C++ standard). Uniform variates are
// formed from the top 53 bits by hand rather than through
// std::uniform_real_distribution, whose algorithm is implementation-defined,
// so a (set, state, n, seed) tuple reproduces the same counts on any platform.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "povm/bloch.hpp"
#include "povm/error.hpp"

namespace povm {

struct SampleReport {
  std::vector<std::uint64_t> counts;
  std::uint64_t n = 0;
  std::vector<double> frequencies;
  std::vector<double> expected;
  double max_abs_deviation = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const SampleReport&) const = default;
};

namespace detail {

inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// First index whose cumulative mass strictly exceeds u. A u beyond the
/// accumulated total lands in the last outcome with nonzero probability.
inline std::size_t pick_outcome(const std::vector<double>& cumulative, std::size_t last_nonzero, double u) {
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    if (u < cumulative[i]) return i;
  }
  return last_nonzero;
}

}  // namespace detail

inline SampleReport sample_outcomes(const PovmSet& s, const BlochState& st, std::uint64_t n,
                                    std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "number of trials must be positive");

  SampleReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.expected = outcome_distribution(s, st);

  std::vector<double> cumulative;
  cumulative.reserve(rep.expected.size());
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < rep.expected.size(); ++i) {
    acc += rep.expected[i];
    cumulative.push_back(acc);
    if (rep.expected[i] > 0.0) last_nonzero = i;
  }

  std::mt19937_64 gen(seed);
  rep.counts.assign(rep.expected.size(), 0);
  for (std::uint64_t t = 0; t < n; ++t) {
    ++rep.counts[detail::pick_outcome(cumulative, last_nonzero, detail::uniform01(gen))];
  }

  rep.frequencies.reserve(rep.counts.size());
  for (std::size_t i = 0; i < rep.counts.size(); ++i) {
    const double f = static_cast<double>(rep.counts[i]) / static_cast<double>(n);
    rep.frequencies.push_back(f);
    rep.max_abs_deviation = std::fmax(rep.max_abs_deviation, std::fabs(f - rep.expected[i]));
  }
  return rep;
}

}  // namespace povm
