#pragma once

namespace povm::tol {

// Slack for positivity and purity predicates (|v| <= a, |r| <= 1).
inline constexpr double norm = 1e-9;
// Slack for closure sums (sum of vectors, sum of weights, sum of probabilities).
inline constexpr double sum = 1e-9;
// Pure floating-point round trips.
inline constexpr double round = 1e-12;
// Imaginary part allowed on a Hermitian diagonal, and |m10 - conj(m01)|.
inline constexpr double herm = 1e-12;
// Angular slack in radians for antiparallel / identical-state checks.
inline constexpr double angle = 1e-9;
// Band outside [0, 1] that is clamped rather than rejected. Positivity admits
// |v| <= a + norm and |r| <= 1 + norm, so (a + v.r)/2 can legitimately dip to
// about -1.5 * norm.
inline constexpr double probability = 2 * norm;

}  // namespace povm::tol
