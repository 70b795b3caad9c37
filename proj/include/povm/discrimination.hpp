#pragma once

// Unambiguous discrimination of two equiprobable pure qubit states with a
// three-outcome POVM: two detectors antiparallel to the states they must
// never fire on, and an inconclusive element that closes the vector sum.

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "povm/bloch.hpp"
#include "povm/error.hpp"
#include "povm/tolerance.hpp"
#include "povm/vec3.hpp"

namespace povm {

/// Outcome positions in UsdDesign::povm.
enum UsdOutcome : std::size_t { kDetectPhi = 0, kDetectPsi = 1, kInconclusive = 2 };

struct UsdDesign {
  Vec3 r_psi;
  Vec3 r_phi;
  double alpha = 0.0;  // Bloch angle between the states, in [0, pi]
  PovmSet povm{{PovmElement{2.0, {}}}};
  double a = 0.0;               // common detector weight
  double a_inconclusive = 0.0;  // 2(1 - a)
  double p_success = 0.0;
  bool degenerate = false;  // identical inputs; nothing can be discriminated
};

/// Projective measurement of a pure state along an axis at angle beta.
inline double von_neumann_outcome_prob(double beta) { return 0.5 * (1.0 + std::cos(beta)); }

/// (1 - cos alpha) / (2 (1 + cos(alpha/2))).
inline double usd_success_probability(double alpha) {
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, pi]");
  }
  return (1.0 - std::cos(alpha)) / (2.0 * (1.0 + std::cos(0.5 * alpha)));
}

/// Optimal detector weight 1 / (1 + cos(alpha/2)).
inline double usd_detector_weight(double alpha) { return 1.0 / (1.0 + std::cos(0.5 * alpha)); }

/// Builds the symmetric three-element POVM for a pair of (unit) Bloch vectors
/// and a detector weight. No optimality is assumed; the inconclusive weight
/// comes from sum(a) = 2 alone.
inline PovmSet symmetric_usd_povm(const Vec3& r_psi, const Vec3& r_phi, double a) {
  const Vec3 v_phi_detector = -a * r_psi;
  const Vec3 v_psi_detector = -a * r_phi;
  const Vec3 v_inconclusive = -(v_phi_detector + v_psi_detector) + Vec3{};
  return PovmSet({{a, v_phi_detector}, {a, v_psi_detector}, {2.0 * (1.0 - a), v_inconclusive}});
}

inline UsdDesign design_usd(const Vec3& r_psi, const Vec3& r_phi) {
  for (const Vec3* r : {&r_psi, &r_phi}) {
    if (std::fabs(r->norm() - 1.0) > tol::norm) {
      std::ostringstream msg;
      msg << "input " << *r << " is not a pure state (|r| = " << r->norm() << ")";
      throw Error(ErrorCode::NotPure, msg.str());
    }
  }
  UsdDesign d;
  d.r_psi = r_psi.normalized();
  d.r_phi = r_phi.normalized();
  d.alpha = angle_between(d.r_psi, d.r_phi);
  if (d.alpha <= tol::angle) {
    d.degenerate = true;
    d.alpha = 0.0;
    d.a = 0.5;
    d.r_phi = d.r_psi;
  } else {
    d.a = usd_detector_weight(d.alpha);
  }
  d.povm = symmetric_usd_povm(d.r_psi, d.r_phi, d.a);
  d.a_inconclusive = d.povm[kInconclusive].a;
  if (d.a_inconclusive <= tol::norm) {
    // Orthogonal inputs: the inconclusive element is kept as an exact zero so
    // that outcome labels stay positional.
    d.a_inconclusive = 0.0;
    std::vector<PovmElement> els = d.povm.elements();
    els[kInconclusive] = PovmElement{};
    d.povm = PovmSet(std::move(els));
  }
  d.p_success = usd_success_probability(d.alpha);
  return d;
}

struct ErrorFreeReport {
  double p_phi_detector_on_psi = 0.0;  // must vanish
  double p_psi_detector_on_phi = 0.0;  // must vanish
  double p_phi_detector_on_phi = 0.0;
  double p_psi_detector_on_psi = 0.0;
  double p_inconclusive_on_psi = 0.0;
  double p_inconclusive_on_phi = 0.0;
  bool error_free = false;
  bool symmetric = false;       // both detectors succeed with p_success
  bool uninformative = false;   // inconclusive outcome equally likely for both
  bool passed = false;
};

inline ErrorFreeReport verify_error_free(const UsdDesign& d) {
  const BlochState psi(d.r_psi);
  const BlochState phi(d.r_phi);
  const PovmSet& m = d.povm;
  ErrorFreeReport rep;
  rep.p_phi_detector_on_psi = outcome_probability(m[kDetectPhi], psi);
  rep.p_psi_detector_on_phi = outcome_probability(m[kDetectPsi], phi);
  rep.p_phi_detector_on_phi = outcome_probability(m[kDetectPhi], phi);
  rep.p_psi_detector_on_psi = outcome_probability(m[kDetectPsi], psi);
  rep.p_inconclusive_on_psi = outcome_probability(m[kInconclusive], psi);
  rep.p_inconclusive_on_phi = outcome_probability(m[kInconclusive], phi);

  rep.error_free = rep.p_phi_detector_on_psi <= tol::round && rep.p_psi_detector_on_phi <= tol::round;
  rep.symmetric = std::fabs(rep.p_phi_detector_on_phi - d.p_success) <= tol::round &&
                  std::fabs(rep.p_psi_detector_on_psi - d.p_success) <= tol::round;
  rep.uninformative = std::fabs(rep.p_inconclusive_on_psi - rep.p_inconclusive_on_phi) <= tol::round;
  rep.passed = rep.error_free && rep.symmetric && rep.uninformative;
  return rep;
}

struct GridOptimum {
  double a_best = 0.0;
  double p_best = 0.0;
};

/// Scans the detector weight over [0, 1] and keeps the best value for which
/// the symmetric construction passes validate_set. Independent of the closed
/// form: feasibility is decided purely by positivity of the inconclusive
/// element. Ties resolve toward the smaller weight.
inline GridOptimum brute_force_optimal_a(double alpha, double step) {
  if (!(alpha > 0.0 && alpha <= std::numbers::pi)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, pi]");
  }
  if (!(step > 0.0 && step <= 1.0)) throw Error(ErrorCode::InvalidArgument, "step must lie in (0, 1]");

  const Vec3 r_psi = Vec3::unit_z();
  const Vec3 r_phi{std::sin(alpha), 0.0, std::cos(alpha)};
  const auto last = static_cast<long long>(std::floor(1.0 / step + 1e-9));

  bool found = false;
  GridOptimum best;
  auto consider = [&](double a) {
    const PovmSet set = symmetric_usd_povm(r_psi, r_phi, a);
    if (!validate_set(set).valid) return;
    const double p = 0.5 * a * (1.0 - std::cos(alpha));
    if (!found || p > best.p_best) {
      best = {a, p};
      found = true;
    }
  };
  for (long long k = 0; k <= last; ++k) consider(static_cast<double>(k) * step);
  if (static_cast<double>(last) * step < 1.0) consider(1.0);

  if (!found) throw Error(ErrorCode::NoFeasible, "no feasible detector weight on the grid");
  return best;
}

}  // namespace povm
