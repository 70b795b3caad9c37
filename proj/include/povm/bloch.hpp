#pragma once

// Bloch-vector calculus for qubit POVMs. An element A = a I/2 + v.sigma/2 is
// the pair (a, v); a state rho = I/2 + r.sigma/2 is the vector r. Outcome
// probabilities are (a + v.r)/2 and completeness reads sum(v) = 0, sum(a) = 2.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "povm/error.hpp"
#include "povm/hermitian.hpp"
#include "povm/tolerance.hpp"
#include "povm/vec3.hpp"

namespace povm {

/// Qubit density matrix as a Bloch vector with |r| <= 1 + tol::norm.
class BlochState {
 public:
  BlochState() = default;

  explicit BlochState(const Vec3& r) : r_(r) {
    if (r.norm() > 1.0 + tol::norm) {
      std::ostringstream msg;
      msg << "Bloch vector " << r << " has length " << r.norm() << " > 1";
      throw Error(ErrorCode::InvalidState, msg.str());
    }
  }

  const Vec3& r() const noexcept { return r_; }
  bool is_pure() const noexcept { return r_.norm() >= 1.0 - tol::norm; }

  bool operator==(const BlochState&) const = default;

 private:
  Vec3 r_;
};

/// One measurement operator a(I/2) + v.sigma/2. Deliberately unchecked:
/// invalid elements are representable so validate_element can report on them.
struct PovmElement {
  double a = 0.0;
  Vec3 v;

  bool operator==(const PovmElement&) const = default;
};

/// Ordered list of elements; outcome i is the element at position i.
class PovmSet {
 public:
  explicit PovmSet(std::vector<PovmElement> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
      throw Error(ErrorCode::InvalidArgument, "a POVM set needs at least one element");
    }
    for (const auto& e : elements_) {
      if (!std::isfinite(e.a)) throw Error(ErrorCode::NonFinite, "element weight must be finite");
    }
  }

  const std::vector<PovmElement>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const PovmElement& operator[](std::size_t i) const { return elements_.at(i); }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  bool operator==(const PovmSet&) const = default;

 private:
  std::vector<PovmElement> elements_;
};

enum class Rank { Zero, One, Two };

inline const char* to_string(Rank r) {
  switch (r) {
    case Rank::Zero: return "zero";
    case Rank::One: return "rank-1";
    case Rank::Two: return "rank-2";
  }
  return "?";
}

struct ElementReport {
  bool positive = false;
  Rank rank = Rank::Zero;
  double eigenvalue_lo = 0.0;  // (a - |v|)/2
  double eigenvalue_hi = 0.0;  // (a + |v|)/2
  std::string reason;          // empty when positive
};

struct SetReport {
  std::vector<ElementReport> elements;
  Vec3 vector_sum;
  double weight_sum = 0.0;
  double length_sum = 0.0;
  bool all_rank1 = false;
  bool elements_positive = false;
  bool vectors_close = false;  // |sum v| <= tol::sum
  bool weights_close = false;  // |sum a - 2| <= tol::sum
  bool lengths_close = false;  // |sum |v| - 2| <= tol::sum; only binding when all_rank1
  bool valid = false;

  std::string summary() const;
};

struct Rank1Decomposition {
  PovmElement major;  // weight a*lambda1, vector along +axis
  PovmElement minor;  // weight a*lambda2, vector along -axis
  Vec3 axis;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

// ---------------------------------------------------------------------------
// Matrix conversions

inline HermitianMat2 bloch_to_density(const BlochState& s) {
  const Vec3& r = s.r();
  return {0.5 * (1.0 + r.z()), 0.5 * (1.0 - r.z()), 0.5 * r.x(), -0.5 * r.y()};
}

namespace detail {
inline Vec3 pauli_components(const HermitianMat2& m) {
  return {trace_product(pauli(Axis::X), m), trace_product(pauli(Axis::Y), m),
          trace_product(pauli(Axis::Z), m)};
}
}  // namespace detail

/// r_k = tr(sigma_k m). Throws NotAState unless m has unit trace and is
/// positive semidefinite within tolerance.
inline BlochState density_to_bloch(const HermitianMat2& m) {
  if (std::fabs(trace(m) - 1.0) > tol::sum) {
    std::ostringstream msg;
    msg << "trace " << trace(m) << " != 1";
    throw Error(ErrorCode::NotAState, msg.str());
  }
  if (eigvals2(m).lo < -tol::norm) {
    throw Error(ErrorCode::NotAState, "matrix has a negative eigenvalue");
  }
  const Vec3 r = detail::pauli_components(m);
  if (r.norm() > 1.0 + tol::norm) {
    throw Error(ErrorCode::NotAState, "Bloch vector longer than 1");
  }
  return BlochState(r);
}

inline HermitianMat2 element_to_matrix(const PovmElement& e) {
  const double half_a = 0.5 * e.a;
  return {half_a + 0.5 * e.v.z(), half_a - 0.5 * e.v.z(), 0.5 * e.v.x(), -0.5 * e.v.y()};
}

/// a = tr(m), v_k = tr(sigma_k m). Throws NotPositive for an indefinite m.
inline PovmElement matrix_to_element(const HermitianMat2& m) {
  if (eigvals2(m).lo < -tol::norm) {
    throw Error(ErrorCode::NotPositive, "matrix has a negative eigenvalue");
  }
  return {trace(m), detail::pauli_components(m)};
}

// ---------------------------------------------------------------------------
// Validity

inline Rank classify_rank(const PovmElement& e) {
  if (e.a <= tol::norm) return Rank::Zero;
  if (e.a - e.v.norm() <= tol::norm) return Rank::One;
  return Rank::Two;
}

inline ElementReport validate_element(const PovmElement& e) {
  ElementReport rep;
  const double len = e.v.norm();
  rep.eigenvalue_lo = 0.5 * (e.a - len);
  rep.eigenvalue_hi = 0.5 * (e.a + len);
  rep.rank = classify_rank(e);
  if (!std::isfinite(e.a)) {
    rep.reason = "weight is not finite";
  } else if (e.a < 0.0) {
    rep.reason = "negative weight a";
  } else if (len > e.a + tol::norm) {
    std::ostringstream msg;
    msg << "|v| = " << len << " exceeds a = " << e.a << " (eigenvalue " << rep.eigenvalue_lo << ")";
    rep.reason = msg.str();
  } else {
    rep.positive = true;
  }
  return rep;
}

inline SetReport validate_set(const PovmSet& s) {
  SetReport rep;
  rep.all_rank1 = true;
  rep.elements_positive = true;
  for (const auto& e : s) {
    rep.elements.push_back(validate_element(e));
    const ElementReport& er = rep.elements.back();
    rep.elements_positive = rep.elements_positive && er.positive;
    // Zero elements are carried for positional stability; they do not spoil
    // the rank-1 specialization since they add nothing to either sum.
    rep.all_rank1 = rep.all_rank1 && er.rank != Rank::Two;
    rep.vector_sum += e.v;
    rep.weight_sum += e.a;
    rep.length_sum += e.v.norm();
  }
  rep.vectors_close = rep.vector_sum.norm() <= tol::sum;
  rep.weights_close = std::fabs(rep.weight_sum - 2.0) <= tol::sum;
  rep.lengths_close = std::fabs(rep.length_sum - 2.0) <= tol::sum;
  rep.valid = rep.elements_positive && rep.vectors_close && rep.weights_close &&
              (!rep.all_rank1 || rep.lengths_close);
  return rep;
}

inline std::string SetReport::summary() const {
  std::ostringstream os;
  if (valid) {
    os << "valid, " << (all_rank1 ? "rank-1" : "mixed-rank") << " set, Σa=2";
    return os.str();
  }
  os << "invalid:";
  const char* sep = " ";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!elements[i].positive) {
      os << sep << "element " << i << " not positive (" << elements[i].reason << ")";
      sep = "; ";
    }
  }
  if (!vectors_close) {
    os << sep << "Σv ≠ 0 (|Σv| = " << vector_sum.norm() << ")";
    sep = "; ";
  }
  if (!weights_close) {
    os << sep << "Σa = " << weight_sum << " ≠ 2";
    sep = "; ";
  }
  if (all_rank1 && !lengths_close) {
    os << sep << "Σ|v| = " << length_sum << " ≠ 2";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Probabilities

namespace detail {
inline double clamp_probability(double p) {
  if (p < -tol::probability || p > 1.0 + tol::probability) {
    std::ostringstream msg;
    msg << "probability " << p << " outside [0, 1]";
    throw Error(ErrorCode::ProbabilityOutOfRange, msg.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

inline void require_positive(const PovmElement& e) {
  const ElementReport rep = validate_element(e);
  if (!rep.positive) throw Error(ErrorCode::NotPositive, rep.reason);
}
}  // namespace detail

/// P = (a + v.r)/2.
inline double outcome_probability(const PovmElement& e, const BlochState& s) {
  detail::require_positive(e);
  return detail::clamp_probability(0.5 * (e.a + e.v.dot(s.r())));
}

/// Angular form a(1 + cos beta)/2 for a pure element and a pure state.
inline double outcome_probability_pure(double a, double beta) {
  if (!(a >= 0.0)) throw Error(ErrorCode::InvalidArgument, "weight must be nonnegative");
  return 0.5 * a * (1.0 + std::cos(beta));
}

/// One probability per element, in set order. Throws InvalidSet.
inline std::vector<double> outcome_distribution(const PovmSet& s, const BlochState& st) {
  const SetReport rep = validate_set(s);
  if (!rep.valid) throw Error(ErrorCode::InvalidSet, rep.summary());
  std::vector<double> probs;
  probs.reserve(s.size());
  for (const auto& e : s) probs.push_back(outcome_probability(e, st));
  return probs;
}

// ---------------------------------------------------------------------------
// Decomposition into rank-1 parts

/// Splits a(I/2) + v.sigma/2 along n = v/|v| into a*lambda1 (I + n.sigma)/2
/// and a*lambda2 (I - n.sigma)/2 with lambda = (1 -+ |v|/a)/2. The zero vector
/// has no axis of its own and uses +z.
inline Rank1Decomposition decompose_rank1(const PovmElement& e) {
  detail::require_positive(e);
  if (e.a <= tol::norm) throw Error(ErrorCode::ZeroElement, "element weight is zero");

  const double len = e.v.norm();
  const Vec3 axis = len > 0.0 ? e.v / len : Vec3::unit_z();
  const double b = std::min(len / e.a, 1.0);

  Rank1Decomposition d;
  d.axis = axis;
  d.lambda1 = 0.5 * (1.0 + b);
  d.lambda2 = 0.5 * (1.0 - b);
  const double major_w = e.a * d.lambda1;
  const double minor_w = e.a * d.lambda2;
  d.major = {major_w, major_w * axis};
  // +0.0 folds the -0.0 components of an empty minor part.
  d.minor = {minor_w, (-minor_w) * axis + Vec3{}};
  return d;
}

}  // namespace povm
