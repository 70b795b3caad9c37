#pragma once

// Explicit 2x2 Hermitian matrices. This is the independent ground truth the
// Bloch-vector calculus is checked against: probabilities come from tr(A rho)
// and eigenvalues from the characteristic polynomial, never from Bloch algebra.

#include <cmath>
#include <complex>
#include <ostream>
#include <span>
#include <utility>

#include "povm/error.hpp"
#include "povm/tolerance.hpp"

namespace povm {

using complex = std::complex<double>;

enum class Axis { X, Y, Z };

/// 2x2 Hermitian operator. Stores the real diagonal and the upper
/// off-diagonal entry as a real pair; m10 is always conj(m01).
class HermitianMat2 {
 public:
  constexpr HermitianMat2() = default;

  HermitianMat2(double m00, double m11, double m01_re, double m01_im)
      : m00_(m00), m11_(m11), re_(m01_re), im_(m01_im) {
    if (!std::isfinite(m00) || !std::isfinite(m11) || !std::isfinite(m01_re) ||
        !std::isfinite(m01_im)) {
      throw Error(ErrorCode::NonFinite, "matrix entries must be finite");
    }
  }

  /// Build from all four entries, checking Hermiticity within tol::herm.
  static HermitianMat2 from_entries(complex m00, complex m01, complex m10, complex m11) {
    if (std::fabs(m00.imag()) > tol::herm || std::fabs(m11.imag()) > tol::herm) {
      throw Error(ErrorCode::NotHermitian, "diagonal entries must be real");
    }
    if (std::abs(m10 - std::conj(m01)) > tol::herm) {
      throw Error(ErrorCode::NotHermitian, "m10 must equal conj(m01)");
    }
    return {m00.real(), m11.real(), m01.real(), m01.imag()};
  }

  static HermitianMat2 identity() { return {1.0, 1.0, 0.0, 0.0}; }
  static HermitianMat2 zero() { return {}; }

  double m00() const noexcept { return m00_; }
  double m11() const noexcept { return m11_; }
  complex m01() const noexcept { return {re_, im_}; }
  complex m10() const noexcept { return {re_, -im_}; }

  complex operator()(int row, int col) const {
    if (row == 0 && col == 0) return m00_;
    if (row == 1 && col == 1) return m11_;
    if (row == 0 && col == 1) return m01();
    if (row == 1 && col == 0) return m10();
    throw Error(ErrorCode::InvalidArgument, "matrix index out of range");
  }

  bool operator==(const HermitianMat2&) const = default;

 private:
  double m00_ = 0.0;
  double m11_ = 0.0;
  double re_ = 0.0;
  double im_ = 0.0;
};

inline HermitianMat2 pauli(Axis k) {
  switch (k) {
    case Axis::X: return {0.0, 0.0, 1.0, 0.0};
    case Axis::Y: return {0.0, 0.0, 0.0, -1.0};
    case Axis::Z: return {1.0, -1.0, 0.0, 0.0};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown Pauli axis");
}

inline double trace(const HermitianMat2& m) { return m.m00() + m.m11(); }

inline HermitianMat2 add(const HermitianMat2& a, const HermitianMat2& b) {
  return {a.m00() + b.m00(), a.m11() + b.m11(), a.m01().real() + b.m01().real(),
          a.m01().imag() + b.m01().imag()};
}

inline HermitianMat2 scale(double c, const HermitianMat2& m) {
  return {c * m.m00(), c * m.m11(), c * m.m01().real(), c * m.m01().imag()};
}

inline HermitianMat2 operator+(const HermitianMat2& a, const HermitianMat2& b) { return add(a, b); }
inline HermitianMat2 operator*(double c, const HermitianMat2& m) { return scale(c, m); }

/// tr(a b) from the full complex product. The two off-diagonal terms are
/// summed first so the result is bitwise symmetric in its arguments.
inline double trace_product(const HermitianMat2& a, const HermitianMat2& b) {
  const complex cross = a.m01() * b.m10() + a.m10() * b.m01();
  return (a.m00() * b.m00() + a.m11() * b.m11()) + cross.real();
}

struct Eigenvalues {
  double lo;
  double hi;
};

/// Closed-form spectrum: tr/2 -+ sqrt(((m00 - m11)/2)^2 + |m01|^2).
inline Eigenvalues eigvals2(const HermitianMat2& m) {
  const double half_trace = 0.5 * (m.m00() + m.m11());
  const double radius = std::hypot(0.5 * (m.m00() - m.m11()), std::abs(m.m01()));
  return {half_trace - radius, half_trace + radius};
}

inline bool is_positive(const HermitianMat2& m) { return eigvals2(m).lo >= -tol::norm; }

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const HermitianMat2& a, const HermitianMat2& b) {
  return std::fmax(std::fmax(std::fabs(a.m00() - b.m00()), std::fabs(a.m11() - b.m11())),
                   std::abs(a.m01() - b.m01()));
}

/// True iff the operators sum to the identity entrywise within tol::sum.
inline bool completeness(std::span<const HermitianMat2> ops) {
  HermitianMat2 total;
  for (const auto& m : ops) total = add(total, m);
  return max_abs_diff(total, HermitianMat2::identity()) <= tol::sum;
}

inline std::ostream& operator<<(std::ostream& os, const HermitianMat2& m) {
  return os << "[[" << m.m00() << ", " << m.m01() << "], [" << m.m10() << ", " << m.m11() << "]]";
}

}  // namespace povm
