#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include "povm/error.hpp"

namespace povm {

/// Real 3-vector in Bloch coordinates. Every component is finite; the
/// constructor rejects NaN and infinity, so arithmetic that overflows throws.
class Vec3 {
 public:
  constexpr Vec3() = default;

  Vec3(double x, double y, double z) : x_(x), y_(y), z_(z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
      throw Error(ErrorCode::NonFinite, "Vec3 components must be finite");
    }
  }

  static Vec3 unit_x() { return {1.0, 0.0, 0.0}; }
  static Vec3 unit_y() { return {0.0, 1.0, 0.0}; }
  static Vec3 unit_z() { return {0.0, 0.0, 1.0}; }

  constexpr double x() const noexcept { return x_; }
  constexpr double y() const noexcept { return y_; }
  constexpr double z() const noexcept { return z_; }

  double operator[](int k) const {
    switch (k) {
      case 0: return x_;
      case 1: return y_;
      case 2: return z_;
    }
    throw Error(ErrorCode::InvalidArgument, "Vec3 index out of range");
  }

  double dot(const Vec3& o) const noexcept { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }

  Vec3 cross(const Vec3& o) const {
    return {y_ * o.z_ - z_ * o.y_, z_ * o.x_ - x_ * o.z_, x_ * o.y_ - y_ * o.x_};
  }

  double norm() const noexcept { return std::hypot(x_, y_, z_); }

  // Zero stays zero.
  Vec3 normalized() const {
    const double n = norm();
    if (n == 0.0) return {};
    return {x_ / n, y_ / n, z_ / n};
  }

  Vec3 operator-() const { return {-x_, -y_, -z_}; }
  Vec3 operator+(const Vec3& o) const { return {x_ + o.x_, y_ + o.y_, z_ + o.z_}; }
  Vec3 operator-(const Vec3& o) const { return {x_ - o.x_, y_ - o.y_, z_ - o.z_}; }
  Vec3 operator*(double c) const { return {c * x_, c * y_, c * z_}; }
  Vec3 operator/(double c) const { return {x_ / c, y_ / c, z_ / c}; }
  friend Vec3 operator*(double c, const Vec3& v) { return v * c; }

  Vec3& operator+=(const Vec3& o) { return *this = *this + o; }

  bool operator==(const Vec3&) const = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

/// Largest componentwise difference.
inline double max_abs_diff(const Vec3& a, const Vec3& b) {
  return std::fmax(std::fabs(a.x() - b.x()),
                   std::fmax(std::fabs(a.y() - b.y()), std::fabs(a.z() - b.z())));
}

/// Angle in [0, pi] between two vectors; zero if either is the zero vector.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << '(' << v.x() << ", " << v.y() << ", " << v.z() << ')';
}

}  // namespace povm
