#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <iosfwd>

namespace fracslice {

/// Complex scalar used as the abstract model of a slice plane C(i).
using PlaneComplex = std::complex<double>;

/// Real quaternion w + x1 e1 + x2 e2 + x3 e3, stored in that order.
struct Quaternion {
  double w = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x1_ = 0.0, double x2_ = 0.0, double x3_ = 0.0)
      : w(w_), x1(x1_), x2(x2_), x3(x3_) {}

  static constexpr Quaternion e1() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion e2() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion e3() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr std::array<double, 4> components() const { return {w, x1, x2, x3}; }
  constexpr double real() const { return w; }
  constexpr Quaternion vector_part() const { return {0.0, x1, x2, x3}; }

  Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x1 += o.x1; x2 += o.x2; x3 += o.x3;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
    return *this;
  }
  Quaternion& operator*=(double s) {
    w *= s; x1 *= s; x2 *= s; x3 *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion p, const Quaternion& q) {
  return {p.w + q.w, p.x1 + q.x1, p.x2 + q.x2, p.x3 + q.x3};
}
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) {
  return {p.w - q.w, p.x1 - q.x1, p.x2 - q.x2, p.x3 - q.x3};
}
constexpr Quaternion operator-(const Quaternion& q) { return {-q.w, -q.x1, -q.x2, -q.x3}; }
constexpr Quaternion operator*(double s, const Quaternion& q) {
  return {s * q.w, s * q.x1, s * q.x2, s * q.x3};
}
constexpr Quaternion operator*(const Quaternion& q, double s) { return s * q; }

/// Hamilton product with e1 e2 = e3, e2 e3 = e1, e3 e1 = e2.
constexpr Quaternion mul(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x1 * q.x1 - p.x2 * q.x2 - p.x3 * q.x3,
          p.w * q.x1 + p.x1 * q.w + p.x2 * q.x3 - p.x3 * q.x2,
          p.w * q.x2 - p.x1 * q.x3 + p.x2 * q.w + p.x3 * q.x1,
          p.w * q.x3 + p.x1 * q.x2 - p.x2 * q.x1 + p.x3 * q.w};
}
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return mul(p, q); }

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x1, -q.x2, -q.x3}; }
constexpr double norm2(const Quaternion& q) {
  return q.w * q.w + q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3;
}
inline double norm(const Quaternion& q) { return std::hypot(std::hypot(q.w, q.x1), std::hypot(q.x2, q.x3)); }

/// Multiplicative inverse; throws DomainError for the zero quaternion.
Quaternion inverse(const Quaternion& q);

/// Element of the unit sphere S^2 of purely imaginary quaternions.
class ImaginaryUnit {
 public:
  /// e1.
  ImaginaryUnit() = default;
  /// Normalizes (u1, u2, u3); throws DomainError for a (near) zero vector.
  ImaginaryUnit(double u1, double u2, double u3);

  static ImaginaryUnit e1() { return {}; }
  static ImaginaryUnit e2() { return {0.0, 1.0, 0.0}; }
  static ImaginaryUnit e3() { return {0.0, 0.0, 1.0}; }

  double u1() const { return u1_; }
  double u2() const { return u2_; }
  double u3() const { return u3_; }
  std::array<double, 3> components() const { return {u1_, u2_, u3_}; }

  Quaternion embed() const { return {0.0, u1_, u2_, u3_}; }
  ImaginaryUnit operator-() const;
  double dot(const ImaginaryUnit& o) const { return u1_ * o.u1_ + u2_ * o.u2_ + u3_ * o.u3_; }

  /// Realization x + unit*y of a plane complex number on this slice.
  Quaternion realize(const PlaneComplex& z) const {
    return {z.real(), z.imag() * u1_, z.imag() * u2_, z.imag() * u3_};
  }

  /// A unit orthogonal to this one: Gram-Schmidt of e1, then e2, against
  /// this unit; the first candidate with a non-negligible residual wins.
  ImaginaryUnit orthogonal() const;

  friend bool operator==(const ImaginaryUnit&, const ImaginaryUnit&) = default;

 private:
  double u1_ = 1.0;
  double u2_ = 0.0;
  double u3_ = 0.0;
};

/// x + unit*y in C(unit).
struct SliceComplex {
  double x = 0.0;
  double y = 0.0;
  ImaginaryUnit unit;

  Quaternion embed() const { return unit.realize({x, y}); }
  PlaneComplex plane() const { return {x, y}; }
};

/// q = x + unit*y with y >= 0; real quaternions get unit e1.
SliceComplex slice_decompose(const Quaternion& q);

/// Components of q = z1 + z2*j with z1, z2 in C(i), where j is orthogonal
/// to i. The complex numbers are expressed in the plane model of C(i).
struct SplitPair {
  PlaneComplex first;
  PlaneComplex second;
};
SplitPair split(const Quaternion& q, const ImaginaryUnit& i, const ImaginaryUnit& j);
/// Inverse of split: i.realize(first) + i.realize(second) * j.
Quaternion join(const SplitPair& p, const ImaginaryUnit& i, const ImaginaryUnit& j);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace fracslice
