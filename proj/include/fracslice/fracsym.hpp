#pragma once

#include <functional>
#include <vector>

#include "fracslice/fracnum.hpp"
#include "fracslice/quat.hpp"

namespace fracslice {

/// c * (dx (x - x0))^mu * (dy (y - y0))^nu * right_const, where the formal
/// complex numbers c, mu, nu live in the plane model and are realized on the
/// slice that evaluates the term.
struct MonomialTerm {
  PlaneComplex scalar{1.0, 0.0};
  PlaneComplex mu{0.0, 0.0};
  PlaneComplex nu{0.0, 0.0};
  Quaternion right_const{1.0};
};

/// Anchors and orientations of the two power bases. (a, +1, 0, +1) gives the
/// left-sided bases (x - a), y; (b, -1, c, -1) the right-sided (b - x), (c - y).
struct Frame {
  double x_anchor = 0.0;
  double x_dir = 1.0;
  double y_anchor = 0.0;
  double y_dir = 1.0;
  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Exponent comparison tolerance used for grouping like terms.
inline constexpr double kExponentTol = 1e-12;

class MonomialSum {
 public:
  MonomialSum() = default;
  explicit MonomialSum(double anchor_a) { frame_.x_anchor = anchor_a; }
  explicit MonomialSum(const Frame& frame) : frame_(frame) {}
  MonomialSum(const Frame& frame, std::vector<MonomialTerm> terms);

  const Frame& frame() const { return frame_; }
  double anchor_a() const { return frame_.x_anchor; }
  const std::vector<MonomialTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Appends a term; exact zeros (scalar or right constant) are dropped.
  MonomialSum& add(const MonomialTerm& t);
  MonomialSum& operator+=(const MonomialSum& o);
  MonomialSum& operator-=(const MonomialSum& o);

  /// Like terms merged: exponents equal within kExponentTol. A group whose
  /// right constants all agree becomes one term; otherwise it becomes
  /// 1 * m * sum(re c_r Q_r) + i * m * sum(im c_r Q_r). Exact zeros are pruned.
  MonomialSum collected() const;

  /// max |scalar| * |right_const| over terms (0 for the empty sum).
  double max_coefficient() const;

  /// Value on the slice C(unit) at x + unit*y.
  Quaternion eval(const ImaginaryUnit& unit, double x, double y) const;

  /// Callable view (unit, x, y) -> value.
  std::function<Quaternion(const ImaginaryUnit&, double, double)> as_function() const;

 private:
  Frame frame_{};
  std::vector<MonomialTerm> terms_;
};

MonomialSum operator+(MonomialSum a, const MonomialSum& b);
MonomialSum operator-(MonomialSum a, const MonomialSum& b);
/// Formal scalar on the left: w * f. Multiplying by the slice unit is w = i.
MonomialSum operator*(const PlaneComplex& w, const MonomialSum& s);
/// Constant quaternion on the right: f * q.
MonomialSum operator*(const MonomialSum& s, const Quaternion& q);

/// f * g, defined when every right constant of f is real (so it commutes
/// with the slice values of g). Throws DomainError otherwise.
MonomialSum product(const MonomialSum& f, const MonomialSum& g);

Quaternion sym_eval(const MonomialSum& s, const ImaginaryUnit& unit, double x, double y);

// Fractional operators in the sum's own frame: with x_dir = +1 they are the
// left (a+) operators, with x_dir = -1 the right (b-) ones. Orders are taken
// as plane complex numbers so conjugated orders can be applied directly.
MonomialSum sym_rl_integral_x(const MonomialSum& s, const PlaneComplex& sigma);
MonomialSum sym_rl_integral_y(const MonomialSum& s, const PlaneComplex& sigma);
MonomialSum sym_rl_derivative_x(const MonomialSum& s, const PlaneComplex& alpha);
MonomialSum sym_rl_derivative_y(const MonomialSum& s, const PlaneComplex& beta);
MonomialSum sym_caputo_x(const MonomialSum& s, const PlaneComplex& alpha);
MonomialSum sym_caputo_y(const MonomialSum& s, const PlaneComplex& beta);
inline MonomialSum sym_rl_derivative_x(const MonomialSum& s, const ComplexOrder& a) {
  return sym_rl_derivative_x(s, a.value());
}
inline MonomialSum sym_rl_derivative_y(const MonomialSum& s, const ComplexOrder& b) {
  return sym_rl_derivative_y(s, b.value());
}
inline MonomialSum sym_caputo_x(const MonomialSum& s, const ComplexOrder& a) {
  return sym_caputo_x(s, a.value());
}
inline MonomialSum sym_caputo_y(const MonomialSum& s, const ComplexOrder& b) {
  return sym_caputo_y(s, b.value());
}

enum class Var { X, Y };
/// Classical partial derivative in the physical variable (dir included).
MonomialSum sym_partial(const MonomialSum& s, Var v);

/// Terms whose exponent in v is zero (the part constant in that variable).
MonomialSum constant_part(const MonomialSum& s, Var v);

/// Freezes x = u (resp. y = v): the power becomes part of the scalar.
MonomialSum substitute_x(const MonomialSum& s, double u);
MonomialSum substitute_y(const MonomialSum& s, double v);

/// Re-expands a sum with nonnegative integer exponents in v around a new
/// anchor/orientation (binomial expansion). Throws DomainError otherwise.
MonomialSum reframe(const MonomialSum& s, Var v, double anchor, double dir);

// Slice-pinned transforms. The formal scalars of the result are meant to be
// realized on the slice named in each description.

/// Value on unit i equals the value of s on -i.
MonomialSum mirror(const MonomialSum& s);
/// Value on `to` equals the value of s on `from`.
MonomialSum transfer(const MonomialSum& s, const ImaginaryUnit& from, const ImaginaryUnit& to);
/// Value on `unit` equals w * (value of s on `unit`) for a quaternion w.
MonomialSum left_multiply(const Quaternion& w, const MonomialSum& s, const ImaginaryUnit& unit);

}  // namespace fracslice
