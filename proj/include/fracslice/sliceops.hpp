#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fracslice/fracnum.hpp"
#include "fracslice/fracsym.hpp"
#include "fracslice/quat.hpp"

namespace fracslice {

/// The rectangle-generated domain: x in [a, b], y in [0, c], with the frozen
/// base point (u, v) used by the slice operators.
struct SliceDomain {
  double a = 0.0;
  double b = 1.0;
  double c = 1.0;
  double u = 0.5;
  double v = 0.5;
  void validate() const;
};

struct OrderPair {
  ComplexOrder alpha{0.5, 0.0};
  ComplexOrder beta{0.5, 0.0};
};

/// Convention switch for identities whose printed form is ambiguous or wrong.
enum class Variant { Corrected, Displayed };
std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);  // throws ConfigError

using SliceFn = std::function<Quaternion(const ImaginaryUnit&, double, double)>;

/// Black-box function of (unit, x, y). Exact partials are optional; without
/// them the operators fall back to finite differences.
struct SampledFunction {
  SliceFn fn;
  SliceFn dx;
  SliceFn dy;
};

using SliceFunction = std::variant<MonomialSum, SampledFunction>;

/// Black-box view of a sum, carrying its exact partial derivatives.
SampledFunction sampled_view(const MonomialSum& s);

/// Value of f at (unit, x, y).
Quaternion evaluate(const SliceFunction& f, const ImaginaryUnit& unit, double x, double y);
/// Value of a slice function at an arbitrary quaternion (negative y is
/// folded onto the opposite unit).
Quaternion evaluate_at(const SliceFunction& f, const Quaternion& q);

/// Which fractional slice operator to apply.
enum class OpKind { RiemannLiouville, Caputo };
enum class UnitSide { Left, Right };  // side on which the slice unit multiplies the y-part
struct SliceOperator {
  OpKind kind = OpKind::RiemannLiouville;
  Side side = Side::Left;  // a+/0+ or b-/c-
  UnitSide unit_side = UnitSide::Left;
};

/// Operator names accepted by the CLI: d_rl_left, d_rl_rightsided,
/// d_rl_left_r, d_caputo_left, d_caputo_rightsided, d_caputo_left_r.
std::optional<SliceOperator> operator_from_name(const std::string& name);

/// Symbolic form of an operator: a sum whose value on every slice and at
/// every (x, y) is the operator applied to s. Right-sided operators need
/// polynomial sums (they are re-expanded around b and c).
MonomialSum sym_slice_operator(const SliceOperator& op, const MonomialSum& s, const SliceDomain& dom,
                               const OrderPair& orders);
/// The x- and y-components separately (y-component without the unit factor).
std::pair<MonomialSum, MonomialSum> sym_slice_components(const SliceOperator& op, const MonomialSum& s,
                                                         const SliceDomain& dom, const OrderPair& orders);

/// Applies the operator at (unit, x, y); symbolic path exact, sampled path
/// via quadrature on the components F, G of f = F + G j.
Quaternion apply_operator(const SliceOperator& op, const SliceFunction& f, const SliceDomain& dom,
                          const OrderPair& orders, const ImaginaryUnit& unit, double x, double y,
                          const QuadratureConfig& cfg = {});

Quaternion d_rl_left(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                     const ImaginaryUnit& unit, double x, double y, const QuadratureConfig& cfg = {});
Quaternion d_rl_rightsided(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                           const ImaginaryUnit& unit, double x, double y, const QuadratureConfig& cfg = {});
Quaternion d_rl_left_rlinear(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                             const ImaginaryUnit& unit, double x, double y, const QuadratureConfig& cfg = {});
Quaternion d_caputo_left(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                         const ImaginaryUnit& unit, double x, double y, const QuadratureConfig& cfg = {});

/// I_{a+}^{1-alpha} f (x + unit v) and I_{0+}^{1-beta} f (u + unit y).
std::pair<Quaternion, Quaternion> slice_fractional_integrals(const SliceFunction& f, const SliceDomain& dom,
                                                             const OrderPair& orders, const ImaginaryUnit& unit,
                                                             double x, double y, const QuadratureConfig& cfg = {});

/// Order of the y-integral in the associated map: 1 - beta (corrected) or
/// 1 - conj(beta) (displayed).
PlaneComplex assoc_y_order(const OrderPair& orders, Variant variant);

/// q = x + unit y -> I_{a+}^{1-alpha} f (x + unit v) + I_{0+}^{sigma_y} f (u + unit y).
SliceFunction assoc_integral_map(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                                 Variant variant = Variant::Corrected, const QuadratureConfig& cfg = {});
MonomialSum sym_assoc_integral_map(const MonomialSum& s, const SliceDomain& dom, const OrderPair& orders,
                                   Variant variant = Variant::Corrected);

/// (1/2)(d/dx + unit d/dy) g on the slice; exact for sums, exact partials or
/// central differences + Richardson for sampled functions.
Quaternion cr_bar(const SliceFunction& g, const SliceDomain& dom, const ImaginaryUnit& unit, double x, double y,
                  const QuadratureConfig& cfg = {});

// Evaluation grids and reports.

struct GridSpec {
  std::vector<ImaginaryUnit> units;  // empty: e1, e2, e3 + random_units from the seed
  int random_units = 5;
  int nx = 8;
  int ny = 8;
  double margin = 0.05;  // fraction of each side length
  std::uint64_t seed = 0;
};

struct GridPoint {
  ImaginaryUnit unit;
  double x = 0.0;
  double y = 0.0;
};

/// Uniform random units from a 64-bit Mersenne twister.
std::vector<ImaginaryUnit> random_units(std::uint64_t seed, int count);
/// n Chebyshev (first kind) nodes of (lo, hi), increasing.
std::vector<double> chebyshev_nodes(double lo, double hi, int n);
/// Units outermost, then x, then y.
std::vector<GridPoint> make_grid(const SliceDomain& dom, const GridSpec& spec);

struct PointResidual {
  GridPoint point;
  double residual = 0.0;  // the quantity compared against the tolerance
  std::string error;      // non-empty when evaluation threw
};

/// One numbered comparison inside a report: a convention variant, or a
/// secondary assertion such as a sampled-path cross-check.
struct Check {
  std::string name;
  double max_abs = 0.0;
  double max_rel = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool required = false;
};

struct VerificationReport {
  std::string identity_name;
  std::string variant;   // convention used for `passed`
  std::string backend;   // symbolic, sampled or numeric
  std::vector<PointResidual> points;
  double max_abs_residual = 0.0;
  double max_rel_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<Check> checks;
  std::vector<std::string> notes;
};

/// |lhs - rhs| / max(1, |lhs|, |rhs|)
double mixed_residual(const Quaternion& lhs, const Quaternion& rhs);

/// Evaluates d_rl_left on the grid; passed iff max |value| <= tol.
VerificationReport is_rl_slice_regular(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                                       const GridSpec& grid, double tol, const QuadratureConfig& cfg = {});
/// Same for an arbitrary operator (used for Caputo membership).
VerificationReport operator_kernel_report(const SliceOperator& op, const std::string& name, const SliceFunction& f,
                                          const SliceDomain& dom, const OrderPair& orders, const GridSpec& grid,
                                          double tol, const QuadratureConfig& cfg = {});

/// Max |cr_bar g| over a grid.
VerificationReport cr_bar_report(const SliceFunction& g, const std::string& name, const SliceDomain& dom,
                                 const GridSpec& grid, double tol, const QuadratureConfig& cfg = {});

// Builtin functions.

struct Example45Params {
  Quaternion q1{1.0};
  Quaternion q2{0.0, 0.0, 1.0, 0.0};
  PlaneComplex delta{0.5, 0.2};
  PlaneComplex gamma_p{0.4, -0.1};
};

/// The product-of-braces function. Displayed: each brace is g - I^{1-order}[D g];
/// corrected: g - I^{order}[D g]. Not collected, so cancellations stay visible.
MonomialSum example45(const Example45Params& p, const OrderPair& orders, const SliceDomain& dom,
                      Variant variant = Variant::Corrected);

/// c (x-a)^(alpha-1) y^(beta-1) q: each factor lies in the kernel of its RL derivative.
MonomialSum kernel_power(const OrderPair& orders, const SliceDomain& dom, const Quaternion& q = Quaternion(1.0));

/// A kernel function whose associated map is (x - a + unit y) q + const.
MonomialSum kernel_linear(const OrderPair& orders, const SliceDomain& dom, const Quaternion& q = Quaternion(1.0));

/// g(x,y) - g(x,v) - g(u,y) + g(u,v): in the kernel and zero at the anchors.
MonomialSum uv_projection(const MonomialSum& g, const SliceDomain& dom);

/// g - g(a,y) - g(x,0) + g(a,0): zero at x = a and at y = 0 (polynomial g).
MonomialSum anchor_projection(const MonomialSum& g);

/// sum_n (x - a + unit y)^n coeffs[n], binomially expanded.
MonomialSum slice_polynomial(const std::vector<Quaternion>& coeffs, double a);

}  // namespace fracslice
