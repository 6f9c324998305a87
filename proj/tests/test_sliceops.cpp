#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fracslice/errors.hpp"
#include "fracslice/sliceops.hpp"
#include "fracslice/specfun.hpp"

using namespace fracslice;

namespace {

const OrderPair kOrders{ComplexOrder(0.5, 0.2), ComplexOrder(0.4, -0.15)};
const SliceOperator kRL{OpKind::RiemannLiouville, Side::Left, UnitSide::Left};
const SliceOperator kCaputo{OpKind::Caputo, Side::Left, UnitSide::Left};

GridSpec small_grid() {
  GridSpec g;
  g.random_units = 1;
  g.nx = 3;
  g.ny = 3;
  return g;
}

}  // namespace

TEST_CASE("RL slice derivative of a constant is the closed form") {
  const SliceDomain dom;
  const MonomialSum one = slice_polynomial({Quaternion(1.0)}, dom.a);
  const ImaginaryUnit u = ImaginaryUnit::e1();
  const double x = 0.5, y = 0.5;
  const PlaneComplex a = kOrders.alpha.value(), b = kOrders.beta.value();
  // x^-a / Gamma(1-a) + i y^-b / Gamma(1-b), realized on the slice
  const Quaternion exact = u.realize(cpow(x, -a) / gamma(1.0 - a) + PlaneComplex(0, 1) * cpow(y, -b) / gamma(1.0 - b));
  CHECK(norm(d_rl_left(one, dom, kOrders, u, x, y) - exact) < 1e-14);
  CHECK(norm(d_rl_left(sampled_view(one), dom, kOrders, u, x, y) - exact) < 1e-7);
  CHECK(norm(d_caputo_left(one, dom, kOrders, u, x, y)) == 0.0);
}

TEST_CASE("operator names") {
  for (const char* n : {"d_rl_left", "d_rl_rightsided", "d_rl_left_r", "d_caputo_left", "d_caputo_rightsided",
                        "d_caputo_left_r"})
    CHECK(operator_from_name(n).has_value());
  CHECK_FALSE(operator_from_name("d_rl").has_value());
  CHECK(parse_variant("displayed") == Variant::Displayed);
  CHECK(variant_name(Variant::Corrected) == "corrected");
  CHECK_THROWS_AS(parse_variant("other"), ConfigError);
}

TEST_CASE("sampled path agrees with the symbolic path") {
  const SliceDomain dom;
  const MonomialSum f = slice_polynomial({Quaternion(0.3, 1, 0, 0), Quaternion(1, 0, 2, 0), Quaternion(0, 0, 0, 1)}, 0.0);
  const ImaginaryUnit u(1.0, -1.0, 0.5);
  for (const char* n : {"d_rl_left", "d_rl_rightsided", "d_rl_left_r", "d_caputo_left", "d_caputo_rightsided",
                        "d_caputo_left_r"}) {
    const SliceOperator op = *operator_from_name(n);
    for (auto [x, y] : {std::pair{0.4, 0.3}, std::pair{0.7, 0.6}}) {
      const Quaternion s = apply_operator(op, f, dom, kOrders, u, x, y);
      const Quaternion n2 = apply_operator(op, sampled_view(f), dom, kOrders, u, x, y);
      CHECK_MESSAGE(mixed_residual(s, n2) < 1e-5, n);
    }
  }
}

TEST_CASE("right-sided operators need polynomial sums") {
  const SliceDomain dom;
  const MonomialSum k = kernel_power(kOrders, dom);
  CHECK_THROWS_AS(d_rl_rightsided(k, dom, kOrders, ImaginaryUnit::e1(), 0.5, 0.5), DomainError);
  const SliceOperator right_unit{OpKind::RiemannLiouville, Side::Left, UnitSide::Right};
  CHECK_THROWS(sym_slice_operator(right_unit, k, dom, kOrders));
}

TEST_CASE("kernel functions") {
  const SliceDomain dom;
  const GridSpec g = small_grid();
  CHECK(is_rl_slice_regular(kernel_power(kOrders, dom), dom, kOrders, g, 1e-12).passed);
  CHECK(is_rl_slice_regular(kernel_linear(kOrders, dom), dom, kOrders, g, 1e-12).passed);
  CHECK(is_rl_slice_regular(example45({}, kOrders, dom, Variant::Corrected), dom, kOrders, g, 1e-12).passed);
  CHECK_FALSE(is_rl_slice_regular(example45({}, kOrders, dom, Variant::Displayed), dom, kOrders, g, 1e-6).passed);
  // constants are not RL slice regular
  CHECK_FALSE(is_rl_slice_regular(slice_polynomial({Quaternion(1.0)}, 0.0), dom, kOrders, g, 1e-6).passed);

  const MonomialSum q2 = slice_polynomial({Quaternion(0.0), Quaternion(0.0), Quaternion(1.0)}, 0.0);
  const MonomialSum uv = uv_projection(q2, dom), an = anchor_projection(q2);
  CHECK(operator_kernel_report(kCaputo, "uv", uv, dom, kOrders, g, 1e-12).passed);
  CHECK(operator_kernel_report(kRL, "uv", uv, dom, kOrders, g, 1e-12).passed);
  CHECK_FALSE(operator_kernel_report(kCaputo, "anchor", an, dom, kOrders, g, 1e-6).passed);
  CHECK_FALSE(operator_kernel_report(kRL, "anchor", an, dom, kOrders, g, 1e-6).passed);
}

TEST_CASE("associated integral map of a kernel function is slice regular") {
  const SliceDomain dom;
  const GridSpec g = small_grid();
  const MonomialSum k = kernel_linear(kOrders, dom, Quaternion(0.2, 1.0, 0.0, -1.0));
  const MonomialSum m = sym_assoc_integral_map(k, dom, kOrders);
  CHECK(cr_bar_report(m, "sym", dom, g, 1e-12).passed);
  CHECK(cr_bar_report(assoc_integral_map(sampled_view(k), dom, kOrders), "sampled", dom, g, 1e-6).passed);
  // value of the map is (x - a + unit y) q + const: check linear growth along x
  const ImaginaryUnit u = ImaginaryUnit::e2();
  const Quaternion d = m.eval(u, 0.8, 0.4) - m.eval(u, 0.3, 0.4);
  CHECK(norm(d - 0.5 * Quaternion(0.2, 1.0, 0.0, -1.0)) < 1e-12);
  CHECK(assoc_y_order(kOrders, Variant::Displayed) == 1.0 - std::conj(kOrders.beta.value()));
}

TEST_CASE("grids") {
  const SliceDomain dom;
  GridSpec g;
  g.seed = 9;
  const auto a = make_grid(dom, g), b = make_grid(dom, g);
  CHECK(a.size() == std::size_t(3 + g.random_units) * g.nx * g.ny);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].unit == b[k].unit);
    CHECK(a[k].x == b[k].x);
    CHECK(a[k].x > dom.a);
    CHECK(a[k].y > 0.0);
  }
  for (const auto& u : random_units(3, 50)) CHECK(std::abs(u.dot(u) - 1.0) < 1e-14);
  const auto c = chebyshev_nodes(0.0, 1.0, 7);
  for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k] > c[k - 1]);
  g.units = {ImaginaryUnit::e3()};
  CHECK(make_grid(dom, g).size() == std::size_t(g.nx * g.ny));
  g.nx = 0;
  CHECK_THROWS(make_grid(dom, g));
  SliceDomain bad;
  bad.u = 2.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("mixed residual") {
  CHECK(mixed_residual(Quaternion(1e-3), Quaternion(0.0)) == doctest::Approx(1e-3));
  CHECK(mixed_residual(Quaternion(1000.0), Quaternion(1001.0)) == doctest::Approx(1.0 / 1001.0));
}
