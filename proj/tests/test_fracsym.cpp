#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fracslice/errors.hpp"
#include "fracslice/fracnum.hpp"
#include "fracslice/fracsym.hpp"
#include "fracslice/specfun.hpp"

using namespace fracslice;

namespace {

double uni(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

ImaginaryUnit rand_unit(std::mt19937_64& rng) {
  return {uni(rng, -1, 1), uni(rng, -1, 1), uni(rng, -1, 1) + 0.1};
}

// exponents with re >= 1 (or exactly 0) so Caputo and RL are both classical
MonomialSum rand_sum(std::mt19937_64& rng, int n) {
  MonomialSum s(0.0);
  const PlaneComplex mus[] = {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {1.5, 0.2}, {1.25, -0.3}};
  for (int k = 0; k < n; ++k) {
    MonomialTerm t;
    t.scalar = {uni(rng, -1, 1), uni(rng, -1, 1)};
    t.mu = mus[rng() % 5];
    t.nu = mus[rng() % 5];
    t.right_const = {uni(rng, -1, 1), uni(rng, -1, 1), uni(rng, -1, 1), uni(rng, -1, 1)};
    s.add(t);
  }
  return s;
}

using PlaneOp = std::function<PlaneComplex(const Integrand1D&, const Integrand1D&, double)>;

// Per-term numeric oracle in x: the operator acts on the plane factor c x^mu
// (with y^nu frozen), the result is realized on the slice and multiplied by Q.
Quaternion numeric_x(const MonomialSum& s, const ImaginaryUnit& u, double x, double y, const PlaneOp& op) {
  Quaternion acc(0.0);
  for (const auto& t : s.terms()) {
    const PlaneComplex yn = y > 0 ? cpow(y, t.nu) : PlaneComplex(t.nu == 0.0 ? 1.0 : 0.0);
    const Integrand1D f{[&](double r) { return t.scalar * (t.mu == 0.0 ? 1.0 : cpow(r, t.mu)) * yn; }, 0.0, 1.0};
    const Integrand1D df{[&](double r) {
                           return t.mu == 0.0 ? PlaneComplex(0.0) : t.scalar * t.mu * cpow(r, t.mu - 1.0) * yn;
                         },
                         0.0, 1.0};
    acc += u.realize(op(f, df, x)) * t.right_const;
  }
  return acc;
}

}  // namespace

TEST_CASE("evaluation realizes formal scalars on the slice") {
  MonomialSum s(0.0);
  s.add({{0.0, 1.0}, {1.0, 0.0}, {0.0, 0.0}, Quaternion::e2()});  // i x e2
  const ImaginaryUnit u = ImaginaryUnit::e1();
  CHECK(s.eval(u, 0.5, 0.3) == Quaternion(0.0, 0.0, 0.0, 0.5));  // 0.5 e1 e2
  CHECK(sym_eval(s, u, 0.5, 0.3) == s.eval(u, 0.5, 0.3));
}

TEST_CASE("collected cancels exactly") {
  std::mt19937_64 rng(4);
  const MonomialSum s = rand_sum(rng, 6);
  CHECK((s - s).collected().max_coefficient() < 1e-15);  // rounding residue only
  const MonomialSum c = (s + s).collected();
  const ImaginaryUnit u = rand_unit(rng);
  CHECK(norm(c.eval(u, 0.4, 0.6) - 2.0 * s.eval(u, 0.4, 0.6)) < 1e-14);
}

TEST_CASE("symbolic RL and Caputo match quadrature") {
  std::mt19937_64 rng(8);
  const PlaneComplex alpha(0.45, 0.25);
  const ComplexOrder ao(alpha.real(), alpha.imag());
  for (int t = 0; t < 4; ++t) {
    const MonomialSum s = rand_sum(rng, 4);
    const ImaginaryUnit u = rand_unit(rng);
    const double x = uni(rng, 0.3, 0.9), y = uni(rng, 0.2, 0.9);
    const PlaneOp rl = [&](const Integrand1D& f, const Integrand1D&, double xx) {
      return rl_derivative_left(f, 0.0, ao, xx);
    };
    const PlaneOp cap = [&](const Integrand1D& f, const Integrand1D& df, double xx) {
      return caputo_left(f, df, 0.0, ao, xx);
    };
    const PlaneOp integ = [&](const Integrand1D& f, const Integrand1D&, double xx) {
      return rl_integral_left(f, 0.0, alpha, xx);
    };
    const double scale = 1.0 + norm(s.eval(u, x, y));
    CHECK(norm(sym_rl_derivative_x(s, alpha).eval(u, x, y) - numeric_x(s, u, x, y, rl)) < 1e-6 * scale);
    CHECK(norm(sym_caputo_x(s, alpha).eval(u, x, y) - numeric_x(s, u, x, y, cap)) < 1e-8 * scale);
    CHECK(norm(sym_rl_integral_x(s, alpha).eval(u, x, y) - numeric_x(s, u, x, y, integ)) < 1e-9 * scale);
  }
}

TEST_CASE("power rule and kernel of the RL derivative") {
  const PlaneComplex a(0.3, 0.4);
  MonomialSum s(0.0);
  s.add({1.0, a - 1.0, 0.0, Quaternion(1.0)});  // (x)^(a-1) is annihilated
  CHECK(sym_rl_derivative_x(s, a).collected().empty());
  MonomialSum p(0.0);
  p.add({1.0, 2.0, 0.0, Quaternion(1.0)});
  const MonomialSum d = sym_rl_derivative_x(p, a);
  const ImaginaryUnit u = ImaginaryUnit::e3();
  const Quaternion exact = u.realize(gamma(PlaneComplex(3.0)) * cpow(0.6, 2.0 - a) / gamma(3.0 - a));
  CHECK(norm(d.eval(u, 0.6, 0.1) - exact) < 1e-14);
  // D^a I^a = identity, exactly
  std::mt19937_64 rng(2);
  const MonomialSum r = rand_sum(rng, 5);
  CHECK(norm(sym_rl_derivative_x(sym_rl_integral_x(r, a), a).eval(u, 0.7, 0.4) - r.eval(u, 0.7, 0.4)) < 1e-13);
  CHECK(norm(sym_rl_derivative_y(sym_rl_integral_y(r, a), a).eval(u, 0.7, 0.4) - r.eval(u, 0.7, 0.4)) < 1e-13);
}

TEST_CASE("classical partials, substitution, reframing") {
  std::mt19937_64 rng(6);
  const MonomialSum s = rand_sum(rng, 5);
  const ImaginaryUnit u = rand_unit(rng);
  const double x = 0.55, y = 0.45, h = 1e-5;
  const Quaternion fdx = (s.eval(u, x + h, y) - s.eval(u, x - h, y)) * (0.5 / h);
  CHECK(norm(sym_partial(s, Var::X).eval(u, x, y) - fdx) < 1e-8);
  CHECK(norm(substitute_x(s, 0.3).eval(u, 0.9, y) - s.eval(u, 0.3, y)) < 1e-14);
  CHECK(norm(substitute_y(s, 0.2).eval(u, x, 0.8) - s.eval(u, x, 0.2)) < 1e-14);
  MonomialSum poly(0.0);
  poly.add({{1.0, 0.5}, 2.0, 1.0, Quaternion(0.0, 1.0, 2.0, 0.0)});
  poly.add({3.0, 1.0, 0.0, Quaternion(1.0)});
  const MonomialSum rf = reframe(reframe(poly, Var::X, 1.0, -1.0), Var::Y, 1.0, -1.0);
  CHECK(norm(rf.eval(u, x, y) - poly.eval(u, x, y)) < 1e-14);
  CHECK_THROWS_AS(reframe(s, Var::X, 1.0, -1.0), DomainError);
}

TEST_CASE("slice-pinned transforms") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 5; ++t) {
    const MonomialSum s = rand_sum(rng, 4);
    const ImaginaryUnit i = rand_unit(rng), j = rand_unit(rng);
    const double x = uni(rng, 0.1, 1.0), y = uni(rng, 0.1, 1.0);
    CHECK(norm(mirror(s).eval(i, x, y) - s.eval(-i, x, y)) < 1e-13);
    CHECK(norm(transfer(s, i, j).eval(j, x, y) - s.eval(i, x, y)) < 1e-13);
    const Quaternion w(uni(rng, -1, 1), uni(rng, -1, 1), uni(rng, -1, 1), uni(rng, -1, 1));
    CHECK(norm(left_multiply(w, s, i).eval(i, x, y) - w * s.eval(i, x, y)) < 1e-13);
  }
}

TEST_CASE("products need real right constants on the left factor") {
  MonomialSum f(0.0), g(0.0);
  f.add({{0.0, 1.0}, 1.0, 0.0, Quaternion(2.0)});
  g.add({1.0, 0.0, 1.0, Quaternion::e2()});
  const ImaginaryUnit u = ImaginaryUnit::e1();
  CHECK(norm(product(f, g).eval(u, 0.3, 0.6) - f.eval(u, 0.3, 0.6) * g.eval(u, 0.3, 0.6)) < 1e-15);
  CHECK_THROWS_AS(product(g, f), DomainError);
}
