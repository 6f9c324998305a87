#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracslice/errors.hpp"
#include "fracslice/fracnum.hpp"
#include "fracslice/specfun.hpp"

using namespace fracslice;

namespace {
double rel(const PlaneComplex& a, const PlaneComplex& b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

Integrand1D fn(std::function<PlaneComplex(double)> f, double lo = 0.0, double hi = 1.0) { return {std::move(f), lo, hi}; }
}  // namespace

TEST_CASE("order validation") {
  CHECK_NOTHROW(ComplexOrder(0.5, -3.0));
  CHECK_THROWS_AS(ComplexOrder(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(ComplexOrder(1.0, 0.2), DomainError);
  QuadratureConfig q;
  q.nodes = 4;
  CHECK_THROWS_AS(q.validate(), ConfigError);
}

TEST_CASE("RL integrals against independent quadrature") {
  const PlaneComplex s(0.6, 0.3);
  const auto one = fn([](double) { return PlaneComplex(1.0); });
  CHECK(rel(rl_integral_left(one, 0.0, s, 0.7), {0.9285479566267875, -0.13837311152926915}) < 1e-10);
  const auto ex = fn([](double t) { return PlaneComplex(std::exp(t)); });
  CHECK(rel(rl_integral_left(ex, 0.0, s, 0.8), {1.665545865564662, -0.33422565795270126}) < 1e-10);
  const auto co = fn([](double t) { return PlaneComplex(std::cos(t)); });
  CHECK(rel(rl_integral_right(co, 1.0, s, 0.3), {0.7566115029934474, -0.15284491194235517}) < 1e-10);
}

TEST_CASE("integrable singularity at the anchor") {
  // I^s t^(-1/2) = Gamma(1/2) x^(s-1/2) / Gamma(s+1/2)
  const PlaneComplex s(0.4, 0.2);
  const auto f = fn([](double t) { return PlaneComplex(1.0 / std::sqrt(t)); });
  const double x = 0.6;
  const PlaneComplex exact = gamma(PlaneComplex(0.5)) * cpow(x, s - 0.5) / gamma(s + 0.5);
  QuadratureConfig cfg;
  cfg.nodes = 128;
  CHECK(rel(rl_integral_left(f, 0.0, s, x, cfg), exact) < 1e-8);
}

TEST_CASE("RL derivative power rule and Caputo of constants") {
  const ComplexOrder a(0.3, -0.2);
  const auto lin = fn([](double t) { return PlaneComplex(t); });
  for (double x : {0.2, 0.5, 0.9}) {
    const PlaneComplex exact = cpow(x, 1.0 - a.value()) / gamma(2.0 - a.value());
    CHECK(rel(rl_derivative_left(lin, 0.0, a, x), exact) < 1e-7);
    // right-sided on [0, 1]: D_{1-} (1 - t) = (1 - x)^(1-a) / Gamma(2-a)
    const auto rlin = fn([](double t) { return PlaneComplex(1.0 - t); });
    CHECK(rel(rl_derivative_right(rlin, 1.0, a, 1.0 - x), exact) < 1e-7);
  }
  const auto c = fn([](double) { return PlaneComplex(2.0); });
  const auto zero = fn([](double) { return PlaneComplex(0.0); });
  CHECK(std::abs(caputo_left(c, zero, 0.0, a, 0.5)) == 0.0);
  // Caputo of t equals RL of t minus the boundary term, which vanishes here
  const auto d1 = fn([](double) { return PlaneComplex(1.0); });
  CHECK(rel(caputo_left(lin, d1, 0.0, a, 0.5), rl_derivative_left(lin, 0.0, a, 0.5)) < 1e-7);
  CHECK(rel(caputo_left(lin, fd_derivative(lin), 0.0, a, 0.5), rl_derivative_left(lin, 0.0, a, 0.5)) < 1e-7);
}

TEST_CASE("stencil guards") {
  QuadratureConfig cfg;
  CHECK_THROWS_AS(stencil_step(Side::Left, 0.0, 0.0, 1.0, 1e-6, cfg), DomainError);
  CHECK_THROWS_AS(stencil_step(Side::Left, 0.0, 0.0, 1.0, 1.0, cfg), StencilError);
  CHECK(stencil_step(Side::Left, 0.0, 0.0, 1.0, 0.5, cfg) > 0.0);
  const auto lin = fn([](double t) { return PlaneComplex(t); });
  CHECK_THROWS_AS(rl_integral_left(lin, 0.5, {0.5, 0.0}, 0.5), DomainError);
}

TEST_CASE("Richardson extrapolation") {
  const double d = richardson_derivative<double>([](double t) { return std::sin(t); }, 0.3, 0.1, 3);
  CHECK(std::abs(d - std::cos(0.3)) < 1e-12);
}
