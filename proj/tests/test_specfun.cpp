#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracslice/errors.hpp"
#include "fracslice/specfun.hpp"

using namespace fracslice;

namespace {
double rel(const PlaneComplex& a, const PlaneComplex& b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("Gamma(1/2)^2 = pi") {
  const PlaneComplex g = gamma(PlaneComplex(0.5, 0.0));
  CHECK(std::abs(g * g - std::numbers::pi) <= 1e-12);
}

TEST_CASE("integer and half-integer values") {
  double fact = 1.0;
  for (int n = 1; n <= 20; ++n) {
    CHECK(rel(gamma(PlaneComplex(n, 0.0)), fact) < 1e-13);
    fact *= n;
  }
  CHECK(rel(gamma(PlaneComplex(1.5, 0.0)), std::sqrt(std::numbers::pi) / 2) < 1e-14);
}

TEST_CASE("reference values (50-digit arithmetic)") {
  CHECK(rel(gamma(PlaneComplex(0.3, 0.7)), {0.30968625674374917, -0.8567877529392706}) < 1e-13);
  CHECK(rel(gamma(PlaneComplex(5.5, -2.0)), {-35.17622217067688, 4.638013726312615}) < 1e-13);
  CHECK(rel(gamma(PlaneComplex(-0.5, 0.25)), {-2.7547269757896258, -0.03100041637541339}) < 1e-13);
  CHECK(rel(gamma(PlaneComplex(12.0, 3.0)), {12825104.1394796, 23888865.568741858}) < 1e-12);
  CHECK(rel(gamma(PlaneComplex(0.001, 0.0)), {999.4237724845955, 0.0}) < 1e-13);
  // log Gamma is defined mod 2 pi i: compare through exp of the difference
  const PlaneComplex d = lgamma(PlaneComplex(20.0, 10.0)) - PlaneComplex(36.878224691605574, 30.112502445300308);
  CHECK(std::abs(d.real()) < 1e-12);
  CHECK(std::abs(std::remainder(d.imag(), 2 * std::numbers::pi)) < 1e-11);
}

TEST_CASE("recurrence Gamma(z+1) = z Gamma(z) on the band") {
  double worst = 0.0;
  for (double re = -2.7; re <= 6.0; re += 0.37)
    for (double im = -4.0; im <= 4.0; im += 0.53) {
      const PlaneComplex z(re, im);
      worst = std::max(worst, rel(gamma(z + 1.0), z * gamma(z)));
    }
  CHECK(worst <= 1e-11);
}

TEST_CASE("|Gamma(1+iy)|^2 = pi y / sinh(pi y)") {
  for (double y : {0.5, 1.0, 2.0}) {
    const double lhs = std::norm(gamma(PlaneComplex(1.0, y)));
    const double rhs = std::numbers::pi * y / std::sinh(std::numbers::pi * y);
    CHECK(std::abs(lhs - rhs) / rhs <= 1e-10);
  }
}

TEST_CASE("reflection and Stirling asymptotics") {
  for (const PlaneComplex z : {PlaneComplex(0.25, 0.5), PlaneComplex(0.7, -1.2), PlaneComplex(0.1, 3.0)}) {
    const PlaneComplex lhs = gamma(z) * gamma(1.0 - z);
    CHECK(rel(lhs, std::numbers::pi / std::sin(std::numbers::pi * z)) < 1e-12);
  }
  // Gamma(z + 1/2) / Gamma(z) ~ z^(1/2) (1 - 1/(8z) + 1/(128z^2) + 5/(1024z^3) - 21/(32768z^4))
  const PlaneComplex z(40.0, 25.0);
  const PlaneComplex s = std::sqrt(z) * (1.0 - 1.0 / (8.0 * z) + 1.0 / (128.0 * z * z) +
                                         5.0 / (1024.0 * z * z * z) - 21.0 / (32768.0 * z * z * z * z));
  CHECK(rel(gamma_ratio(z + 0.5, z), s) < 1e-10);
}

TEST_CASE("poles") {
  CHECK(is_gamma_pole(PlaneComplex(0.0, 0.0)));
  CHECK(is_gamma_pole(PlaneComplex(-3.0, 0.0)));
  CHECK_FALSE(is_gamma_pole(PlaneComplex(-3.0, 0.1)));
  CHECK_THROWS_AS(gamma(PlaneComplex(-2.0, 0.0)), PoleError);
  CHECK(rgamma(PlaneComplex(-4.0, 0.0)) == PlaneComplex(0.0, 0.0));
  CHECK(rel(rgamma(PlaneComplex(0.3, 0.7)) * gamma(PlaneComplex(0.3, 0.7)), 1.0) < 1e-14);
}

TEST_CASE("complex powers of a positive base") {
  CHECK(rel(cpow(2.0, {3.0, 0.0}), 8.0) < 1e-15);
  const PlaneComplex p = cpow(0.5, {0.0, 1.0});
  CHECK(std::abs(std::abs(p) - 1.0) < 1e-15);
  CHECK_THROWS_AS(cpow(0.0, {0.5, 0.0}), DomainError);
  CHECK_THROWS_AS(cpow(-1.0, {0.5, 0.0}), DomainError);
}
