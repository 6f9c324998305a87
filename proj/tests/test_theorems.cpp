#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "fracslice/errors.hpp"
#include "fracslice/report.hpp"
#include "fracslice/specfun.hpp"
#include "fracslice/theorems.hpp"

using namespace fracslice;

namespace {

const Check* find_check(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

const char* kVariantIdentities[] = {"example45_kernel", "frac_splitting", "frac_representation", "fract131",
                                    "corollary_real",   "series",         "kernel_N",            "caputo_slice"};

}  // namespace

TEST_CASE("registry") {
  CHECK(identity_names().size() == 15);
  CHECK(is_identity("cauchy"));
  CHECK_FALSE(is_identity("nope"));
  CHECK_THROWS_AS(default_tolerance("nope"), ConfigError);
  CHECK_THROWS_AS(run_identity("nope", {}), ConfigError);
  VerifyContext ctx;
  ctx.tolerances["series"] = 1e-3;
  CHECK(ctx.tolerance("series") == 1e-3);
  CHECK(ctx.tolerance("kernel_N") == default_tolerance("kernel_N"));
}

TEST_CASE("every identity passes with the corrected conventions") {
  const auto reports = run_identities(identity_names(), VerifyContext{});
  for (const auto& r : reports) CHECK_MESSAGE(r.passed, r.identity_name);
}

TEST_CASE("exactly one convention variant holds, across random orders") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 5; ++t) {
    VerifyContext ctx;
    ctx.orders = random_orders(rng);
    ctx.seed = std::uint64_t(t);
    ctx.grid.random_units = 1;
    ctx.grid.nx = ctx.grid.ny = 4;
    for (const char* name : kVariantIdentities) {
      const VerificationReport r = run_identity(name, ctx);
      const Check* c = find_check(r, "variant:corrected");
      const Check* d = find_check(r, "variant:displayed");
      REQUIRE_MESSAGE(c, name);
      REQUIRE_MESSAGE(d, name);
      CHECK_MESSAGE(c->passed, name, " corrected rel=", c->max_rel);
      CHECK_MESSAGE(!d->passed, name, " displayed rel=", d->max_rel);
      CHECK(r.passed);
    }
    // selecting the displayed variant makes the report fail
    ctx.variant = Variant::Displayed;
    CHECK_FALSE(run_identity("frac_splitting", ctx).passed);
  }
}

TEST_CASE("reports do not depend on the thread count") {
  VerifyContext ctx;
  ctx.seed = 7;
  const std::vector<std::string> names = {"series", "frac_representation", "caputo_membership", "cauchy"};
  ::setenv("FRACSLICE_THREADS", "1", 1);
  const std::string serial = reports_to_json(run_identities(names, ctx));
  ::setenv("FRACSLICE_THREADS", "4", 1);
  const std::string parallel = reports_to_json(run_identities(names, ctx));
  ::unsetenv("FRACSLICE_THREADS");
  CHECK(serial == parallel);
  ctx.seed = 8;
  CHECK(reports_to_json(run_identities(names, ctx)) != serial);
}

TEST_CASE("Cauchy reconstruction converges monotonically in the node count") {
  // f(q) = q^3 + e2, evaluated off the real axis and off the contour's slice
  const MonomialSum f = slice_polynomial({Quaternion::e2(), Quaternion(0.0), Quaternion(0.0), Quaternion(1.0)}, 0.0);
  const Quaternion q = ImaginaryUnit(0.3, 0.4, 0.5).realize({0.55, 0.6});
  const Quaternion exact = f.eval(ImaginaryUnit(0.3, 0.4, 0.5), 0.55, 0.6);
  double prev = 1e300;
  for (int n : {64, 128, 256, 512}) {
    const double err = norm(cauchy_eval(f, {0.0, 1.0, n}, q, ImaginaryUnit::e1()) - exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-6);
  for (const auto& u : {ImaginaryUnit::e2(), ImaginaryUnit::e3()})
    CHECK(norm(cauchy_eval(f, {0.0, 1.0, 512}, q, u) - exact) < 1e-6);
  CHECK_THROWS_AS(cauchy_eval(f, {0.0, 1.0, 512}, Quaternion(1.0), ImaginaryUnit::e1()), DomainError);
}

TEST_CASE("classical splitting and representation") {
  const SliceDomain dom;
  GridSpec g;
  g.nx = g.ny = 3;
  const MonomialSum f = slice_polynomial({Quaternion(1, 2, 3, 4), Quaternion(0, 1, 0, 0), Quaternion(0.5)}, 0.0);
  const ImaginaryUnit i(1.0, 1.0, 0.0);
  CHECK(verify_splitting_classical(f, i, i.orthogonal(), dom, g, 1e-12).passed);
  CHECK_THROWS_AS(verify_splitting_classical(f, i, ImaginaryUnit::e1(), dom, g, 1e-12), DomainError);
  CHECK(verify_representation_classical(f, 0.3, 0.7, i, ImaginaryUnit::e3(), 1e-12).passed);
}

TEST_CASE("lambda coefficients") {
  const OrderPair o{ComplexOrder(0.3, 0.1), ComplexOrder(0.6, -0.2)};
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      const PlaneComplex direct =
          gamma(PlaneComplex(n + 1.0)) / (gamma(double(n - k) + o.alpha.value()) * gamma(double(k) + o.beta.value()));
      CHECK(std::abs(lambda_coeff(k, n, o) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("kernel N: truncated series against the closed form") {
  std::mt19937_64 rng(99);
  const ImaginaryUnit u(0.2, -0.7, 0.4);
  for (int t = 0; t < 5; ++t) {
    const OrderPair o = random_orders(rng);
    const Quaternion zeta = u.realize({0.9, 0.7});
    const Quaternion q = u.realize({0.45, 0.35});  // |q - a| = |zeta - a| / 2
    const KernelNResult r = kernel_N(zeta, q, 0.0, o, 30);
    // both sides are the same partial sum; the omitted tail may still trip the 1e-10 warning
    CHECK(std::isfinite(r.tail_estimate));
    CHECK(r.ratio == doctest::Approx(0.5));
    const Quaternion c = kernel_N_closed(zeta, q, 0.0, o, 30);
    CHECK(norm(r.value - c) <= 1e-8 * std::max(1.0, norm(c)));
  }
}

TEST_CASE("kernel N warns outside the disc of convergence") {
  const ImaginaryUnit u = ImaginaryUnit::e1();
  const OrderPair o{ComplexOrder(0.5, 0.2), ComplexOrder(0.4, -0.15)};
  const KernelNResult r = kernel_N(u.realize({0.3, 0.2}), u.realize({0.5, 0.5}), 0.0, o, 30);
  CHECK(r.warning);
  CHECK(r.message.find("ConvergenceWarning") != std::string::npos);
  // a short truncation near the boundary leaves a large tail
  const KernelNResult s = kernel_N(u.realize({0.5, 0.5}), u.realize({0.45, 0.44}), 0.0, o, 3);
  CHECK(s.warning);
}
