#include "fracslice/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numbers>

#include "fracslice/errors.hpp"
#include "fracslice/parallel.hpp"
#include "fracslice/specfun.hpp"

namespace fracslice {

namespace {

constexpr PlaneComplex kI{0.0, 1.0};
const char* const kSampledName = "sampled_agreement";

double uniform(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }
double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform(rng); }

Quaternion random_quaternion(std::mt19937_64& rng) {
  return {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
}
PlaneComplex random_complex(std::mt19937_64& rng) { return {uniform(rng, -1, 1), uniform(rng, -1, 1)}; }
ImaginaryUnit random_unit(std::mt19937_64& rng) { return random_units(rng(), 1).front(); }

std::mt19937_64 rng_for(const VerifyContext& ctx, const std::string& name) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : name) h = (h ^ c) * 1099511628211ull;
  return std::mt19937_64(ctx.seed ^ h);
}

GridSpec grid_of(const VerifyContext& ctx) {
  GridSpec g = ctx.grid;
  g.seed = ctx.seed;
  return g;
}

// Grid restricted to its first `units` units (used by the slower sampled checks).
std::vector<GridPoint> head_units(const std::vector<GridPoint>& grid, std::size_t units) {
  std::vector<GridPoint> out;
  std::vector<ImaginaryUnit> seen;
  for (const auto& p : grid) {
    if (std::find(seen.begin(), seen.end(), p.unit) == seen.end()) {
      if (seen.size() == units) break;
      seen.push_back(p.unit);
    }
    out.push_back(p);
  }
  return out;
}

// Running maximum of one comparison, optionally per grid point.
struct Acc {
  std::string name;
  double tol = 0.0;
  bool required = true;
  double max_abs = 0.0;
  double max_rel = 0.0;
  bool finite = true;
  std::vector<double> per_point;

  void record(double abs, double rel, std::ptrdiff_t idx) {
    if (!std::isfinite(abs) || !std::isfinite(rel)) finite = false;
    max_abs = std::max(max_abs, abs);
    max_rel = std::max(max_rel, rel);
    if (idx >= 0) {
      if (per_point.size() <= std::size_t(idx)) per_point.resize(idx + 1, 0.0);
      per_point[idx] = std::max(per_point[idx], rel);
    }
  }
  void add(const Quaternion& lhs, const Quaternion& rhs, std::ptrdiff_t idx = -1) {
    record(norm(lhs - rhs), mixed_residual(lhs, rhs), idx);
  }
  void add_zero(const Quaternion& v, std::ptrdiff_t idx = -1) { add(v, Quaternion(0.0), idx); }
  Check check() const { return {name, max_abs, max_rel, tol, finite && max_rel <= tol, required}; }
};

// Collects checks; `passed` is the conjunction of the required ones.
class Builder {
 public:
  Builder(std::string identity, std::string backend, std::string variant, double tol) {
    r_.identity_name = std::move(identity);
    r_.backend = std::move(backend);
    r_.variant = std::move(variant);
    r_.tolerance = tol;
  }
  Acc& acc(const std::string& name, double tol, bool required = true) {
    for (auto& a : accs_)
      if (a.name == name) return a;
    Acc& a = accs_.emplace_back();
    a.name = name;
    a.tol = tol;
    a.required = required;
    return a;
  }
  void note(std::string s) { r_.notes.push_back(std::move(s)); }

  // `primary` provides the headline residuals; `points` the grid for per-point rows.
  VerificationReport finish(const std::string& primary, const std::vector<GridPoint>& points = {}) {
    bool ok = !accs_.empty();
    for (const auto& a : accs_) {
      const Check c = a.check();
      r_.checks.push_back(c);
      if (c.required && !c.passed) ok = false;
      if (a.name == primary) {
        r_.max_abs_residual = a.max_abs;
        r_.max_rel_residual = a.max_rel;
        r_.tolerance = a.tol;
        for (std::size_t k = 0; k < points.size(); ++k)
          r_.points.push_back({points[k], k < a.per_point.size() ? a.per_point[k] : 0.0, {}});
      }
    }
    r_.passed = ok;
    return r_;
  }

 private:
  VerificationReport r_;
  std::deque<Acc> accs_;  // stable references
};

std::string variant_check(Variant v) { return "variant:" + variant_name(v); }
constexpr Variant kVariants[] = {Variant::Corrected, Variant::Displayed};

Quaternion embed_on(const ImaginaryUnit& u, const PlaneComplex& z) { return u.realize(z); }

Quaternion qpow(const Quaternion& q, int n) {
  Quaternion r(1.0);
  for (int k = 0; k < n; ++k) r = mul(r, q);
  return r;
}

MonomialSum random_polynomial(std::mt19937_64& rng, int degree, double a) {
  std::vector<Quaternion> c(degree + 1);
  for (auto& q : c) q = random_quaternion(rng);
  return slice_polynomial(c, a);
}

Frame left_frame(const SliceDomain& d) { return {d.a, 1.0, 0.0, 1.0}; }

MonomialSum to_left(const MonomialSum& f, const SliceDomain& d) {
  if (f.frame() == left_frame(d)) return f;
  return reframe(reframe(f, Var::X, d.a, 1.0), Var::Y, 0.0, 1.0);
}

// Exponents with re > 0 (or exactly 0), so Caputo derivatives and anchor values exist.
MonomialSum fractional_sample(const SliceDomain& dom, std::mt19937_64& rng) {
  return MonomialSum(left_frame(dom), {{random_complex(rng), {1.3, 0.2}, 0.8, random_quaternion(rng)},
                                       {random_complex(rng), 0.6, 0.0, random_quaternion(rng)},
                                       {random_complex(rng), 0.0, {1.5, -0.1}, random_quaternion(rng)},
                                       {random_complex(rng), 1.0, 2.0, random_quaternion(rng)},
                                       {random_complex(rng), 0.0, 0.0, random_quaternion(rng)}});
}

struct XY {
  double x, y;
};
std::vector<XY> plane_nodes(const SliceDomain& dom, const GridSpec& g) {
  const double mx = g.margin * (dom.b - dom.a), my = g.margin * dom.c;
  std::vector<XY> out;
  for (double x : chebyshev_nodes(dom.a + mx, dom.b - mx, g.nx))
    for (double y : chebyshev_nodes(my, dom.c - my, g.ny)) out.push_back({x, y});
  return out;
}

std::vector<std::pair<ImaginaryUnit, ImaginaryUnit>> random_pairs(std::mt19937_64& rng, int n) {
  std::vector<std::pair<ImaginaryUnit, ImaginaryUnit>> out;
  for (int k = 0; k < n; ++k) {
    const ImaginaryUnit i = random_unit(rng);
    out.emplace_back(i, random_unit(rng));
  }
  return out;
}

// (1/2)[(1 - w) A + (1 + w) B], w = i' i, with A, B the values on i and -i.
Quaternion rf_combine(const Quaternion& w, const Quaternion& on_i, const Quaternion& on_minus_i) {
  return 0.5 * (on_i - mul(w, on_i) + on_minus_i + mul(w, on_minus_i));
}

// ---------------------------------------------------------------------------

void splitting_into(Builder& b, const MonomialSum& f, const ImaginaryUnit& i, const ImaginaryUnit& j,
                    const SliceDomain& dom, const std::vector<XY>& nodes, double tol, std::ptrdiff_t base = -1) {
  if (std::abs(i.dot(j)) > 1e-12) throw DomainError("splitting needs orthogonal units");
  auto [F, G] = split_sum(f, i, j);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const XY& p = nodes[k];
    const std::ptrdiff_t idx = base < 0 ? -1 : base + std::ptrdiff_t(k);
    b.acc("cr_F", tol).add_zero(cr_bar(F, dom, i, p.x, p.y));
    b.acc("cr_G", tol).add_zero(cr_bar(G, dom, i, p.x, p.y));
    b.acc("recombination", tol)
        .add(F.eval(i, p.x, p.y) + mul(G.eval(i, p.x, p.y), j.embed()), f.eval(i, p.x, p.y), idx);
  }
}

void representation_into(Builder& b, const std::string& check, const SliceFunction& f, double x, double y,
                         const ImaginaryUnit& i, const ImaginaryUnit& iq, double tol, std::ptrdiff_t idx = -1) {
  const Quaternion lhs = evaluate_at(f, iq.realize({x, y}));
  const Quaternion plus = evaluate_at(f, i.realize({x, y}));
  const Quaternion minus = evaluate_at(f, i.realize({x, -y}));
  const Quaternion w = mul(iq.embed(), i.embed());
  const Quaternion rhs = 0.5 * (plus + minus) + 0.5 * mul(w, minus - plus);
  b.acc(check, tol).add(lhs, rhs, idx);
}

}  // namespace

// ---------------------------------------------------------------------------
// registry

double VerifyContext::tolerance(const std::string& identity) const {
  const auto it = tolerances.find(identity);
  return it != tolerances.end() ? it->second : default_tolerance(identity);
}

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = {
      "power_rule",       "fund_theorem",        "rl_caputo_link", "example45_kernel", "splitting",
      "representation",   "frac_splitting",      "frac_representation", "fract131", "corollary_real",
      "series",           "kernel_N",            "caputo_slice",   "caputo_membership", "cauchy"};
  return names;
}

bool is_identity(const std::string& name) {
  const auto& n = identity_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

double default_tolerance(const std::string& id) {
  static const std::map<std::string, double> tol = {
      {"power_rule", 1e-6},   {"fund_theorem", 1e-6},   {"rl_caputo_link", 1e-10}, {"example45_kernel", 1e-12},
      {"splitting", 1e-12},   {"representation", 1e-12}, {"frac_splitting", 1e-10}, {"frac_representation", 1e-10},
      {"fract131", 1e-8},     {"corollary_real", 1e-8}, {"series", 1e-8},          {"kernel_N", 1e-8},
      {"caputo_slice", 1e-10}, {"caputo_membership", 1e-10}, {"cauchy", 1e-6}};
  const auto it = tol.find(id);
  if (it == tol.end()) throw ConfigError("unknown identity '" + id + "'");
  return it->second;
}

OrderPair random_orders(std::mt19937_64& rng) {
  auto one = [&] {
    const double re = uniform(rng, 0.2, 0.8);
    const double im = uniform(rng, 0.1, 0.4) * (uniform(rng) < 0.5 ? -1.0 : 1.0);
    return ComplexOrder(re, im);
  };
  const ComplexOrder a = one();
  return {a, one()};
}

VerificationReport run_identity(const std::string& name, const VerifyContext& ctx) {
  if (!is_identity(name)) throw ConfigError("unknown identity '" + name + "'");
  ctx.domain.validate();
  ctx.quad.validate();
  try {
    if (name == "power_rule") return verify_power_rule(ctx);
    if (name == "fund_theorem") return verify_fund_theorem(ctx);
    if (name == "rl_caputo_link") return verify_rl_caputo_link(ctx);
    if (name == "example45_kernel") return verify_example45_kernel(ctx);
    if (name == "kernel_N") return verify_kernel_N(ctx);
    if (name == "cauchy") return verify_cauchy(ctx);

    auto rng = rng_for(ctx, name);
    const SliceDomain& dom = ctx.domain;
    const Quaternion qk(0.3, 1.0, -2.0, 0.5);

    if (name == "splitting") {
      const double tol = ctx.tolerance(name);
      Builder b(name, "symbolic", "none", tol);
      const auto nodes = plane_nodes(dom, grid_of(ctx));
      const std::vector<MonomialSum> fs = {random_polynomial(rng, 3, 0.0),
                                           slice_polynomial({Quaternion(2.5)}, 0.0),
                                           slice_polynomial({Quaternion(0.0), Quaternion::e2()}, 0.0)};
      const auto grid = make_grid(dom, grid_of(ctx));  // units outermost, same node order
      std::vector<ImaginaryUnit> units;
      for (const auto& p : grid)
        if (std::find(units.begin(), units.end(), p.unit) == units.end()) units.push_back(p.unit);
      for (const auto& f : fs)
        for (std::size_t u = 0; u < units.size(); ++u)
          splitting_into(b, f, units[u], units[u].orthogonal(), dom, nodes, tol, std::ptrdiff_t(u * nodes.size()));
      // structural cases on C(e1) + C(e1) e2
      const ImaginaryUnit e1 = ImaginaryUnit::e1(), e2 = ImaginaryUnit::e2();
      b.acc("real_constant_G_zero", tol).add_zero(Quaternion(split_sum(fs[1], e1, e2).second.max_coefficient()));
      b.acc("q_e2_F_zero", tol).add_zero(Quaternion(split_sum(fs[2], e1, e2).first.max_coefficient()));
      return b.finish("recombination", grid);
    }

    if (name == "representation") {
      const double tol = ctx.tolerance(name);
      Builder b(name, "symbolic", "none", tol);
      std::vector<GridPoint> pts;
      for (int t = 0; t < 20; ++t) {
        const double x = uniform(rng, dom.a, dom.b), y = uniform(rng, 0.0, dom.c);
        const ImaginaryUnit i = random_unit(rng), iq = random_unit(rng);
        pts.push_back({iq, x, y});
        for (int n = 0; n <= 5; ++n) {
          std::vector<Quaternion> c(n + 1, Quaternion(0.0));
          c[n] = Quaternion(1.0);
          const MonomialSum f = slice_polynomial(c, 0.0);
          representation_into(b, "formula", f, x, y, i, iq, tol, t);
          b.acc("power_oracle", tol).add(f.eval(iq, x, y), qpow(iq.realize({x, y}), n));
          representation_into(b, "collapse", f, x, y, i, i, tol);
          representation_into(b, "real_axis", f, x, 0.0, i, iq, tol);
        }
      }
      return b.finish("formula", pts);
    }

    if (name == "frac_splitting") {
      return verify_fractional_splitting({kernel_linear(ctx.orders, dom, qk), uv_projection(random_polynomial(rng, 3, dom.a), dom),
                                          example45(ctx.example45, ctx.orders, dom, Variant::Corrected)},
                                         ctx);
    }
    if (name == "frac_representation") {
      auto pairs = random_pairs(rng, 5);
      return verify_fractional_representation(
          {example45(ctx.example45, ctx.orders, dom, Variant::Corrected),
           example45(ctx.example45, ctx.orders, dom, Variant::Displayed), kernel_linear(ctx.orders, dom, qk),
           uv_projection(random_polynomial(rng, 3, dom.a), dom)},
          ctx, pairs);
    }
    if (name == "fract131") {
      return verify_prop_fract131({kernel_linear(ctx.orders, dom, qk),
                                   example45(ctx.example45, ctx.orders, dom, Variant::Displayed),
                                   example45(ctx.example45, ctx.orders, dom, Variant::Corrected)},
                                  ctx);
    }
    if (name == "corollary_real") {
      const OrderPair real{ComplexOrder(ctx.orders.alpha.re()), ComplexOrder(ctx.orders.beta.re())};
      return verify_corollary_real({kernel_linear(real, dom, qk), example45(ctx.example45, real, dom, Variant::Displayed),
                                    random_polynomial(rng, 3, dom.a)},
                                   ctx);
    }
    if (name == "series") {
      std::vector<SeriesCoefficients> cs = {{{Quaternion(1.0)}}, {{Quaternion(0.0), Quaternion::e2()}}};
      for (int N : {4, 8}) {
        SeriesCoefficients r;
        for (int n = 0; n <= N; ++n) r.a.push_back(random_quaternion(rng));
        cs.push_back(r);
      }
      return verify_series_expansion(cs, ctx);
    }
    if (name == "caputo_slice") {
      return verify_caputo_rl_slice({random_polynomial(rng, 3, dom.a), fractional_sample(dom, rng),
                                     slice_polynomial({Quaternion(1.5, 0.0, -1.0, 0.0)}, dom.a)},
                                    ctx);
    }
    // caputo_membership
    return verify_caputo_membership_equiv(
        {uv_projection(random_polynomial(rng, 3, dom.a), dom),
         anchor_projection(slice_polynomial({Quaternion(0.0), Quaternion(0.0), Quaternion(1.0)}, dom.a)),
         MonomialSum(left_frame(dom))},
        ctx);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    VerificationReport r;
    r.identity_name = name;
    r.variant = variant_name(ctx.variant);
    r.backend = "symbolic";
    r.tolerance = ctx.tolerance(name);
    r.max_abs_residual = r.max_rel_residual = std::nan("");
    r.passed = false;
    r.notes.push_back(std::string("error: ") + e.what());
    return r;
  }
}

std::vector<VerificationReport> run_identities(const std::vector<std::string>& names, const VerifyContext& ctx) {
  for (const auto& n : names)
    if (!is_identity(n)) throw ConfigError("unknown identity '" + n + "'");
  std::vector<VerificationReport> out(names.size());
  parallel_for(names.size(), [&](std::size_t k) { out[k] = run_identity(names[k], ctx); });
  return out;
}

// ---------------------------------------------------------------------------
// classical

std::pair<MonomialSum, MonomialSum> split_sum(const MonomialSum& f, const ImaginaryUnit& i, const ImaginaryUnit& j) {
  MonomialSum F(f.frame()), G(f.frame());
  for (const auto& t : f.terms()) {
    const SplitPair sp = split(t.right_const, i, j);
    F.add({t.scalar * sp.first, t.mu, t.nu, Quaternion(1.0)});
    G.add({t.scalar * sp.second, t.mu, t.nu, Quaternion(1.0)});
  }
  return {F, G};
}

VerificationReport verify_splitting_classical(const MonomialSum& f, const ImaginaryUnit& i, const ImaginaryUnit& j,
                                              const SliceDomain& dom, const GridSpec& grid, double tol) {
  Builder b("splitting", "symbolic", "none", tol);
  splitting_into(b, f, i, j, dom, plane_nodes(dom, grid), tol);
  return b.finish("recombination");
}

VerificationReport verify_representation_classical(const SliceFunction& f, double x, double y,
                                                   const ImaginaryUnit& i, const ImaginaryUnit& iq, double tol) {
  Builder b("representation", std::holds_alternative<MonomialSum>(f) ? "symbolic" : "sampled", "none", tol);
  representation_into(b, "formula", f, x, y, i, iq, tol, 0);
  return b.finish("formula", {{iq, x, y}});
}

Quaternion cauchy_eval(const SliceFunction& f, const ContourSpec& c, const Quaternion& q,
                       const ImaginaryUnit& unit_i) {
  if (!(c.radius > 0.0) || c.nodes < 3) throw DomainError("contour needs radius > 0 and at least 3 nodes");
  const SliceComplex sq = slice_decompose(q);
  const double gap = std::hypot(sq.x - c.center, sq.y) - c.radius;
  if (std::abs(gap) <= 1e-12 * c.radius) throw DomainError("q lies on the sphere swept by the contour");
  const Quaternion q2 = mul(q, q);
  Quaternion sum(0.0);
  for (int k = 0; k < c.nodes; ++k) {
    const double th = 2.0 * std::numbers::pi * k / c.nodes;
    const PlaneComplex rel = c.radius * PlaneComplex(std::cos(th), std::sin(th));
    const PlaneComplex z = c.center + rel;
    const Quaternion zeta = unit_i.realize(z);
    // S^{-1}(zeta, q) = -(q^2 - 2 Re(zeta) q + |zeta|^2)^{-1} (q - conj(zeta))
    const Quaternion den = q2 - 2.0 * z.real() * q + Quaternion(std::norm(z));
    const Quaternion kernel = -1.0 * mul(inverse(den), q - conj(zeta));
    sum += mul(mul(kernel, unit_i.realize(rel)), evaluate_at(f, zeta));
  }
  return (1.0 / c.nodes) * sum;
}

VerificationReport verify_cauchy(const VerifyContext& ctx) {
  const double tol = ctx.tolerance("cauchy");
  Builder b("cauchy", "numeric", "none", tol);
  const ImaginaryUnit units[] = {ImaginaryUnit::e1(), ImaginaryUnit::e2(), ImaginaryUnit::e3()};
  const Quaternion q(0.3, 0.0, 0.2, 0.0);
  auto rng = rng_for(ctx, "cauchy");
  const std::vector<MonomialSum> fs = {slice_polynomial({Quaternion(0.0), Quaternion(0.0), Quaternion(1.0)}, 0.0),
                                       random_polynomial(rng, 4, 0.0)};
  const ContourSpec contour{0.0, 1.0, 512};
  std::vector<GridPoint> pts;
  for (const auto& u : units) pts.push_back({u, q.w, norm(q.vector_part())});
  for (const auto& f : fs) {
    const Quaternion exact = evaluate_at(f, q);
    Quaternion first;
    for (std::size_t k = 0; k < 3; ++k) {
      const Quaternion v = cauchy_eval(f, contour, q, units[k]);
      b.acc("reconstruct", tol).add(v, exact, std::ptrdiff_t(k));
      if (k == 0) first = v;
      else b.acc("unit_independence", tol).add(v, first);
    }
  }
  const MonomialSum one = slice_polynomial({Quaternion(1.0)}, 0.0);
  b.acc("constant", tol).add(cauchy_eval(one, contour, q, units[0]), Quaternion(1.0));

  // Trapezoid error for a point near the contour sphere should keep shrinking.
  const Quaternion qc(0.55, 0.0, 0.78, 0.0);
  const Quaternion exact = evaluate_at(fs[0], qc);
  double prev = INFINITY;
  bool monotone = true;
  char buf[160];
  for (int n : {128, 256, 512}) {
    const double err = norm(cauchy_eval(fs[0], {0.0, 1.0, n}, qc, units[1]) - exact);
    std::snprintf(buf, sizeof buf, "convergence nodes=%d error=%.3e", n, err);
    b.note(buf);
    if (!(err < prev)) monotone = false;
    prev = err;
  }
  b.acc("monotone_convergence", 0.0).record(monotone ? 0.0 : 1.0, monotone ? 0.0 : 1.0, -1);
  return b.finish("reconstruct", pts);
}

// ---------------------------------------------------------------------------
// one-variable checks

VerificationReport verify_power_rule(const VerifyContext& ctx) {
  const double tol = ctx.tolerance("power_rule");
  const SliceDomain& d = ctx.domain;
  Builder b("power_rule", "numeric", "none", tol);
  std::vector<ComplexOrder> alphas = {{0.2, 0.0}, {0.5, 0.3}, {0.8, -0.3}, {0.5, 0.0}, {0.2, -0.3}};
  alphas.push_back(ctx.orders.alpha);
  const PlaneComplex betas[] = {0.0, 1.0, {1.5, 0.1}};
  const double lo = d.a + 0.05 * (d.b - d.a);
  std::vector<GridPoint> pts;
  for (int k = 0; k < 10; ++k) pts.push_back({ImaginaryUnit::e1(), lo + (d.b - lo) * (k + 0.5) / 10.0, 0.0});

  for (const auto& al : alphas)
    for (const PlaneComplex be : betas) {
      const Integrand1D f{[&](double t) { return t > d.a ? cpow(t - d.a, be) : PlaneComplex(be == 0.0 ? 1.0 : 0.0); },
                          d.a, d.b};
      const MonomialSum s(left_frame(d), {{1.0, be, 0.0, Quaternion(1.0)}});
      const MonomialSum ds = sym_rl_derivative_x(s, al);
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const double x = pts[k].x;
        const PlaneComplex exact = gamma(be + 1.0) * rgamma(be + 1.0 - al.value()) * cpow(x - d.a, be - al.value());
        const PlaneComplex num = rl_derivative_left(f, d.a, al, x, ctx.quad);
        const double rel = std::abs(num - exact) / std::abs(exact);
        b.acc("numeric_relative", tol).record(std::abs(num - exact), rel, std::ptrdiff_t(k));
        b.acc("symbolic", 1e-12).add(ds.eval(ImaginaryUnit::e1(), x, 0.0), embed_on(ImaginaryUnit::e1(), exact));
      }
    }
  return b.finish("numeric_relative", pts);
}

VerificationReport verify_fund_theorem(const VerifyContext& ctx) {
  const double tol = ctx.tolerance("fund_theorem");
  const SliceDomain& d = ctx.domain;
  const double a = d.a;
  Builder b("fund_theorem", "numeric", "none", tol);
  using Fn = std::function<PlaneComplex(double)>;
  const std::vector<Fn> fns = {
      [](double t) { return PlaneComplex(std::exp(t)); },
      [](double t) { return PlaneComplex(std::sin(3.0 * t), std::cos(t)); },
      [a](double t) { return PlaneComplex(1.0 + (t - a) * (t - a)); },
      [a](double t) { return PlaneComplex(1.0 / (2.0 + t - a), 0.5); },
      [a](double t) { return PlaneComplex((t - a) * std::exp(a - t), 1.0); }};
  const ComplexOrder orders[] = {ctx.orders.alpha, {0.3, 0.2}};
  std::vector<GridPoint> pts;
  for (int k = 0; k < 4; ++k) pts.push_back({ImaginaryUnit::e1(), a + (d.b - a) * (0.2 + 0.25 * k), 0.0});
  for (const auto& fn : fns)
    for (const auto& al : orders) {
      const Integrand1D f{fn, a, d.b};
      const Integrand1D g{[&](double t) { return t > a ? rl_integral_left(f, a, al.value(), t, ctx.quad) : PlaneComplex(0.0); },
                          a, d.b};
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const double x = pts[k].x;
        const PlaneComplex v = rl_derivative_left(g, a, al, x, ctx.quad);
        b.acc("numeric", tol).add(embed_on(ImaginaryUnit::e1(), v), embed_on(ImaginaryUnit::e1(), fn(x)),
                                  std::ptrdiff_t(k));
      }
    }

  auto rng = rng_for(ctx, "fund_theorem");
  for (int t = 0; t < 10; ++t) {
    MonomialSum s(left_frame(d));
    const int terms = 2 + int(rng() % 4);
    for (int k = 0; k < terms; ++k)
      s.add({random_complex(rng), {uniform(rng, 0.0, 2.0), uniform(rng, -0.5, 0.5)}, double(rng() % 3),
             random_quaternion(rng)});
    const PlaneComplex al = random_orders(rng).alpha.value();
    const MonomialSum back = sym_rl_derivative_x(sym_rl_integral_x(s, al), al);
    const double err = (back - s).collected().max_coefficient() / std::max(1.0, s.max_coefficient());
    b.acc("symbolic_coefficients", 1e-13).record(err, err, -1);
  }
  return b.finish("numeric", pts);
}

VerificationReport verify_rl_caputo_link(const VerifyContext& ctx) {
  const double tol = ctx.tolerance("rl_caputo_link");
  const SliceDomain& d = ctx.domain;
  Builder b("rl_caputo_link", "symbolic", "none", tol);
  auto rng = rng_for(ctx, "rl_caputo_link");
  const ImaginaryUnit e1 = ImaginaryUnit::e1();
  auto plane = [](const Quaternion& q) { return PlaneComplex(q.w, q.x1); };
  std::vector<GridPoint> pts;
  for (int t = 0; t < 20; ++t) {
    MonomialSum s(left_frame(d));
    s.add({random_complex(rng), 0.0, 0.0, Quaternion(1.0)});
    s.add({random_complex(rng), 1.0 + double(rng() % 2), 0.0, Quaternion(1.0)});
    s.add({random_complex(rng), {uniform(rng, 0.3, 2.5), uniform(rng, -0.3, 0.3)}, 0.0, Quaternion(1.0)});
    const ComplexOrder al = t == 0 ? ctx.orders.alpha : random_orders(rng).alpha;
    const double x = uniform(rng, d.a + 0.05 * (d.b - d.a), d.b);
    pts.push_back({e1, x, 0.0});

    const PlaneComplex fa = plane(s.eval(e1, d.a, 0.0));
    const PlaneComplex corr = fa * cpow(x - d.a, -al.value()) * rgamma(1.0 - al.value());
    const PlaneComplex cap = plane(sym_caputo_x(s, al).eval(e1, x, 0.0));
    const PlaneComplex rl = plane(sym_rl_derivative_x(s, al).eval(e1, x, 0.0));
    b.acc("symbolic", tol).add(e1.realize(cap), e1.realize(rl - corr), t);

    const MonomialSum ds = sym_partial(s, Var::X);
    const Integrand1D f{[&](double u) { return plane(s.eval(e1, u, 0.0)); }, d.a, d.b};
    const Integrand1D df{[&](double u) { return plane(ds.eval(e1, u, 0.0)); }, d.a, d.b};
    const PlaneComplex ncap = caputo_left(f, df, d.a, al, x, ctx.quad);
    const PlaneComplex nrl = rl_derivative_left(f, d.a, al, x, ctx.quad);
    b.acc("sampled", 1e-5).add(e1.realize(ncap), e1.realize(nrl - corr));
    b.acc(kSampledName, 1e-5).add(e1.realize(ncap), e1.realize(cap));
  }
  return b.finish("symbolic", pts);
}

// ---------------------------------------------------------------------------
// product-of-braces example

VerificationReport verify_example45_kernel(const VerifyContext& ctx) {
  const double tol = ctx.tolerance("example45_kernel");
  const SliceDomain& dom = ctx.domain;
  Builder b("example45_kernel", "symbolic", variant_name(ctx.variant), tol);
  auto rng = rng_for(ctx, "example45_kernel");
  const SliceOperator op{};

  std::vector<std::pair<Example45Params, OrderPair>> sets = {{ctx.example45, ctx.orders}};
  for (int k = 0; k < 5; ++k) {
    Example45Params p;
    p.q1 = random_quaternion(rng);
    p.q2 = random_quaternion(rng);
    p.delta = {uniform(rng, 0.2, 0.8), uniform(rng, -0.3, 0.3)};
    p.gamma_p = {uniform(rng, 0.2, 0.8), uniform(rng, -0.3, 0.3)};
    sets.emplace_back(p, random_orders(rng));
  }
  for (const Variant v : kVariants) {
    for (const auto& [p, o] : sets) {
      const MonomialSum D = sym_slice_operator(op, example45(p, o, dom, v), dom, o);
      const double pre = D.max_coefficient();
      const double post = D.collected().max_coefficient();
      const double rel = pre > 0.0 ? post / pre : 0.0;
      b.acc(variant_check(v), tol, v == ctx.variant).record(post, rel, -1);
    }
  }

  // values on the default grid for the selected construction, symbolic and sampled
  const auto grid = make_grid(dom, grid_of(ctx));
  const MonomialSum f = example45(ctx.example45, ctx.orders, dom, ctx.variant);
  const MonomialSum D = sym_slice_operator(op, f, dom, ctx.orders).collected();
  const SliceFunction sf = sampled_view(f);
  const SliceFunction kl = sampled_view(kernel_linear(ctx.orders, dom, Quaternion(0.3, 1.0, -2.0, 0.5)));
  std::vector<Quaternion> sym(grid.size()), smp(grid.size()), klv(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    const auto& g = grid[k];
    sym[k] = D.eval(g.unit, g.x, g.y);
    smp[k] = apply_operator(op, sf, dom, ctx.orders, g.unit, g.x, g.y, ctx.quad);
    klv[k] = apply_operator(op, kl, dom, ctx.orders, g.unit, g.x, g.y, ctx.quad);
  });
  for (std::size_t k = 0; k < grid.size(); ++k) {
    b.acc("grid_values", INFINITY, false).add_zero(sym[k], std::ptrdiff_t(k));
    b.acc(kSampledName, 1e-5).add(smp[k], sym[k]);
    b.acc("sampled_kernel_linear", 1e-5).add_zero(klv[k]);
  }
  b.note("grid_values: |D f| on the grid for the selected construction (per-point rows)");
  VerificationReport r = b.finish(variant_check(ctx.variant));
  for (std::size_t k = 0; k < grid.size(); ++k) r.points.push_back({grid[k], norm(sym[k]), {}});
  return r;
}

// ---------------------------------------------------------------------------
// fractional splitting / representation

VerificationReport verify_fractional_splitting(const std::vector<MonomialSum>& fs, const VerifyContext& ctx) {
  const double tol = ctx.tolerance("frac_splitting");
  const SliceDomain& dom = ctx.domain;
  Builder b("frac_splitting", "symbolic", variant_name(ctx.variant), tol);
  const auto grid = make_grid(dom, grid_of(ctx));
  const auto sampled_grid = head_units(grid, 2);

  for (std::size_t fi = 0; fi < fs.size(); ++fi) {
    const auto& f = fs[fi];
    ImaginaryUnit last;
    MonomialSum F, G, mapF[2], mapG[2];
    SliceFunction smapF;
    bool first = true;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const GridPoint& p = grid[k];
      if (first || !(p.unit == last)) {
        std::tie(F, G) = split_sum(f, p.unit, p.unit.orthogonal());
        for (int v = 0; v < 2; ++v) {
          mapF[v] = sym_assoc_integral_map(F, dom, ctx.orders, kVariants[v]);
          mapG[v] = sym_assoc_integral_map(G, dom, ctx.orders, kVariants[v]);
        }
        smapF = assoc_integral_map(sampled_view(F), dom, ctx.orders, ctx.variant, ctx.quad);
        last = p.unit;
        first = false;
      }
      for (int v = 0; v < 2; ++v) {
        Acc& a = b.acc(variant_check(kVariants[v]), tol, kVariants[v] == ctx.variant);
        a.add_zero(cr_bar(mapF[v], dom, p.unit, p.x, p.y), std::ptrdiff_t(k));
        a.add_zero(cr_bar(mapG[v], dom, p.unit, p.x, p.y), std::ptrdiff_t(k));
      }
      b.acc("recombination", 1e-12)
          .add(F.eval(p.unit, p.x, p.y) + mul(G.eval(p.unit, p.x, p.y), p.unit.orthogonal().embed()),
               f.eval(p.unit, p.x, p.y));
      if (fi == 0 && k < sampled_grid.size()) {
        const int v = ctx.variant == Variant::Corrected ? 0 : 1;
        b.acc(kSampledName, 1e-5).add(cr_bar(smapF, dom, p.unit, p.x, p.y, ctx.quad),
                                      cr_bar(mapF[v], dom, p.unit, p.x, p.y));
      }
    }
  }
  return b.finish(variant_check(ctx.variant), grid);
}

VerificationReport verify_fractional_representation(const std::vector<MonomialSum>& fs, const VerifyContext& ctx,
                                                    const std::vector<std::pair<ImaginaryUnit, ImaginaryUnit>>& pairs) {
  const double tol = ctx.tolerance("frac_representation");
  const SliceDomain& dom = ctx.domain;
  Builder b("frac_representation", "symbolic", variant_name(ctx.variant), tol);
  const auto nodes = plane_nodes(dom, grid_of(ctx));
  const PlaneComplex sx = 1.0 - ctx.orders.alpha.value(), sy = 1.0 - ctx.orders.beta.value();
  std::vector<GridPoint> pts;
  for (const auto& pr : pairs)
    for (const auto& n : nodes) pts.push_back({pr.second, n.x, n.y});

  for (const auto& f0 : fs) {
    const MonomialSum f = to_left(f0, dom);
    const MonomialSum phi = sym_assoc_integral_map(f, dom, ctx.orders);
    const MonomialSum phi_x = sym_rl_integral_x(substitute_y(f, dom.v), sx);
    const MonomialSum on_y = substitute_x(f, dom.u);
    std::size_t idx = 0;
    for (const auto& [i, ip] : pairs) {
      const Quaternion w = mul(ip.embed(), i.embed());
      const ImaginaryUnit mi = -i;
      const MonomialSum iy_disp = sym_rl_integral_y(transfer(on_y, ip, i), sy);
      const MonomialSum psi_i = sym_assoc_integral_map(left_multiply(w, f, i), dom, ctx.orders);
      const MonomialSum psi_mi = sym_assoc_integral_map(left_multiply(w, f, mi), dom, ctx.orders);
      for (const auto& n : nodes) {
        const Quaternion pi = phi.eval(i, n.x, n.y), pmi = phi.eval(mi, n.x, n.y);
        // corrected: w outside the integrals, i' order on the left side
        const Quaternion lhs = phi.eval(ip, n.x, n.y);
        const Quaternion rhs = 0.5 * (pi + pmi) + 0.5 * mul(w, pmi - pi);
        b.acc(variant_check(Variant::Corrected), tol, ctx.variant == Variant::Corrected)
            .add(lhs, rhs, std::ptrdiff_t(idx));
        // displayed: w inside the integrals, i order for beta on the left side
        const Quaternion lhs_d = phi_x.eval(ip, n.x, n.y) + iy_disp.eval(i, n.x, n.y);
        const Quaternion rhs_d =
            0.5 * (pi + pmi) + 0.5 * (psi_mi.eval(mi, n.x, n.y) - psi_i.eval(i, n.x, n.y));
        b.acc(variant_check(Variant::Displayed), tol, ctx.variant == Variant::Displayed)
            .add(lhs_d, rhs_d, std::ptrdiff_t(idx));
        // i' = i collapses to the map itself
        b.acc("collapse", 1e-14).add(0.5 * (pi + pmi) + 0.5 * mul(mul(i.embed(), i.embed()), pmi - pi), pi);
        ++idx;
      }
    }
  }
  return b.finish(variant_check(ctx.variant), pts);
}

// ---------------------------------------------------------------------------
// Gamma-weighted point identities

VerificationReport verify_prop_fract131(const std::vector<MonomialSum>& fs, const VerifyContext& ctx) {
  const double tol = ctx.tolerance("fract131");
  const SliceDomain& dom = ctx.domain;
  Builder b("fract131", "symbolic", variant_name(ctx.variant), tol);
  auto rng = rng_for(ctx, "fract131:pairs");
  const auto pairs = random_pairs(rng, 5);
  const auto nodes = plane_nodes(dom, grid_of(ctx));
  const PlaneComplex al = ctx.orders.alpha.value(), be = ctx.orders.beta.value();
  std::vector<GridPoint> pts;
  for (const auto& pr : pairs)
    for (const auto& n : nodes) pts.push_back({pr.second, n.x, n.y});

  for (const auto& f0 : fs) {
    const MonomialSum f = to_left(f0, dom);
    const MonomialSum phi = sym_assoc_integral_map(f, dom, ctx.orders);
    const MonomialSum phi_m = mirror(phi);
    std::size_t idx = 0;
    for (const auto& [i, ip] : pairs) {
      const Quaternion w = mul(ip.embed(), i.embed());
      // representation-formula combination built on C(i), then moved to C(i')
      const MonomialSum comb = PlaneComplex(0.5) * (phi + phi_m) + PlaneComplex(0.5) * left_multiply(w, phi_m - phi, i);
      const MonomialSum moved = transfer(comb, i, ip);
      const MonomialSum rhs_sum = sym_rl_derivative_y(sym_rl_derivative_x(moved, 1.0 - al), 1.0 - be);
      const Quaternion cy_disp = i.realize(cpow(dom.v, -be) * rgamma(1.0 - be));
      const Quaternion cx_disp = i.realize(cpow(dom.u - dom.a, -al) * rgamma(1.0 - al));
      for (const auto& n : nodes) {
        const Quaternion fxv = f.eval(ip, n.x, dom.v), fuy = f.eval(ip, dom.u, n.y);
        const Quaternion lhs = mul(ip.realize(cpow(n.y, be - 1.0) * rgamma(be)), fxv) +
                               mul(ip.realize(cpow(n.x - dom.a, al - 1.0) * rgamma(al)), fuy);
        b.acc(variant_check(Variant::Corrected), tol, ctx.variant == Variant::Corrected)
            .add(lhs, rhs_sum.eval(ip, n.x, n.y), std::ptrdiff_t(idx));
        b.acc(variant_check(Variant::Displayed), tol, ctx.variant == Variant::Displayed)
            .add(lhs, mul(cy_disp, fxv) + mul(cx_disp, fuy), std::ptrdiff_t(idx));
        ++idx;
      }
    }
  }
  return b.finish(variant_check(ctx.variant), pts);
}

VerificationReport verify_corollary_real(const std::vector<MonomialSum>& fs, const VerifyContext& ctx) {
  const double tol = ctx.tolerance("corollary_real");
  const SliceDomain& dom = ctx.domain;
  Builder b("corollary_real", "symbolic", variant_name(ctx.variant), tol);
  auto rng = rng_for(ctx, "corollary_real:pairs");
  const auto pairs = random_pairs(rng, 5);
  const auto nodes = plane_nodes(dom, grid_of(ctx));
  const double a0 = ctx.orders.alpha.re(), b0 = ctx.orders.beta.re();
  const double cy_disp = std::pow(dom.v, -b0) * rgamma(1.0 - b0).real();
  const double cx_disp = std::pow(dom.u - dom.a, -a0) * rgamma(1.0 - a0).real();
  std::vector<GridPoint> pts;
  for (const auto& pr : pairs)
    for (const auto& n : nodes) pts.push_back({pr.second, n.x, n.y});

  for (const auto& f : fs) {
    std::size_t idx = 0;
    for (const auto& [i, ip] : pairs) {
      const Quaternion w = mul(ip.embed(), i.embed());
      for (const auto& n : nodes) {
        const double cy = std::pow(n.y, b0 - 1.0) * rgamma(b0).real();
        const double cx = std::pow(n.x - dom.a, a0 - 1.0) * rgamma(a0).real();
        const Quaternion lhs = cy * f.eval(ip, n.x, dom.v) + cx * f.eval(ip, dom.u, n.y);
        const Quaternion rf_xv = rf_combine(w, f.eval(i, n.x, dom.v), f.eval(-i, n.x, dom.v));
        const Quaternion rf_uy = rf_combine(w, f.eval(i, dom.u, n.y), f.eval(-i, dom.u, n.y));
        b.acc(variant_check(Variant::Corrected), tol, ctx.variant == Variant::Corrected)
            .add(lhs, cy * rf_xv + cx * rf_uy, std::ptrdiff_t(idx));
        b.acc(variant_check(Variant::Displayed), tol, ctx.variant == Variant::Displayed)
            .add(lhs, cy_disp * rf_xv + cx_disp * rf_uy, std::ptrdiff_t(idx));
        ++idx;
      }
    }
  }
  return b.finish(variant_check(ctx.variant), pts);
}

// ---------------------------------------------------------------------------
// series and kernel

PlaneComplex lambda_coeff(int k, int n, const OrderPair& orders) {
  if (k < 0 || n < k) throw DomainError("lambda_coeff needs 0 <= k <= n");
  const PlaneComplex za = double(n - k) + orders.alpha.value(), zb = double(k) + orders.beta.value();
  if (is_gamma_pole(za) || is_gamma_pole(zb)) return 0.0;
  return std::exp(lgamma(double(n) + 1.0) - lgamma(za) - lgamma(zb));
}

VerificationReport verify_series_expansion(const std::vector<SeriesCoefficients>& cs, const VerifyContext& ctx) {
  const double tol = ctx.tolerance("series");
  const SliceDomain& dom = ctx.domain;
  Builder b("series", "symbolic", variant_name(ctx.variant), tol);
  const PlaneComplex al = ctx.orders.alpha.value(), be = ctx.orders.beta.value();
  const auto grid = make_grid(dom, grid_of(ctx));

  int nmax = 0;
  for (const auto& c : cs) nmax = std::max(nmax, int(c.a.size()) - 1);
  for (int n = 0; n <= nmax; ++n)
    for (int k = 0; k <= n; ++k) {
      const PlaneComplex direct = gamma(double(n) + 1.0) / (gamma(double(n - k) + al) * gamma(double(k) + be));
      const PlaneComplex lam = lambda_coeff(k, n, ctx.orders);
      const double rel = std::abs(lam - direct) / std::abs(direct);
      b.acc("lambda_direct", 1e-12).record(std::abs(lam - direct), rel, -1);
    }

  for (const auto& c : cs) {
    const MonomialSum P = slice_polynomial(c.a, dom.a);
    const MonomialSum L = sym_rl_derivative_y(sym_rl_derivative_x(P, 1.0 - al), 1.0 - be);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const GridPoint& p = grid[idx];
      const double dx = p.x - dom.a;
      Quaternion rc(0.0), rd(0.0);
      for (int n = 0; n < int(c.a.size()); ++n) {
        PlaneComplex ik = 1.0;
        for (int k = 0; k <= n; ++k) {
          const PlaneComplex lam = lambda_coeff(k, n, ctx.orders);
          const PlaneComplex zc = lam * cpow(dx, double(n - k - 1) + al) * cpow(p.y, double(k - 1) + be) * ik;
          const PlaneComplex zd = lam * std::pow(dx, double(n - k)) * std::pow(p.y, double(k - 1)) * ik;
          rc += mul(p.unit.realize(zc), c.a[n]);
          rd += mul(p.unit.realize(zd), c.a[n]);
          ik *= kI;
        }
      }
      const Quaternion lhs = L.eval(p.unit, p.x, p.y);
      b.acc(variant_check(Variant::Corrected), tol, ctx.variant == Variant::Corrected).add(lhs, rc, std::ptrdiff_t(idx));
      b.acc(variant_check(Variant::Displayed), tol, ctx.variant == Variant::Displayed).add(lhs, rd, std::ptrdiff_t(idx));
    }
  }
  return b.finish(variant_check(ctx.variant), grid);
}

namespace {

struct OnSlice {
  ImaginaryUnit unit;
  double x, y;       // q = x + unit y, y > 0
  PlaneComplex zeta;  // zeta in the plane model of C(unit)
};

OnSlice common_slice(const Quaternion& zeta, const Quaternion& q, double a) {
  const SliceComplex sq = slice_decompose(q);
  if (!(sq.y > 0.0) || !(sq.x > a)) throw DomainError("kernel needs q = x + i y with x > a and y > 0");
  const Quaternion zv = zeta.vector_part();
  const Quaternion u = sq.unit.embed();
  const double along = zv.x1 * u.x1 + zv.x2 * u.x2 + zv.x3 * u.x3;
  if (norm(zv - along * u) > 1e-12 * std::max(1.0, norm(zeta))) throw DomainError("zeta must lie on the slice of q");
  return {sq.unit, sq.x, sq.y, {zeta.w, along}};
}

}  // namespace

KernelNResult kernel_N(const Quaternion& zeta, const Quaternion& q, double a, const OrderPair& orders, int truncation,
                       double tail_tol) {
  if (truncation < 0) throw DomainError("truncation must be >= 0");
  const OnSlice s = common_slice(zeta, q, a);
  const PlaneComplex al = orders.alpha.value(), be = orders.beta.value();
  const Quaternion zr = s.unit.realize(s.zeta - a);
  if (norm(zr) == 0.0) throw PoleError("zeta equals the anchor");
  const Quaternion zinv = inverse(zr);

  KernelNResult out;
  out.value = Quaternion(0.0);
  Quaternion zpow = zinv;  // (zeta - a)^{-(n+1)}
  double last = 0.0;
  for (int n = 0; n <= truncation; ++n) {
    std::vector<Quaternion> c(n + 1, Quaternion(0.0));
    c[n] = Quaternion(1.0);
    const MonomialSum dd = sym_rl_derivative_y(sym_rl_derivative_x(slice_polynomial(c, a), 1.0 - al), 1.0 - be);
    const Quaternion term = mul(dd.eval(s.unit, s.x, s.y), zpow);
    out.value += term;
    last = norm(term);
    zpow = mul(zpow, zinv);
  }
  out.ratio = std::abs(PlaneComplex(s.x - a, s.y)) / std::abs(s.zeta - a);
  out.tail_estimate = out.ratio < 1.0 ? last * out.ratio / (1.0 - out.ratio) : INFINITY;
  if (out.ratio >= 1.0) {
    out.warning = true;
    out.message = "ConvergenceWarning: |q - a| >= |zeta - a|, the kernel series diverges";
  } else if (out.tail_estimate > tail_tol) {
    out.warning = true;
    char buf[128];
    std::snprintf(buf, sizeof buf, "ConvergenceWarning: tail estimate %.3e exceeds %.3e", out.tail_estimate, tail_tol);
    out.message = buf;
  }
  return out;
}

Quaternion kernel_N_closed(const Quaternion& zeta, const Quaternion& q, double a, const OrderPair& orders,
                           int truncation, Variant variant) {
  const OnSlice s = common_slice(zeta, q, a);
  const PlaneComplex al = orders.alpha.value(), be = orders.beta.value();
  const double dx = s.x - a;
  const PlaneComplex zinv = 1.0 / (s.zeta - a);
  PlaneComplex sum = 0.0, zpow = zinv;
  for (int n = 0; n <= truncation; ++n) {
    PlaneComplex inner = 0.0;
    for (int k = 0; k <= n; ++k) {
      // lambda_{n-k,n}: power k of (x - a), n - k of y
      PlaneComplex lam = lambda_coeff(n - k, n, orders);
      if (variant == Variant::Displayed)
        lam *= gamma(double(k) + al) * rgamma(double(k) + al.real());
      inner += lam * std::pow(dx, double(k)) * std::pow(s.y, double(n - k)) * std::pow(kI, n - k);
    }
    sum += inner * zpow;
    zpow *= zinv;
  }
  sum *= cpow(dx, al - 1.0) * cpow(s.y, be - 1.0);
  return s.unit.realize(sum);
}

VerificationReport verify_kernel_N(const VerifyContext& ctx) {
  const double tol = ctx.tolerance("kernel_N");
  const double a = ctx.domain.a, span = ctx.domain.b - ctx.domain.a;
  Builder b("kernel_N", "symbolic", variant_name(ctx.variant), tol);
  auto rng = rng_for(ctx, "kernel_N");
  std::vector<OrderPair> orders = {ctx.orders};
  for (int k = 0; k < 5; ++k) orders.push_back(random_orders(rng));
  std::vector<GridPoint> pts;
  for (std::size_t t = 0; t < orders.size(); ++t) {
    const OrderPair& o = orders[t];
    const ImaginaryUnit u = random_unit(rng);
    const double r0 = 0.3 * span, phi = uniform(rng, 0.2, 1.3), th = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const Quaternion q = u.realize({a + r0 * std::cos(phi), r0 * std::sin(phi)});
    const Quaternion zeta = u.realize({a + 2.0 * r0 * std::cos(th), 2.0 * r0 * std::sin(th)});
    pts.push_back({u, a + r0 * std::cos(phi), r0 * std::sin(phi)});

    const KernelNResult series = kernel_N(zeta, q, a, o, 30);
    for (const Variant v : kVariants)
      b.acc(variant_check(v), tol, v == ctx.variant)
          .add(series.value, kernel_N_closed(zeta, q, a, o, 30, v), std::ptrdiff_t(t));

    // n = 0 term against its closed form
    const PlaneComplex n0 = cpow(r0 * std::cos(phi), o.alpha.value() - 1.0) * cpow(r0 * std::sin(phi), o.beta.value() - 1.0) *
                            rgamma(o.alpha.value()) * rgamma(o.beta.value()) /
                            (2.0 * r0 * PlaneComplex(std::cos(th), std::sin(th)));
    b.acc("first_term", 1e-12).add(kernel_N(zeta, q, a, o, 0).value, u.realize(n0));

    // doubling the truncation moves the sum by about the predicted tail
    const double change = norm(kernel_N(zeta, q, a, o, 60).value - series.value);
    const double bound = std::max(1e3 * series.tail_estimate, 1e-14 * std::max(1.0, norm(series.value)));
    b.acc("geometric_tail", 1.0, false).record(change, change / bound, -1);
  }
  b.note("geometric_tail: change from truncation 30 to 60 divided by 1e3 x the tail estimate");
  return b.finish(variant_check(ctx.variant), pts);
}

// ---------------------------------------------------------------------------
// Caputo

VerificationReport verify_caputo_rl_slice(const std::vector<MonomialSum>& fs, const VerifyContext& ctx) {
  const double tol = ctx.tolerance("caputo_slice");
  const SliceDomain& dom = ctx.domain;
  Builder b("caputo_slice", "symbolic", variant_name(ctx.variant), tol);
  const auto grid = make_grid(dom, grid_of(ctx));
  const std::size_t n_sampled = head_units(grid, 1).size();
  const PlaneComplex al = ctx.orders.alpha.value(), be = ctx.orders.beta.value();
  const SliceOperator rl{OpKind::RiemannLiouville, Side::Left, UnitSide::Left};
  const SliceOperator cap{OpKind::Caputo, Side::Left, UnitSide::Left};

  for (std::size_t fi = 0; fi < fs.size(); ++fi) {
    const MonomialSum& f = fs[fi];
    const MonomialSum C = sym_slice_operator(cap, f, dom, ctx.orders);
    const MonomialSum R = sym_slice_operator(rl, f, dom, ctx.orders);
    const SliceFunction sf = sampled_view(f);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const GridPoint& p = grid[k];
      const ImaginaryUnit& i = p.unit;
      const Quaternion c = C.eval(i, p.x, p.y), r = R.eval(i, p.x, p.y);
      const Quaternion fa = f.eval(i, dom.a, dom.v), fu = f.eval(i, dom.u, 0.0);
      const double dx = p.x - dom.a;
      const Quaternion rc = r - mul(i.realize(cpow(dx, -al) * rgamma(1.0 - al)), fa) -
                            mul(i.embed(), mul(i.realize(cpow(p.y, -be) * rgamma(1.0 - be)), fu));
      const Quaternion rd = r - mul(i.realize(cpow(dx, al) * rgamma(1.0 - al)), fa) -
                            mul(i.embed(), mul(i.realize(cpow(p.y, be) * rgamma(1.0 - be)), fu));
      b.acc(variant_check(Variant::Corrected), tol, ctx.variant == Variant::Corrected).add(c, rc, std::ptrdiff_t(k));
      b.acc(variant_check(Variant::Displayed), tol, ctx.variant == Variant::Displayed).add(c, rd, std::ptrdiff_t(k));
      if (k < n_sampled) {
        Acc& s = b.acc(kSampledName, 1e-5);
        s.add(apply_operator(cap, sf, dom, ctx.orders, i, p.x, p.y, ctx.quad), c);
        s.add(apply_operator(rl, sf, dom, ctx.orders, i, p.x, p.y, ctx.quad), r);
      }
    }
  }
  return b.finish(variant_check(ctx.variant), grid);
}

VerificationReport verify_caputo_membership_equiv(const std::vector<MonomialSum>& fs, const VerifyContext& ctx) {
  const double tol = ctx.tolerance("caputo_membership");
  const SliceDomain& dom = ctx.domain;
  Builder b("caputo_membership", "symbolic", "none", tol);
  const auto grid = make_grid(dom, grid_of(ctx));
  const SliceOperator rl{OpKind::RiemannLiouville, Side::Left, UnitSide::Left};
  const SliceOperator cap{OpKind::Caputo, Side::Left, UnitSide::Left};
  std::vector<double> worst(grid.size(), 0.0);

  for (std::size_t fi = 0; fi < fs.size(); ++fi) {
    const MonomialSum& f = fs[fi];
    const MonomialSum C = sym_slice_operator(cap, f, dom, ctx.orders);
    const MonomialSum R = sym_slice_operator(rl, f, dom, ctx.orders);
    double pre = 0.0, rmax = 0.0, cmax = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const GridPoint& p = grid[k];
      pre = std::max({pre, norm(f.eval(p.unit, dom.a, dom.v)), norm(f.eval(p.unit, dom.u, 0.0))});
      const double rv = norm(R.eval(p.unit, p.x, p.y)), cv = norm(C.eval(p.unit, p.x, p.y));
      rmax = std::max(rmax, rv);
      cmax = std::max(cmax, cv);
      worst[k] = std::max(worst[k], std::abs(rv - cv));
    }
    const bool pre_ok = pre <= tol, rl_in = rmax <= tol, cap_in = cmax <= tol;
    b.acc("precondition", tol).record(pre, pre, -1);
    const double mismatch = pre_ok && rl_in == cap_in ? 0.0 : 1.0;
    b.acc("equivalence", 0.0).record(mismatch, mismatch, -1);
    char buf[200];
    std::snprintf(buf, sizeof buf, "f#%zu: anchors %.2e, RL %s (%.2e), Caputo %s (%.2e)%s", fi, pre,
                  rl_in ? "in kernel" : "not in kernel", rmax, cap_in ? "in kernel" : "not in kernel", cmax,
                  pre_ok ? "" : " [precondition violated]");
    b.note(buf);
  }
  VerificationReport r = b.finish("equivalence");
  r.tolerance = tol;
  for (std::size_t k = 0; k < grid.size(); ++k) r.points.push_back({grid[k], worst[k], {}});
  return r;
}

}  // namespace fracslice
