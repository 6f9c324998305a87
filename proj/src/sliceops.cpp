#include "fracslice/sliceops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fracslice/errors.hpp"
#include "fracslice/parallel.hpp"
#include "fracslice/simd.hpp"
#include "fracslice/specfun.hpp"

namespace fracslice {

namespace {

constexpr PlaneComplex kI{0.0, 1.0};

bool same(double p, double q) { return std::abs(p - q) <= 1e-14 * std::max(1.0, std::abs(p)); }

// s expressed in the requested frame; polynomial sums are re-expanded if needed
MonomialSum in_frame(const MonomialSum& s, double xa, double xd, double ya, double yd) {
  const Frame& f = s.frame();
  MonomialSum t = s;
  if (!(same(f.x_anchor, xa) && f.x_dir == xd)) t = reframe(t, Var::X, xa, xd);
  if (!(same(f.y_anchor, ya) && f.y_dir == yd)) t = reframe(t, Var::Y, ya, yd);
  return t;
}

MonomialSum left_frame(const MonomialSum& s, const SliceDomain& dom) { return in_frame(s, dom.a, 1.0, 0.0, 1.0); }

Quaternion unit_times(const ImaginaryUnit& unit, const Quaternion& q, UnitSide side) {
  return side == UnitSide::Left ? mul(unit.embed(), q) : mul(q, unit.embed());
}

// 1/Gamma(sigma) int |p - t|^(sigma-1) g(t) dt along one coordinate, kernel on
// the left, computed on the complex components of g = F + G j.
Quaternion slice_integral(const std::function<Quaternion(double)>& g, const ImaginaryUnit& unit, Side side,
                          double anchor, const PlaneComplex& sigma, double p, const QuadratureConfig& cfg) {
  const QuadratureRule rule = rl_rule(side, anchor, sigma, p, cfg);
  const ImaginaryUnit j = unit.orthogonal();
  std::vector<PlaneComplex> fv(rule.nodes.size()), gv(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Quaternion q = g(rule.nodes[k]);
    if (!std::isfinite(norm2(q))) throw QuadratureError("non-finite integrand value");
    const SplitPair sp = split(q, unit, j);
    fv[k] = sp.first;
    gv[k] = sp.second;
  }
  return join({simd::complex_dot(rule.weights, fv), simd::complex_dot(rule.weights, gv)}, unit, j);
}

struct Path {
  Side side;
  double anchor, lo, hi;
};
Path x_path(const SliceDomain& d, Side s) { return {s, s == Side::Left ? d.a : d.b, d.a, d.b}; }
Path y_path(const SliceDomain& d, Side s) { return {s, s == Side::Left ? 0.0 : d.c, 0.0, d.c}; }

void check_point(const Path& p, double t) {
  if (t < p.lo || t > p.hi) throw DomainError("evaluation point outside the domain");
}

// first derivative of a quaternion function of one variable on [lo, hi]
Quaternion fd_quat(const std::function<Quaternion(double)>& g, double t, double lo, double hi,
                   const QuadratureConfig& cfg) {
  const double h = cfg.diff_step * (hi - lo);
  if (t - h >= lo && t + h <= hi) return richardson_derivative<Quaternion>(g, t, h, cfg.richardson_levels);
  const double s = t - h < lo ? h : -h;
  return (-3.0 * g(t) + 4.0 * g(t + s) - g(t + 2.0 * s)) * (1.0 / (2.0 * s));
}

// one component of a sampled slice operator along a path through p
Quaternion sampled_component(const SliceOperator& op, const std::function<Quaternion(double)>& g,
                             const std::function<Quaternion(double)>& dg, const ImaginaryUnit& unit,
                             const Path& path, const PlaneComplex& order, double p, const QuadratureConfig& cfg) {
  check_point(path, p);
  const PlaneComplex sigma = 1.0 - order;
  const double sign = path.side == Side::Left ? 1.0 : -1.0;
  if (op.kind == OpKind::Caputo) {
    std::function<Quaternion(double)> d = dg;
    if (!d) d = [&](double t) { return fd_quat(g, t, path.lo, path.hi, cfg); };
    return sign * slice_integral(d, unit, path.side, path.anchor, sigma, p, cfg);
  }
  const double h = stencil_step(path.side, path.anchor, path.lo, path.hi, p, cfg);
  auto outer = [&](double xi) { return slice_integral(g, unit, path.side, path.anchor, sigma, xi, cfg); };
  return sign * richardson_derivative<Quaternion>(outer, p, h, cfg.richardson_levels);
}

}  // namespace

void SliceDomain::validate() const {
  if (!(a < b) || !(c > 0.0)) throw ConfigError("domain needs a < b and c > 0");
  if (!(u >= a && u <= b) || !(v >= 0.0 && v <= c)) throw ConfigError("base point (u, v) outside the domain");
}

std::string variant_name(Variant v) { return v == Variant::Corrected ? "corrected" : "displayed"; }

Variant parse_variant(const std::string& s) {
  if (s == "corrected") return Variant::Corrected;
  if (s == "displayed") return Variant::Displayed;
  throw ConfigError("unknown variant '" + s + "' (expected corrected or displayed)");
}

SampledFunction sampled_view(const MonomialSum& s) {
  return {s.as_function(), sym_partial(s, Var::X).as_function(), sym_partial(s, Var::Y).as_function()};
}

Quaternion evaluate(const SliceFunction& f, const ImaginaryUnit& unit, double x, double y) {
  if (const auto* s = std::get_if<MonomialSum>(&f)) return s->eval(unit, x, y);
  return std::get<SampledFunction>(f).fn(unit, x, y);
}

Quaternion evaluate_at(const SliceFunction& f, const Quaternion& q) {
  const SliceComplex sc = slice_decompose(q);
  return evaluate(f, sc.unit, sc.x, sc.y);
}

std::optional<SliceOperator> operator_from_name(const std::string& name) {
  using K = OpKind;
  if (name == "d_rl_left") return SliceOperator{K::RiemannLiouville, Side::Left, UnitSide::Left};
  if (name == "d_rl_rightsided") return SliceOperator{K::RiemannLiouville, Side::Right, UnitSide::Left};
  if (name == "d_rl_left_r") return SliceOperator{K::RiemannLiouville, Side::Left, UnitSide::Right};
  if (name == "d_caputo_left") return SliceOperator{K::Caputo, Side::Left, UnitSide::Left};
  if (name == "d_caputo_rightsided") return SliceOperator{K::Caputo, Side::Right, UnitSide::Left};
  if (name == "d_caputo_left_r") return SliceOperator{K::Caputo, Side::Left, UnitSide::Right};
  return std::nullopt;
}

std::pair<MonomialSum, MonomialSum> sym_slice_components(const SliceOperator& op, const MonomialSum& s,
                                                         const SliceDomain& dom, const OrderPair& orders) {
  dom.validate();
  const MonomialSum t = op.side == Side::Left ? in_frame(s, dom.a, 1.0, 0.0, 1.0)
                                              : in_frame(s, dom.b, -1.0, dom.c, -1.0);
  const MonomialSum on_x = substitute_y(t, dom.v);
  const MonomialSum on_y = substitute_x(t, dom.u);
  const PlaneComplex al = orders.alpha.value(), be = orders.beta.value();
  if (op.kind == OpKind::RiemannLiouville)
    return {sym_rl_derivative_x(on_x, al), sym_rl_derivative_y(on_y, be)};
  const PlaneComplex sign = op.side == Side::Left ? 1.0 : -1.0;
  return {sign * sym_rl_integral_x(sym_partial(on_x, Var::X), 1.0 - al),
          sign * sym_rl_integral_y(sym_partial(on_y, Var::Y), 1.0 - be)};
}

MonomialSum sym_slice_operator(const SliceOperator& op, const MonomialSum& s, const SliceDomain& dom,
                               const OrderPair& orders) {
  if (op.unit_side == UnitSide::Right)
    throw DomainError("unit on the right is slice dependent; evaluate pointwise");
  auto [X, Y] = sym_slice_components(op, s, dom, orders);
  return X + kI * Y;
}

Quaternion apply_operator(const SliceOperator& op, const SliceFunction& f, const SliceDomain& dom,
                          const OrderPair& orders, const ImaginaryUnit& unit, double x, double y,
                          const QuadratureConfig& cfg) {
  dom.validate();
  if (const auto* s = std::get_if<MonomialSum>(&f)) {
    auto [X, Y] = sym_slice_components(op, *s, dom, orders);
    return X.eval(unit, x, y) + unit_times(unit, Y.eval(unit, x, y), op.unit_side);
  }
  const auto& sf = std::get<SampledFunction>(f);
  using Fn1 = std::function<Quaternion(double)>;
  const Fn1 gx = [&](double t) { return sf.fn(unit, t, dom.v); };
  const Fn1 gy = [&](double t) { return sf.fn(unit, dom.u, t); };
  Fn1 dgx, dgy;
  if (sf.dx) dgx = [&](double t) { return sf.dx(unit, t, dom.v); };
  if (sf.dy) dgy = [&](double t) { return sf.dy(unit, dom.u, t); };
  const Quaternion X = sampled_component(op, gx, dgx, unit, x_path(dom, op.side), orders.alpha.value(), x, cfg);
  const Quaternion Y = sampled_component(op, gy, dgy, unit, y_path(dom, op.side), orders.beta.value(), y, cfg);
  return X + unit_times(unit, Y, op.unit_side);
}

Quaternion d_rl_left(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                     const ImaginaryUnit& unit, double x, double y, const QuadratureConfig& cfg) {
  return apply_operator({OpKind::RiemannLiouville, Side::Left, UnitSide::Left}, f, dom, orders, unit, x, y, cfg);
}
Quaternion d_rl_rightsided(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                           const ImaginaryUnit& unit, double x, double y, const QuadratureConfig& cfg) {
  return apply_operator({OpKind::RiemannLiouville, Side::Right, UnitSide::Left}, f, dom, orders, unit, x, y, cfg);
}
Quaternion d_rl_left_rlinear(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                             const ImaginaryUnit& unit, double x, double y, const QuadratureConfig& cfg) {
  return apply_operator({OpKind::RiemannLiouville, Side::Left, UnitSide::Right}, f, dom, orders, unit, x, y, cfg);
}
Quaternion d_caputo_left(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                         const ImaginaryUnit& unit, double x, double y, const QuadratureConfig& cfg) {
  return apply_operator({OpKind::Caputo, Side::Left, UnitSide::Left}, f, dom, orders, unit, x, y, cfg);
}

std::pair<Quaternion, Quaternion> slice_fractional_integrals(const SliceFunction& f, const SliceDomain& dom,
                                                             const OrderPair& orders, const ImaginaryUnit& unit,
                                                             double x, double y, const QuadratureConfig& cfg) {
  dom.validate();
  const PlaneComplex sx = 1.0 - orders.alpha.value(), sy = 1.0 - orders.beta.value();
  if (const auto* s = std::get_if<MonomialSum>(&f)) {
    const MonomialSum t = left_frame(*s, dom);
    return {sym_rl_integral_x(substitute_y(t, dom.v), sx).eval(unit, x, y),
            sym_rl_integral_y(substitute_x(t, dom.u), sy).eval(unit, x, y)};
  }
  const auto& sf = std::get<SampledFunction>(f);
  const Path px = x_path(dom, Side::Left), py = y_path(dom, Side::Left);
  check_point(px, x);
  check_point(py, y);
  return {slice_integral([&](double t) { return sf.fn(unit, t, dom.v); }, unit, Side::Left, dom.a, sx, x, cfg),
          slice_integral([&](double t) { return sf.fn(unit, dom.u, t); }, unit, Side::Left, 0.0, sy, y, cfg)};
}

PlaneComplex assoc_y_order(const OrderPair& orders, Variant variant) {
  const PlaneComplex b = orders.beta.value();
  return variant == Variant::Corrected ? 1.0 - b : 1.0 - std::conj(b);
}

MonomialSum sym_assoc_integral_map(const MonomialSum& s, const SliceDomain& dom, const OrderPair& orders,
                                   Variant variant) {
  dom.validate();
  const MonomialSum t = left_frame(s, dom);
  return sym_rl_integral_x(substitute_y(t, dom.v), 1.0 - orders.alpha.value()) +
         sym_rl_integral_y(substitute_x(t, dom.u), assoc_y_order(orders, variant));
}

SliceFunction assoc_integral_map(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                                 Variant variant, const QuadratureConfig& cfg) {
  if (const auto* s = std::get_if<MonomialSum>(&f)) return sym_assoc_integral_map(*s, dom, orders, variant);
  dom.validate();
  const SliceFn g = std::get<SampledFunction>(f).fn;
  const PlaneComplex sx = 1.0 - orders.alpha.value(), sy = assoc_y_order(orders, variant);
  SampledFunction out;
  out.fn = [g, dom, sx, sy, cfg](const ImaginaryUnit& unit, double x, double y) {
    const Quaternion ix =
        slice_integral([&](double t) { return g(unit, t, dom.v); }, unit, Side::Left, dom.a, sx, x, cfg);
    const Quaternion iy =
        slice_integral([&](double t) { return g(unit, dom.u, t); }, unit, Side::Left, 0.0, sy, y, cfg);
    return ix + iy;
  };
  return out;
}

Quaternion cr_bar(const SliceFunction& g, const SliceDomain& dom, const ImaginaryUnit& unit, double x, double y,
                  const QuadratureConfig& cfg) {
  Quaternion gx, gy;
  if (const auto* s = std::get_if<MonomialSum>(&g)) {
    gx = sym_partial(*s, Var::X).eval(unit, x, y);
    gy = sym_partial(*s, Var::Y).eval(unit, x, y);
  } else {
    const auto& sf = std::get<SampledFunction>(g);
    if (sf.dx) {
      gx = sf.dx(unit, x, y);
    } else {
      const double h = stencil_step(Side::Left, dom.a, dom.a, dom.b, x, cfg);
      gx = richardson_derivative<Quaternion>([&](double t) { return sf.fn(unit, t, y); }, x, h,
                                             cfg.richardson_levels);
    }
    if (sf.dy) {
      gy = sf.dy(unit, x, y);
    } else {
      const double h = stencil_step(Side::Left, 0.0, 0.0, dom.c, y, cfg);
      gy = richardson_derivative<Quaternion>([&](double t) { return sf.fn(unit, x, t); }, y, h,
                                             cfg.richardson_levels);
    }
  }
  return 0.5 * (gx + mul(unit.embed(), gy));
}

std::vector<ImaginaryUnit> random_units(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  std::vector<ImaginaryUnit> out;
  for (int k = 0; k < count; ++k) {
    const double z = 2.0 * uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

std::vector<double> chebyshev_nodes(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    const double t = -std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n));
    out[k] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
  }
  return out;
}

std::vector<GridPoint> make_grid(const SliceDomain& dom, const GridSpec& spec) {
  dom.validate();
  if (spec.nx < 1 || spec.ny < 1 || spec.random_units < 0 || !(spec.margin > 0.0 && spec.margin < 0.5))
    throw ConfigError("grid needs nx, ny >= 1, random_units >= 0 and margin in (0, 0.5)");
  std::vector<ImaginaryUnit> units = spec.units;
  if (units.empty()) {
    units = {ImaginaryUnit::e1(), ImaginaryUnit::e2(), ImaginaryUnit::e3()};
    for (const auto& u : random_units(spec.seed, spec.random_units)) units.push_back(u);
  }
  const double mx = spec.margin * (dom.b - dom.a), my = spec.margin * dom.c;
  const auto xs = chebyshev_nodes(dom.a + mx, dom.b - mx, spec.nx);
  const auto ys = chebyshev_nodes(my, dom.c - my, spec.ny);
  std::vector<GridPoint> out;
  out.reserve(units.size() * xs.size() * ys.size());
  for (const auto& u : units)
    for (double x : xs)
      for (double y : ys) out.push_back({u, x, y});
  return out;
}

double mixed_residual(const Quaternion& lhs, const Quaternion& rhs) {
  const double scale = std::max({1.0, norm(lhs), norm(rhs)});
  return norm(lhs - rhs) / scale;
}

namespace {

VerificationReport grid_norm_report(const std::string& name, const std::string& backend,
                                    const std::vector<GridPoint>& grid, double tol,
                                    const std::function<Quaternion(const GridPoint&)>& value) {
  VerificationReport r;
  r.identity_name = name;
  r.variant = "none";
  r.backend = backend;
  r.tolerance = tol;
  std::vector<Quaternion> vals(grid.size());
  std::vector<std::string> errs(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    try {
      vals[i] = value(grid[i]);
    } catch (const std::exception& e) {
      errs[i] = e.what();
    }
  });
  bool ok = true;
  r.points.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.points[i] = {grid[i], errs[i].empty() ? norm(vals[i]) : std::nan(""), errs[i]};
    if (!errs[i].empty()) ok = false;
  }
  r.max_abs_residual = simd::max_norm(vals);
  r.max_rel_residual = r.max_abs_residual;
  r.passed = ok && r.max_abs_residual <= tol;
  return r;
}

std::string backend_of(const SliceFunction& f) {
  return std::holds_alternative<MonomialSum>(f) ? "symbolic" : "sampled";
}

}  // namespace

VerificationReport operator_kernel_report(const SliceOperator& op, const std::string& name, const SliceFunction& f,
                                          const SliceDomain& dom, const OrderPair& orders, const GridSpec& grid,
                                          double tol, const QuadratureConfig& cfg) {
  return grid_norm_report(name, backend_of(f), make_grid(dom, grid), tol, [&](const GridPoint& p) {
    return apply_operator(op, f, dom, orders, p.unit, p.x, p.y, cfg);
  });
}

VerificationReport is_rl_slice_regular(const SliceFunction& f, const SliceDomain& dom, const OrderPair& orders,
                                       const GridSpec& grid, double tol, const QuadratureConfig& cfg) {
  return operator_kernel_report({}, "rl_slice_regular", f, dom, orders, grid, tol, cfg);
}

VerificationReport cr_bar_report(const SliceFunction& g, const std::string& name, const SliceDomain& dom,
                                 const GridSpec& grid, double tol, const QuadratureConfig& cfg) {
  return grid_norm_report(name, backend_of(g), make_grid(dom, grid), tol, [&](const GridPoint& p) {
    return cr_bar(g, dom, p.unit, p.x, p.y, cfg);
  });
}

// Builtins.

MonomialSum example45(const Example45Params& p, const OrderPair& orders, const SliceDomain& dom, Variant variant) {
  dom.validate();
  if (!(p.delta.real() > 0.0 && p.delta.real() < 1.0) || !(p.gamma_p.real() > 0.0 && p.gamma_p.real() < 1.0))
    throw DomainError("example parameters need 0 < delta0, gamma0 < 1");
  const Frame frame{dom.a, 1.0, 0.0, 1.0};
  const PlaneComplex al = orders.alpha.value(), be = orders.beta.value();
  const PlaneComplex sx = variant == Variant::Corrected ? al : 1.0 - al;
  const PlaneComplex sy = variant == Variant::Corrected ? be : 1.0 - be;
  // g - I^s[D g]
  auto brace_x = [&](const PlaneComplex& e) {
    const MonomialSum g(frame, {{1.0, e, 0.0, Quaternion(1.0)}});
    return g - sym_rl_integral_x(sym_rl_derivative_x(g, al), sx);
  };
  auto brace_y = [&](const PlaneComplex& e) {
    const MonomialSum g(frame, {{1.0, 0.0, e, Quaternion(1.0)}});
    return g - sym_rl_integral_y(sym_rl_derivative_y(g, be), sy);
  };
  MonomialSum f = product(brace_x(0.0), brace_y(0.0)) * p.q1;
  f += kI * product(brace_x(p.delta), brace_y(p.gamma_p)) * p.q2;
  return f;
}

MonomialSum kernel_power(const OrderPair& orders, const SliceDomain& dom, const Quaternion& q) {
  const Frame frame{dom.a, 1.0, 0.0, 1.0};
  return MonomialSum(frame, {{1.0, orders.alpha.value() - 1.0, orders.beta.value() - 1.0, q}});
}

MonomialSum kernel_linear(const OrderPair& orders, const SliceDomain& dom, const Quaternion& q) {
  dom.validate();
  const Frame frame{dom.a, 1.0, 0.0, 1.0};
  const PlaneComplex al = orders.alpha.value(), be = orders.beta.value();
  const PlaneComplex ra = rgamma(1.0 + al), rb = rgamma(1.0 + be);
  return MonomialSum(frame, {{ra, al, 0.0, q},
                             {kI * rb, 0.0, be, q},
                             {-kI * dom.v * rb, 0.0, be - 1.0, q},
                             {-(dom.u - dom.a) * ra, al - 1.0, 0.0, q}});
}

MonomialSum uv_projection(const MonomialSum& g, const SliceDomain& dom) {
  const MonomialSum gv = substitute_y(g, dom.v);
  return g - gv - substitute_x(g, dom.u) + substitute_x(gv, dom.u);
}

MonomialSum anchor_projection(const MonomialSum& g) {
  const Frame& f = g.frame();
  const MonomialSum g0 = substitute_y(g, f.y_anchor);
  return g - substitute_x(g, f.x_anchor) - g0 + substitute_x(g0, f.x_anchor);
}

MonomialSum slice_polynomial(const std::vector<Quaternion>& coeffs, double a) {
  MonomialSum out(a);
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    double binom = 1.0;
    PlaneComplex ik = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
      if (k > 0) {
        binom = binom * double(n - k + 1) / double(k);
        ik *= kI;
      }
      out.add({binom * ik, double(n - k), double(k), coeffs[n]});
    }
  }
  return out;
}

}  // namespace fracslice
