#include "fracslice/fracnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracslice/simd.hpp"
#include "fracslice/specfun.hpp"

namespace fracslice {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Far-end reach in u: lets f carry an integrable singularity (t - anchor)^mu
// down to re(mu) = -0.8 at double precision.
constexpr double kFarU = 92.0;
// -ln(1e-16): kernel decay target at the singular end
constexpr double kDecay = 36.8;

double log_cosh(double u) {
  const double a = std::abs(u);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

void check_sigma(const PlaneComplex& sigma) {
  if (!(sigma.real() > 0.0 && sigma.real() <= 1.0 + 1e-12) || !std::isfinite(sigma.imag()))
    throw DomainError("integral order must have real part in (0, 1]");
}

PlaneComplex apply_rule(const QuadratureRule& rule, const Integrand1D& f) {
  std::vector<PlaneComplex> vals(rule.nodes.size());
  for (std::size_t k = 0; k < vals.size(); ++k) {
    vals[k] = f.fn(rule.nodes[k]);
    if (!std::isfinite(vals[k].real()) || !std::isfinite(vals[k].imag()))
      throw QuadratureError("non-finite integrand value at t = " + std::to_string(rule.nodes[k]));
  }
  return simd::complex_dot(rule.weights, vals);
}

}  // namespace

ComplexOrder::ComplexOrder(double re, double im) : re_(re), im_(im) {
  if (!(re > 0.0 && re < 1.0) || !std::isfinite(im))
    throw DomainError("order must have real part in (0, 1)");
}

void QuadratureConfig::validate() const {
  if (nodes < 8) throw ConfigError("quadrature.nodes must be >= 8");
  if (!(diff_step > 0.0 && diff_step < 0.1)) throw ConfigError("quadrature.diff_step must lie in (0, 0.1)");
  if (richardson_levels < 0 || richardson_levels > 6)
    throw ConfigError("quadrature.richardson_levels must lie in [0, 6]");
}

QuadratureRule rl_rule(Side side, double anchor, const PlaneComplex& sigma, double x,
                       const QuadratureConfig& cfg) {
  cfg.validate();
  check_sigma(sigma);
  const double L = side == Side::Left ? x - anchor : anchor - x;
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("empty integration interval");

  const double s0 = sigma.real(), s1 = sigma.imag();
  const double s_hi = std::asinh(2.0 * (kDecay / s0) / kPi);
  const double s_lo = std::asinh(2.0 * kFarU / kPi);
  double h = (s_hi + s_lo) / double(cfg.nodes - 1);
  if (s1 != 0.0) {
    // |x - t|^(i s1) bounds the analytic strip by atan(s0/|s1|)
    const double d = std::atan(s0 / std::abs(s1));
    h = std::min(h, 2.0 * kPi * d / 40.0);
  }
  const int n = int(std::ceil((s_hi + s_lo) / h - 1e-9)) + 1;

  const double half = 0.5 * L;
  const PlaneComplex scale = rgamma(sigma);
  const PlaneComplex lead = sigma * std::log(half);
  const double dir = side == Side::Left ? 1.0 : -1.0;

  QuadratureRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double s = -s_lo + k * h;
    const double u = 0.5 * kPi * std::sinh(s);
    const double lc = log_cosh(u);
    const double ln_e = -u - lc;  // ln(1 - t), distance to x
    const double ln_p = u - lc;   // ln(1 + t), distance to the anchor
    const double off_p = half * std::exp(ln_p);
    const double off_e = half * std::exp(ln_e);
    if (!(off_p > 8.0 * kEps * std::abs(anchor)) || off_p == 0.0) continue;
    const double t = u < 0 ? anchor + dir * off_p : x - dir * off_e;
    if (t == anchor) continue;
    const PlaneComplex lw = lead + (sigma - 1.0) * ln_e + std::log(0.5 * kPi * h) +
                            std::log(std::cosh(s)) - 2.0 * lc;
    if (lw.real() < -700.0) continue;
    rule.nodes.push_back(t);
    rule.weights.push_back(scale * std::exp(lw));
  }
  return rule;
}

PlaneComplex rl_integral_left(const Integrand1D& f, double a, const PlaneComplex& sigma, double x,
                              const QuadratureConfig& cfg) {
  if (!(x > a)) throw DomainError("left integral needs x > a");
  if (a < f.lo || x > f.hi) throw DomainError("integration range outside the integrand domain");
  return apply_rule(rl_rule(Side::Left, a, sigma, x, cfg), f);
}

PlaneComplex rl_integral_right(const Integrand1D& f, double b, const PlaneComplex& sigma, double x,
                               const QuadratureConfig& cfg) {
  if (!(x < b)) throw DomainError("right integral needs x < b");
  if (x < f.lo || b > f.hi) throw DomainError("integration range outside the integrand domain");
  return apply_rule(rl_rule(Side::Right, b, sigma, x, cfg), f);
}

double stencil_step(Side side, double anchor, double lo, double hi, double x,
                    const QuadratureConfig& cfg) {
  cfg.validate();
  const double span = side == Side::Left ? hi - anchor : anchor - lo;
  if (!(span > 0.0)) throw DomainError("degenerate interval");
  const double dist = side == Side::Left ? x - anchor : anchor - x;
  const double delta = std::max(10.0 * cfg.diff_step * span, 1e-8);
  if (!(dist >= delta)) throw DomainError("evaluation point too close to the singular endpoint");
  const double h = std::min(cfg.diff_step * span, dist / 4.0);
  if (side == Side::Left ? x + h > hi : x - h < lo)
    throw StencilError("finite-difference stencil leaves the domain");
  return h;
}

PlaneComplex rl_derivative_left(const Integrand1D& f, double a, const ComplexOrder& alpha, double x,
                                const QuadratureConfig& cfg) {
  const double h = stencil_step(Side::Left, a, f.lo, f.hi, x, cfg);
  const PlaneComplex sigma = 1.0 - alpha.value();
  auto g = [&](double xi) { return rl_integral_left(f, a, sigma, xi, cfg); };
  return richardson_derivative<PlaneComplex>(g, x, h, cfg.richardson_levels);
}

PlaneComplex rl_derivative_right(const Integrand1D& f, double b, const ComplexOrder& alpha, double x,
                                 const QuadratureConfig& cfg) {
  const double h = stencil_step(Side::Right, b, f.lo, f.hi, x, cfg);
  const PlaneComplex sigma = 1.0 - alpha.value();
  auto g = [&](double xi) { return rl_integral_right(f, b, sigma, xi, cfg); };
  return -richardson_derivative<PlaneComplex>(g, x, h, cfg.richardson_levels);
}

PlaneComplex caputo_left(const Integrand1D& f, const Integrand1D& df, double a,
                         const ComplexOrder& alpha, double x, const QuadratureConfig& cfg) {
  (void)f;
  return rl_integral_left(df, a, 1.0 - alpha.value(), x, cfg);
}

PlaneComplex caputo_right(const Integrand1D& f, const Integrand1D& df, double b,
                          const ComplexOrder& alpha, double x, const QuadratureConfig& cfg) {
  (void)f;
  return -rl_integral_right(df, b, 1.0 - alpha.value(), x, cfg);
}

Integrand1D fd_derivative(const Integrand1D& f, const QuadratureConfig& cfg) {
  cfg.validate();
  const double h = cfg.diff_step * (f.hi - f.lo);
  const int levels = cfg.richardson_levels;
  auto fn = [f, h, levels](double t) -> PlaneComplex {
    if (t - h >= f.lo && t + h <= f.hi)
      return richardson_derivative<PlaneComplex>(f.fn, t, h, levels);
    // second-order one-sided differences at the ends
    const double s = t - h < f.lo ? h : -h;
    return (-3.0 * f.fn(t) + 4.0 * f.fn(t + s) - f.fn(t + 2.0 * s)) / (2.0 * s);
  };
  return {fn, f.lo, f.hi};
}

}  // namespace fracslice
