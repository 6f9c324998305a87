#pragma once

#include <functional>
#include <vector>

#include "fracslice/errors.hpp"
#include "fracslice/quat.hpp"

namespace fracslice {

/// Fractional order alpha0 + i alpha1 with alpha0 in (0, 1).
class ComplexOrder {
 public:
  ComplexOrder(double re, double im = 0.0);
  explicit ComplexOrder(const PlaneComplex& z) : ComplexOrder(z.real(), z.imag()) {}

  double re() const { return re_; }
  double im() const { return im_; }
  PlaneComplex value() const { return {re_, im_}; }

 private:
  double re_;
  double im_;
};

/// A complex-valued function of one real variable with its domain [lo, hi].
struct Integrand1D {
  std::function<PlaneComplex(double)> fn;
  double lo = 0.0;
  double hi = 1.0;
};

struct QuadratureConfig {
  int nodes = 64;            // >= 8
  double diff_step = 1e-5;   // relative to the interval length
  int richardson_levels = 2;
  void validate() const;
};

enum class Side { Left, Right };

/// Nodes and complex weights with
///   sum_k w_k f(t_k) ~ 1/Gamma(sigma) * int f(t) |x - t|^(sigma - 1) dt
/// over [anchor, x] (Left) or [x, anchor] (Right).
///
/// Double-exponential (tanh-sinh) rule; the kernel is folded into the weights
/// in log space so the singular end at x is handled exactly, and the rule
/// tolerates integrable singularities of f at the anchor. The step is the
/// smaller of span/(nodes-1) and a cap set by the kernel's oscillation
/// |x - t|^(i im(sigma)), which narrows the strip of analyticity.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<PlaneComplex> weights;
};
QuadratureRule rl_rule(Side side, double anchor, const PlaneComplex& sigma, double x,
                       const QuadratureConfig& cfg);

/// Left Riemann-Liouville integral I_{a+}^sigma f (x), re(sigma) in (0, 1].
PlaneComplex rl_integral_left(const Integrand1D& f, double a, const PlaneComplex& sigma, double x,
                              const QuadratureConfig& cfg = {});
/// Right Riemann-Liouville integral I_{b-}^sigma f (x).
PlaneComplex rl_integral_right(const Integrand1D& f, double b, const PlaneComplex& sigma, double x,
                               const QuadratureConfig& cfg = {});

/// d/dx I_{a+}^{1-alpha} f (x), central differences + Richardson.
PlaneComplex rl_derivative_left(const Integrand1D& f, double a, const ComplexOrder& alpha, double x,
                                const QuadratureConfig& cfg = {});
/// -d/dx I_{b-}^{1-alpha} f (x).
PlaneComplex rl_derivative_right(const Integrand1D& f, double b, const ComplexOrder& alpha, double x,
                                 const QuadratureConfig& cfg = {});

/// I_{a+}^{1-alpha}[df](x); df is the classical derivative of f.
PlaneComplex caputo_left(const Integrand1D& f, const Integrand1D& df, double a,
                         const ComplexOrder& alpha, double x, const QuadratureConfig& cfg = {});
/// -I_{b-}^{1-alpha}[df](x).
PlaneComplex caputo_right(const Integrand1D& f, const Integrand1D& df, double b,
                          const ComplexOrder& alpha, double x, const QuadratureConfig& cfg = {});

/// Finite-difference derivative of f (one-sided near the ends of its domain).
Integrand1D fd_derivative(const Integrand1D& f, const QuadratureConfig& cfg = {});

/// Step for the outer derivative at x of an operator anchored at `anchor`
/// on a function living on [lo, hi]. Throws DomainError when x is within
/// max(10 diff_step (hi-lo), 1e-8) of the anchor and StencilError when the
/// stencil leaves [lo, hi].
double stencil_step(Side side, double anchor, double lo, double hi, double x,
                    const QuadratureConfig& cfg);

/// Central differences at x with steps h, h/2, ..., h/2^levels, Richardson
/// extrapolated. V needs +, - and scaling by double.
template <class V, class G>
V richardson_derivative(G&& g, double x, double h, int levels) {
  std::vector<V> prev, cur;
  for (int k = 0; k <= levels; ++k) {
    const double hk = h / double(1 << k);
    cur.assign(1, (g(x + hk) - g(x - hk)) * (0.5 / hk));
    double p4 = 1.0;
    for (int j = 1; j <= k; ++j) {
      p4 *= 4.0;
      cur.push_back(cur[j - 1] + (cur[j - 1] - prev[j - 1]) * (1.0 / (p4 - 1.0)));
    }
    prev.swap(cur);
  }
  return prev.back();
}

}  // namespace fracslice
