#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fracslice/sliceops.hpp"

namespace fracslice {

/// Everything a verification routine needs besides its test functions.
/// Default orders carry imaginary parts: with real orders several printed
/// conventions coincide with the corrected ones and cannot be told apart.
struct VerifyContext {
  SliceDomain domain;
  OrderPair orders{ComplexOrder(0.5, 0.2), ComplexOrder(0.4, -0.15)};
  QuadratureConfig quad;
  GridSpec grid;
  std::uint64_t seed = 0;
  Variant variant = Variant::Corrected;
  std::map<std::string, double> tolerances;  // overrides of default_tolerance
  Example45Params example45;

  double tolerance(const std::string& identity) const;
};

/// Registered identity names, in report order.
const std::vector<std::string>& identity_names();
bool is_identity(const std::string& name);
/// Throws ConfigError for unknown names.
double default_tolerance(const std::string& identity);

/// Runs one registered verification with its default test functions.
VerificationReport run_identity(const std::string& name, const VerifyContext& ctx);
/// Runs several (in parallel across identities); result order follows `names`.
std::vector<VerificationReport> run_identities(const std::vector<std::string>& names, const VerifyContext& ctx);

/// Random order pair with re in [0.2, 0.8] and |im| in [0.1, 0.4].
OrderPair random_orders(std::mt19937_64& rng);

// Classical slice regular functions.

/// Components of f on C(i) + C(i) j as sums pinned to the slice i (real right
/// constants), so f = F + G j there.
std::pair<MonomialSum, MonomialSum> split_sum(const MonomialSum& f, const ImaginaryUnit& i, const ImaginaryUnit& j);

/// Splitting lemma on the grid of `grid` restricted to unit i. Throws
/// DomainError if i and j are not orthogonal.
VerificationReport verify_splitting_classical(const MonomialSum& f, const ImaginaryUnit& i, const ImaginaryUnit& j,
                                              const SliceDomain& dom, const GridSpec& grid, double tol);

/// f(x + iq y) against the half-sum/half-difference of the values on +-i.
VerificationReport verify_representation_classical(const SliceFunction& f, double x, double y,
                                                   const ImaginaryUnit& i, const ImaginaryUnit& iq, double tol);

struct ContourSpec {
  double center = 0.0;
  double radius = 1.0;
  int nodes = 512;
};

/// Trapezoidal Cauchy integral on the circle of C(unit_i); reconstructs f(q)
/// for q inside the sphere swept by the circle. Throws DomainError when q
/// lies on that sphere or the contour is invalid.
Quaternion cauchy_eval(const SliceFunction& f, const ContourSpec& contour, const Quaternion& q,
                       const ImaginaryUnit& unit_i);

// Fractional identities. Each routine evaluates every convention variant as
// a Check and decides `passed` with ctx.variant.

VerificationReport verify_fractional_splitting(const std::vector<MonomialSum>& fs, const VerifyContext& ctx);
VerificationReport verify_fractional_representation(const std::vector<MonomialSum>& fs, const VerifyContext& ctx,
                                                    const std::vector<std::pair<ImaginaryUnit, ImaginaryUnit>>& pairs);
VerificationReport verify_prop_fract131(const std::vector<MonomialSum>& fs, const VerifyContext& ctx);
/// Real orders (imaginary parts of ctx.orders are dropped).
VerificationReport verify_corollary_real(const std::vector<MonomialSum>& fs, const VerifyContext& ctx);

/// Gamma(n+1) / (Gamma(n-k+alpha) Gamma(k+beta)), via log-gamma.
PlaneComplex lambda_coeff(int k, int n, const OrderPair& orders);

struct SeriesCoefficients {
  std::vector<Quaternion> a;  // a_0 .. a_N
};
VerificationReport verify_series_expansion(const std::vector<SeriesCoefficients>& cs, const VerifyContext& ctx);

struct KernelNResult {
  Quaternion value;
  double ratio = 0.0;          // |q - a| / |zeta - a|
  double tail_estimate = 0.0;  // geometric bound on the omitted terms
  bool warning = false;        // divergent or tail above the tolerance
  std::string message;
};

/// Truncated kernel sum, each term from the exact fractional derivatives of
/// the binomially expanded (q - a)^n. zeta must lie on the slice of q.
KernelNResult kernel_N(const Quaternion& zeta, const Quaternion& q, double a, const OrderPair& orders,
                       int truncation = 30, double tail_tol = 1e-10);
/// Same partial sum from the closed double-sum form, in plain complex
/// arithmetic. Displayed variant uses Gamma(k + re alpha) in the x factor.
Quaternion kernel_N_closed(const Quaternion& zeta, const Quaternion& q, double a, const OrderPair& orders,
                           int truncation = 30, Variant variant = Variant::Corrected);

VerificationReport verify_caputo_rl_slice(const std::vector<MonomialSum>& fs, const VerifyContext& ctx);
VerificationReport verify_caputo_membership_equiv(const std::vector<MonomialSum>& fs, const VerifyContext& ctx);

// Single-variable and operator-level checks.
VerificationReport verify_power_rule(const VerifyContext& ctx);
VerificationReport verify_fund_theorem(const VerifyContext& ctx);
VerificationReport verify_rl_caputo_link(const VerifyContext& ctx);
VerificationReport verify_example45_kernel(const VerifyContext& ctx);
VerificationReport verify_kernel_N(const VerifyContext& ctx);
VerificationReport verify_cauchy(const VerifyContext& ctx);

}  // namespace fracslice
