#pragma once

#include "fracslice/quat.hpp"

namespace fracslice {

/// True when z lies within 1e-12 of a nonpositive integer.
bool is_gamma_pole(const PlaneComplex& z);

/// Principal-branch-free log Gamma: exp(lgamma(z)) == gamma(z). The imaginary
/// part is only defined modulo 2*pi. Throws PoleError at poles.
PlaneComplex lgamma(const PlaneComplex& z);

/// Gamma of a complex argument; relative error about 1e-13 for |z| <= 30.
PlaneComplex gamma(const PlaneComplex& z);

/// 1/Gamma(z), entire; exactly 0 at the poles of Gamma.
PlaneComplex rgamma(const PlaneComplex& z);

// Real-argument overloads. They exist so that an unqualified call with a
// double argument is ambiguous with glibc's ::gamma (which is log Gamma)
// instead of silently resolving to it.
inline PlaneComplex gamma(double x) { return gamma(PlaneComplex(x, 0.0)); }
inline PlaneComplex lgamma(double x) { return lgamma(PlaneComplex(x, 0.0)); }
inline PlaneComplex rgamma(double x) { return rgamma(PlaneComplex(x, 0.0)); }

/// base^exponent = exp(exponent * ln(base)) for a positive real base.
/// Throws DomainError when base <= 0 or is not finite.
PlaneComplex cpow(double base, const PlaneComplex& exponent);

/// Gamma(num) / Gamma(den) through a log-Gamma difference (safe up to |z| ~ 150).
PlaneComplex gamma_ratio(const PlaneComplex& num, const PlaneComplex& den);

}  // namespace fracslice
