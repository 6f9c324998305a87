#include "fracslice/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "fracslice/errors.hpp"

namespace fracslice {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficient set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos{
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   3.3994649984811888699e-5,
    4.6523628927048575665e-5,   -9.8374475304879564677e-5, 1.5808870322491248884e-4,
    -2.1026444172410488319e-4,  2.1743961811521264320e-4,  -1.6431810653676389022e-4,
    8.4418223983852743293e-5,   -2.6190838401581408670e-5, 3.6899182659531622704e-6};

PlaneComplex lanczos_sum(const PlaneComplex& z) {
  PlaneComplex s = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) s += kLanczos[k] / (z + double(k - 1));
  return s;
}

// log Gamma for re(z) >= 0.5
PlaneComplex lgamma_right(const PlaneComplex& z) {
  const PlaneComplex t = z + kLanczosG - 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

// log sin(pi z), accurate away from the zeros of sin
PlaneComplex log_sin_pi(const PlaneComplex& z) {
  const double y = kPi * z.imag();
  if (std::abs(y) < 30.0) return std::log(std::sin(kPi * z));
  // sin(w) = (e^{iw} - e^{-iw}) / 2i with one exponential dominant
  const PlaneComplex w = kPi * z;
  const PlaneComplex I(0.0, 1.0);
  if (y > 0) return -I * w + std::log((1.0 - std::exp(2.0 * I * w)) / (2.0 * I));
  return I * w + std::log((std::exp(-2.0 * I * w) - 1.0) / (2.0 * I));
}

}  // namespace

bool is_gamma_pole(const PlaneComplex& z) {
  if (z.real() > 0.5) return false;
  const double n = std::round(z.real());
  return std::abs(z - PlaneComplex(n, 0.0)) <= 1e-12;
}

PlaneComplex lgamma(const PlaneComplex& z) {
  if (is_gamma_pole(z)) throw PoleError("Gamma pole");
  if (z.real() >= 0.5) return lgamma_right(z);
  return std::log(kPi) - log_sin_pi(z) - lgamma_right(1.0 - z);
}

PlaneComplex gamma(const PlaneComplex& z) {
  if (is_gamma_pole(z)) throw PoleError("Gamma pole");
  if (z.real() >= 0.5) return std::exp(lgamma_right(z));
  // reflection, without logs so small negative arguments stay accurate
  return kPi / (std::sin(kPi * z) * std::exp(lgamma_right(1.0 - z)));
}

PlaneComplex rgamma(const PlaneComplex& z) {
  if (is_gamma_pole(z)) return 0.0;
  if (z.real() >= 0.5) return std::exp(-lgamma_right(z));
  return std::sin(kPi * z) * std::exp(lgamma_right(1.0 - z)) / kPi;
}

PlaneComplex cpow(double base, const PlaneComplex& exponent) {
  if (!(base > 0.0) || !std::isfinite(base)) throw DomainError("complex power of a nonpositive base");
  if (exponent == PlaneComplex(0.0, 0.0)) return 1.0;
  return std::exp(exponent * std::log(base));
}

PlaneComplex gamma_ratio(const PlaneComplex& num, const PlaneComplex& den) {
  if (num == den) {
    if (is_gamma_pole(den)) throw PoleError("Gamma pole");
    return 1.0;
  }
  return std::exp(lgamma(num) - lgamma(den));
}

}  // namespace fracslice
