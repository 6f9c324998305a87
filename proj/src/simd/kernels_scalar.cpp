#include <cmath>

#include "fracslice/simd.hpp"

namespace fracslice::simd::scalar {

namespace {

// pairwise summation keeps the error O(log n) for long node lists
std::complex<double> pairwise(const std::complex<double>* w, const std::complex<double>* f,
                              std::size_t n) {
  if (n <= 8) {
    std::complex<double> s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += w[k] * f[k];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise(w, f, h) + pairwise(w + h, f + h, n - h);
}

}  // namespace

std::complex<double> complex_dot(const std::complex<double>* w, const std::complex<double>* f,
                                 std::size_t n) {
  return pairwise(w, f, n);
}

void quat_mul_batch(const Quaternion* p, const Quaternion* q, Quaternion* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = mul(p[k], q[k]);
}

double max_norm(const Quaternion* q, std::size_t n) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = std::sqrt(norm2(q[k]));
    if (v > m || std::isnan(v)) m = v;
    if (std::isnan(m)) return m;
  }
  return m;
}

}  // namespace fracslice::simd::scalar
