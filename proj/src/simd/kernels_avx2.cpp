// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "fracslice/simd.hpp"

namespace fracslice::simd::avx2 {

namespace {

// (ar br - ai bi, ai br + ar bi) for two interleaved complex pairs
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d bre = _mm256_movedup_pd(b);
  const __m256d bim = _mm256_permute_pd(b, 0xF);
  const __m256d aswap = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, bre, _mm256_mul_pd(aswap, bim));
}

}  // namespace

std::complex<double> complex_dot(const std::complex<double>* w, const std::complex<double>* f,
                                 std::size_t n) {
  const double* pw = reinterpret_cast<const double*>(w);
  const double* pf = reinterpret_cast<const double*>(f);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(pw + 2 * k), _mm256_loadu_pd(pf + 2 * k)));
    acc1 = _mm256_add_pd(acc1, cmul(_mm256_loadu_pd(pw + 2 * k + 4), _mm256_loadu_pd(pf + 2 * k + 4)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  std::complex<double> s(lanes[0] + lanes[2], lanes[1] + lanes[3]);
  for (; k < n; ++k) s += w[k] * f[k];
  return s;
}

void quat_mul_batch(const Quaternion* p, const Quaternion* q, Quaternion* out, std::size_t n) {
  const __m256d s1 = _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0);
  const __m256d s2 = _mm256_setr_pd(-1.0, 1.0, 1.0, -1.0);
  const __m256d s3 = _mm256_setr_pd(-1.0, -1.0, 1.0, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double* a = &p[k].w;
    const __m256d b = _mm256_loadu_pd(&q[k].w);
    __m256d r = _mm256_mul_pd(_mm256_set1_pd(a[0]), b);
    r = _mm256_fmadd_pd(_mm256_set1_pd(a[1]), _mm256_mul_pd(s1, _mm256_permute4x64_pd(b, 0xB1)), r);
    r = _mm256_fmadd_pd(_mm256_set1_pd(a[2]), _mm256_mul_pd(s2, _mm256_permute4x64_pd(b, 0x4E)), r);
    r = _mm256_fmadd_pd(_mm256_set1_pd(a[3]), _mm256_mul_pd(s3, _mm256_permute4x64_pd(b, 0x1B)), r);
    _mm256_storeu_pd(&out[k].w, r);
  }
}

double max_norm(const Quaternion* q, std::size_t n) {
  double m = 0.0;
  std::size_t k = 0;
  // four quaternions per step: transpose-free via squared sums per lane pair
  for (; k + 4 <= n; k += 4) {
    const __m256d a = _mm256_loadu_pd(&q[k].w), b = _mm256_loadu_pd(&q[k + 1].w);
    const __m256d c = _mm256_loadu_pd(&q[k + 2].w), d = _mm256_loadu_pd(&q[k + 3].w);
    const __m256d ab = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    const __m256d cd = _mm256_hadd_pd(_mm256_mul_pd(c, c), _mm256_mul_pd(d, d));
    // ab = (a01, b01, a23, b23), cd likewise
    const __m256d lo = _mm256_permute2f128_pd(ab, cd, 0x20);
    const __m256d hi = _mm256_permute2f128_pd(ab, cd, 0x31);
    alignas(32) double n2[4];
    _mm256_store_pd(n2, _mm256_add_pd(lo, hi));
    for (double v : n2) {
      const double r = std::sqrt(v);
      if (std::isnan(r)) return r;
      if (r > m) m = r;
    }
  }
  for (; k < n; ++k) {
    const double r = std::sqrt(norm2(q[k]));
    if (std::isnan(r)) return r;
    if (r > m) m = r;
  }
  return m;
}

}  // namespace fracslice::simd::avx2
