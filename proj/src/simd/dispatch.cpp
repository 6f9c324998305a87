#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "fracslice/simd.hpp"

namespace fracslice::simd {

namespace {

bool cpu_has_avx2() {
#if defined(FRACSLICE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() {
  const char* env = std::getenv("FRACSLICE_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Backend::Scalar;
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

Backend active_backend() { return current().load(std::memory_order_relaxed); }

std::string_view backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) { return b == Backend::Scalar || cpu_has_avx2(); }

Backend set_backend(Backend b) {
  if (!backend_available(b)) throw std::runtime_error("SIMD backend not available on this CPU");
  return current().exchange(b);
}

std::complex<double> complex_dot(std::span<const std::complex<double>> w,
                                 std::span<const std::complex<double>> f) {
  const std::size_t n = w.size() < f.size() ? w.size() : f.size();
#if defined(FRACSLICE_HAVE_AVX2)
  if (active_backend() == Backend::Avx2) return avx2::complex_dot(w.data(), f.data(), n);
#endif
  return scalar::complex_dot(w.data(), f.data(), n);
}

void quat_mul_batch(std::span<const Quaternion> p, std::span<const Quaternion> q,
                    std::span<Quaternion> out) {
  std::size_t n = p.size() < q.size() ? p.size() : q.size();
  if (out.size() < n) n = out.size();
#if defined(FRACSLICE_HAVE_AVX2)
  if (active_backend() == Backend::Avx2) return avx2::quat_mul_batch(p.data(), q.data(), out.data(), n);
#endif
  scalar::quat_mul_batch(p.data(), q.data(), out.data(), n);
}

double max_norm(std::span<const Quaternion> q) {
#if defined(FRACSLICE_HAVE_AVX2)
  if (active_backend() == Backend::Avx2) return avx2::max_norm(q.data(), q.size());
#endif
  return scalar::max_norm(q.data(), q.size());
}

}  // namespace fracslice::simd
