#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

#include "fracslice/quat.hpp"

namespace fracslice::simd {

enum class Backend { Scalar, Avx2 };

/// Backend used by the dispatched kernels. Chosen once from CPU features;
/// FRACSLICE_SIMD=scalar forces the scalar reference path.
Backend active_backend();
std::string_view backend_name(Backend b);
bool backend_available(Backend b);
/// Forces a backend (tests); returns the previous one. Throws if unavailable.
Backend set_backend(Backend b);

/// sum_k w[k] * f[k]
std::complex<double> complex_dot(std::span<const std::complex<double>> w,
                                 std::span<const std::complex<double>> f);
/// out[k] = p[k] * q[k]
void quat_mul_batch(std::span<const Quaternion> p, std::span<const Quaternion> q,
                    std::span<Quaternion> out);
/// max_k |q[k]|, 0 for an empty span
double max_norm(std::span<const Quaternion> q);

// Per-backend entry points, exposed for equivalence tests.
namespace scalar {
std::complex<double> complex_dot(const std::complex<double>* w, const std::complex<double>* f,
                                 std::size_t n);
void quat_mul_batch(const Quaternion* p, const Quaternion* q, Quaternion* out, std::size_t n);
double max_norm(const Quaternion* q, std::size_t n);
}  // namespace scalar

#if defined(FRACSLICE_HAVE_AVX2)
namespace avx2 {
std::complex<double> complex_dot(const std::complex<double>* w, const std::complex<double>* f,
                                 std::size_t n);
void quat_mul_batch(const Quaternion* p, const Quaternion* q, Quaternion* out, std::size_t n);
double max_norm(const Quaternion* q, std::size_t n);
}  // namespace avx2
#endif

}  // namespace fracslice::simd
