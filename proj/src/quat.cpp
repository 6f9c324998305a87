#include "fracslice/quat.hpp"

#include <cstdio>
#include <ostream>

#include "fracslice/errors.hpp"

namespace fracslice {

Quaternion inverse(const Quaternion& q) {
  const double n2 = norm2(q);
  if (!(n2 > 0.0)) throw DomainError("inverse of zero quaternion");
  return conj(q) * (1.0 / n2);
}

ImaginaryUnit::ImaginaryUnit(double u1, double u2, double u3) {
  const double n = std::hypot(std::hypot(u1, u2), u3);
  if (!(n > 1e-300) || !std::isfinite(n)) throw DomainError("imaginary unit from zero vector");
  u1_ = u1 / n;
  u2_ = u2 / n;
  u3_ = u3 / n;
}

ImaginaryUnit ImaginaryUnit::operator-() const {
  ImaginaryUnit r;
  r.u1_ = -u1_;
  r.u2_ = -u2_;
  r.u3_ = -u3_;
  return r;
}

ImaginaryUnit ImaginaryUnit::orthogonal() const {
  const std::array<std::array<double, 3>, 2> cands{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}};
  for (const auto& e : cands) {
    const double d = e[0] * u1_ + e[1] * u2_ + e[2] * u3_;
    const double r1 = e[0] - d * u1_, r2 = e[1] - d * u2_, r3 = e[2] - d * u3_;
    // 0.1 keeps the normalization well conditioned; e1, e2 cannot both fail
    if (std::hypot(std::hypot(r1, r2), r3) > 0.1) return {r1, r2, r3};
  }
  // unreachable for a unit vector: |u1| and |u2| cannot both exceed 0.995
  return {0.0, 0.0, 1.0};
}

SliceComplex slice_decompose(const Quaternion& q) {
  const double y = std::hypot(std::hypot(q.x1, q.x2), q.x3);
  if (y == 0.0) return {q.w, 0.0, ImaginaryUnit::e1()};
  return {q.w, y, ImaginaryUnit(q.x1, q.x2, q.x3)};
}

SplitPair split(const Quaternion& q, const ImaginaryUnit& i, const ImaginaryUnit& j) {
  // basis (1, i, j, ij); ij is the cross product since i is orthogonal to j
  const Quaternion qi = i.embed(), qj = j.embed(), qk = mul(qi, qj);
  auto dot = [](const Quaternion& p, const Quaternion& r) {
    return p.w * r.w + p.x1 * r.x1 + p.x2 * r.x2 + p.x3 * r.x3;
  };
  return {{q.w, dot(q, qi)}, {dot(q, qj), dot(q, qk)}};
}

Quaternion join(const SplitPair& p, const ImaginaryUnit& i, const ImaginaryUnit& j) {
  return i.realize(p.first) + mul(i.realize(p.second), j.embed());
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g, %.17g, %.17g]", q.w, q.x1, q.x2, q.x3);
  return os << buf;
}

}  // namespace fracslice
