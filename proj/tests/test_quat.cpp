#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fracslice/errors.hpp"
#include "fracslice/quat.hpp"

using namespace fracslice;

namespace {
bool close(const Quaternion& a, const Quaternion& b, double tol = 1e-14) { return norm(a - b) <= tol; }
}  // namespace

TEST_CASE("Hamilton table") {
  const Quaternion i = Quaternion::e1(), j = Quaternion::e2(), k = Quaternion::e3();
  CHECK(i * j == k);
  CHECK(j * k == i);
  CHECK(k * i == j);
  CHECK(j * i == -k);
  CHECK(i * i == Quaternion(-1.0));
  CHECK(i * j * k == Quaternion(-1.0));
}

TEST_CASE("product is associative, norm multiplicative, inverse exact") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    const Quaternion p(d(rng), d(rng), d(rng), d(rng)), q(d(rng), d(rng), d(rng), d(rng)),
        r(d(rng), d(rng), d(rng), d(rng));
    CHECK(close((p * q) * r, p * (q * r), 1e-13));
    CHECK(norm(p * q) == doctest::Approx(norm(p) * norm(q)).epsilon(1e-14));
    CHECK(close(p * inverse(p), Quaternion(1.0), 1e-14));
    CHECK(close(conj(p * q), conj(q) * conj(p)));
  }
  CHECK_THROWS_AS(inverse(Quaternion(0.0)), DomainError);
}

TEST_CASE("imaginary units square to -1") {
  const ImaginaryUnit u(1.0, 2.0, -2.0);
  CHECK(u.u1() == doctest::Approx(1.0 / 3.0));
  CHECK(close(u.embed() * u.embed(), Quaternion(-1.0)));
  CHECK(std::abs(u.dot(u.orthogonal())) < 1e-15);
  CHECK(close(u.realize({2.0, 3.0}), Quaternion(2.0, 1.0, 2.0, -2.0)));
  CHECK_THROWS_AS(ImaginaryUnit(0.0, 0.0, 0.0), DomainError);
  for (const auto& w : {ImaginaryUnit::e1(), ImaginaryUnit::e2(), ImaginaryUnit::e3(), ImaginaryUnit(1, 1, 1)})
    CHECK(std::abs(w.dot(w.orthogonal())) < 1e-15);
}

TEST_CASE("slice decomposition") {
  const Quaternion q(0.5, 0.0, 3.0, 4.0);
  const SliceComplex s = slice_decompose(q);
  CHECK(s.x == 0.5);
  CHECK(s.y == doctest::Approx(5.0));
  CHECK(close(s.embed(), q));
  const SliceComplex r = slice_decompose(Quaternion(-2.0));
  CHECK(r.y == 0.0);
  CHECK(r.unit == ImaginaryUnit::e1());
}

TEST_CASE("split and join are inverse") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const ImaginaryUnit i(d(rng), d(rng), d(rng) + 2.0);
    const ImaginaryUnit j = i.orthogonal();
    const Quaternion q(d(rng), d(rng), d(rng), d(rng));
    const SplitPair sp = split(q, i, j);
    CHECK(close(join(sp, i, j), q));
    // q = z1 + z2 j with z1 = i.realize(first)
    CHECK(close(i.realize(sp.first) + i.realize(sp.second) * j.embed(), q));
  }
}
