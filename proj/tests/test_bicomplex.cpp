#include "doctest.h"
#include "support.hpp"

using namespace vekua;
using namespace vekua::test;

namespace {

const cplx I(0.0, 1.0);

Bicomplex random_bicomplex(std::mt19937_64& rng) {
  return {cplx(uniform(rng, -2, 2), uniform(rng, -2, 2)), cplx(uniform(rng, -2, 2), uniform(rng, -2, 2))};
}

bool same(const Bicomplex& a, const Bicomplex& b, double tol = 0.0) { return magnitude(a - b) <= tol; }

}  // namespace

TEST_CASE("multiplication table") {
  const Bicomplex k = Bicomplex::k();
  CHECK(same(k * k, Bicomplex(-1.0)));
  CHECK(same(Bicomplex(I) * k, k * Bicomplex(I)));
  CHECK(same(Bicomplex(1.0, I) * Bicomplex(1.0, -I), Bicomplex(0.0)));
  const Bicomplex q{cplx(1, 2), cplx(-3, 0.5)};
  CHECK(same(q * Bicomplex(1.0), q));
}

TEST_CASE("conjugation") {
  const Bicomplex q{cplx(1, 2), cplx(3, 0)};
  CHECK(same(conj(q), Bicomplex{cplx(1, 2), cplx(-3, 0)}));
  CHECK(same(conj(conj(q)), q));
  CHECK(same(conj(Bicomplex::k()), -Bicomplex::k()));
}

TEST_CASE("inverse and zero divisors") {
  CHECK(same(inverse(Bicomplex(2.0)), Bicomplex(0.5)));
  CHECK(same(inverse(Bicomplex::k()), -Bicomplex::k()));
  CHECK_THROWS_AS(inverse(Bicomplex(1.0, I)), ZeroDivisorError);
  CHECK_THROWS_AS(inverse(Bicomplex(0.0)), ZeroDivisorError);
  CHECK(is_zero_divisor(Bicomplex(1.0, I)));
  CHECK_FALSE(is_zero_divisor(Bicomplex(1.0, 1.0)));
  CHECK_FALSE(is_zero_divisor(Bicomplex(0.0)));
  // (1 + k)(1 - k) = 2
  CHECK(same(Bicomplex(1.0, 1.0) * Bicomplex(1.0, -1.0), Bicomplex(2.0)));
}

TEST_CASE("ring properties on random samples") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    const Bicomplex a = random_bicomplex(rng), b = random_bicomplex(rng), c = random_bicomplex(rng);
    CHECK(same(a * b, b * a));
    CHECK(same((a * b) * c, a * (b * c), 1e-13));
    CHECK(same(a * (b + c), a * b + a * c, 1e-13));

    const Bicomplex n2 = a * conj(a);
    CHECK(n2.vec == cplx(0.0));
    CHECK(n2.sc == a.sc * a.sc + a.vec * a.vec);

    if (!is_zero_divisor(a, 1e-6)) {
      const Bicomplex one = inverse(a) * a;
      CHECK(magnitude(one - Bicomplex(1.0)) <= 1e-14 * std::max(1.0, magnitude(a) * magnitude(inverse(a))));
    }
    CHECK(same(times_k(a), Bicomplex::k() * a));
  }
}

TEST_CASE("zero divisor detection is relative") {
  const double s = 1e8;
  CHECK(is_zero_divisor(Bicomplex(cplx(s), cplx(0, s))));
  CHECK_FALSE(is_zero_divisor(Bicomplex(cplx(1e-8), cplx(1e-8))));
}
