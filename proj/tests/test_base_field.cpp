#include <set>

#include "doctest.h"
#include "witt/base_field.hpp"
#include "witt/error.hpp"
#include "witt/random.hpp"

using namespace witt;

namespace {

// Brute force: does z^2 = a x^2 + b y^2 have a solution modulo m = p^k with
// (x, y) not both divisible by p?  For squarefree a, b this decides the local
// symbol when m = p^2 (p odd) or m = 64 (p = 2).
int brute_hilbert(long a, long b, long p) {
  const long m = p == 2 ? 64 : p * p;
  std::set<long> squares;
  for (long z = 0; z < m; ++z) squares.insert(z * z % m);
  auto mod = [m](long v) { return ((v % m) + m) % m; };
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y) {
      if (x % p == 0 && y % p == 0) continue;
      if (squares.count(mod(mod(a) * (x * x % m) + mod(b) * (y * y % m)))) return 1;
    }
  return -1;
}

long squarefree_part(long v) {
  long s = v < 0 ? -1 : 1;
  long n = v < 0 ? -v : v;
  long out = 1;
  for (long d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e % 2) out *= d;
  }
  return s * out * n;
}

}  // namespace

TEST_CASE("square classes over Q") {
  CHECK(SquareClass::of(Rational(18, 50)).is_one());
  CHECK(SquareClass::of(-12).representative() == -3);
  CHECK(SquareClass::of(Rational(-2, 3)).representative() == -6);
  CHECK(SquareClass::of(Rational(8, 7)) == SquareClass::of(14));
  CHECK_THROWS_AS(SquareClass::of(Rational(0)), Error);
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const long x = rng.nonzero(500), y = rng.nonzero(60);
    const auto c = SquareClass::of(Rational(x));
    CHECK(SquareClass::of(Rational(x) * y * y) == c);
    CHECK(SquareClass::of(Rational(c.representative())) == c);
    CHECK(c.representative() == squarefree_part(x));
  }
}

TEST_CASE("square classes over F_p") {
  const auto f7 = FieldSpec::prime_field(7);
  CHECK(SquareClass::of(Rational(3), f7).nonsquare());
  CHECK_FALSE(SquareClass::of(Rational(2), f7).nonsquare());
  CHECK((-SquareClass::one(f7)).nonsquare());  // 7 = 3 mod 4
  CHECK_FALSE((-SquareClass::one(FieldSpec::prime_field(13))).nonsquare());
  CHECK_THROWS_AS(SquareClass::of(Rational(14), f7), Error);
  CHECK_THROWS_AS(FieldSpec::prime_field(9), Error);
  CHECK_THROWS_AS(FieldSpec::prime_field(2), Error);
}

TEST_CASE("legendre symbol") {
  CHECK(legendre_symbol(2, 7) == 1);
  CHECK(legendre_symbol(3, 7) == -1);
  CHECK(legendre_symbol(14, 7) == 0);
  CHECK(legendre_symbol(-1, 13) == 1);
  try {
    legendre_symbol(3, 15);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvenOrCompositeModulus);
  }
  for (long p : {3L, 5L, 7L, 11L, 13L, 101L}) {
    std::set<long> squares;
    for (long x = 1; x < p; ++x) squares.insert(x * x % p);
    for (long a = -40; a <= 40; ++a) {
      const long r = ((a % p) + p) % p;
      const int expected = r == 0 ? 0 : (squares.count(r) ? 1 : -1);
      CHECK(legendre_symbol(a, p) == expected);
    }
  }
}

TEST_CASE("factorize") {
  auto f = factorize(360);
  CHECK(f.sign == 1);
  CHECK(f.primes == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
  f = factorize(-7);
  CHECK(f.sign == -1);
  CHECK(f.primes == std::vector<std::pair<std::uint64_t, unsigned>>{{7, 1}});
  CHECK(factorize(1).primes.empty());
  // Product of two primes near 10^6 stays within the default bound.
  f = factorize(Integer("999983") * 1000003);
  CHECK(f.primes.size() == 2);
  // A large prime cofactor beyond the bound is refused.
  CHECK_THROWS_AS(factorize(Integer("1000000000000000003"), kDefaultFactorBound), Error);
  // Smooth numbers beyond the bound are fine.
  CHECK(factorize(Integer(1) << 80).primes.front().second == 80);
  CHECK_THROWS_AS(factorize(1009 * 1013, 1000), Error);
}

TEST_CASE("hilbert symbol examples") {
  CHECK(hilbert_symbol(-1, -1, Place::real()) == -1);
  CHECK(hilbert_symbol(-1, -1, Place::prime(2)) == -1);
  CHECK(hilbert_symbol(2, 7, Place::prime(7)) == 1);
  CHECK(hilbert_symbol(3, 3, Place::prime(2)) == -1);
  CHECK(hilbert_symbol(2, 3, Place::prime(3)) == -1);
  CHECK_THROWS_AS(hilbert_symbol(0, 3, Place::prime(3)), Error);
}

TEST_CASE("hilbert symbol against a congruence search") {
  for (long p : {2L, 3L, 5L, 7L}) {
    for (long a = -15; a <= 15; ++a) {
      for (long b = -15; b <= 15; ++b) {
        if (a == 0 || b == 0) continue;
        const long sa = squarefree_part(a), sb = squarefree_part(b);
        CHECK_MESSAGE(hilbert_symbol(sa, sb, Place::prime(p)) == brute_hilbert(sa, sb, p),
                      "(" << sa << "," << sb << ")_" << p);
      }
    }
  }
}

TEST_CASE("hilbert symbol: symmetry, bimultiplicativity, reciprocity") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Rational a(rng.nonzero(300)), b(rng.nonzero(300)), c(rng.nonzero(300));
    for (std::uint64_t p : {0ULL, 2ULL, 3ULL, 5ULL, 7ULL, 11ULL}) {
      const Place v = p == 0 ? Place::real() : Place::prime(p);
      CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
      CHECK(hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v));
    }
  }
  for (int i = 0; i < 200; ++i) {
    const auto a = SquareClass::of(rng.nonzero(2000));
    const auto b = SquareClass::of(rng.nonzero(2000));
    int product = hilbert_symbol(a, b, 0);
    for (auto p : relevant_primes({a, b})) product *= hilbert_symbol(a, b, p);
    CHECK(product == 1);
  }
}

TEST_CASE("local squares") {
  CHECK(is_local_square(SquareClass::of(17), 2));
  CHECK_FALSE(is_local_square(SquareClass::of(5), 2));
  CHECK(is_local_square(SquareClass::of(-7), 2));
  CHECK(is_local_square(SquareClass::of(2), 7));
  CHECK_FALSE(is_local_square(SquareClass::of(3), 7));
  CHECK_FALSE(is_local_square(SquareClass::of(-1), 0));
}
