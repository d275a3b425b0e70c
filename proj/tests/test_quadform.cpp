#include <cmath>

#include "doctest.h"
#include "witt/error.hpp"
#include "witt/quadform.hpp"
#include "witt/random.hpp"

using namespace witt;

namespace {

QuadForm random_form(Rng& rng, int dim, long bound) {
  std::vector<Rational> v;
  for (int i = 0; i < dim; ++i) v.emplace_back(rng.nonzero(bound));
  return QuadForm::from_values(v);
}

// Search for a nonzero integer zero of sum a_i x_i^2 with |x_i| <= bound.
bool brute_isotropic(const std::vector<long>& a, long bound) {
  const std::size_t n = a.size();
  std::vector<long> x(n, -bound);
  // Fix the last nonzero coordinate positive by symmetry; enumerate the rest.
  while (true) {
    bool nonzero = false;
    long long s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      nonzero |= x[i] != 0;
      s += static_cast<long long>(a[i]) * x[i] * x[i];
    }
    if (nonzero && s == 0) return true;
    std::size_t k = 0;
    while (k < n && x[k] == bound) x[k++] = -bound;
    if (k == n) return false;
    ++x[k];
  }
}

}  // namespace

TEST_CASE("diagonalize") {
  auto q = diagonalize({{0, 1}, {1, 0}});
  CHECK(witt_equal(q, QuadForm{1, -1}));
  CHECK(is_hyperbolic(q));
  q = diagonalize({{2, 0}, {0, 3}});
  CHECK(q.sorted().entries() == QuadForm{2, 3}.sorted().entries());
  q = diagonalize({{1, 1}, {1, 2}});
  CHECK(q.entries() == QuadForm{1, 1}.entries());
  CHECK_THROWS_AS(diagonalize({{1, 2}, {3, 4}}), Error);
  CHECK_THROWS_AS(diagonalize({{1, 1}, {1, 1}}), Error);
  CHECK_THROWS_AS(diagonalize({{0, 0}, {0, 0}}), Error);
  // Over F_7: [[0,1],[1,0]] is hyperbolic.
  const auto f7 = FieldSpec::prime_field(7);
  CHECK(is_hyperbolic(diagonalize({{0, 1}, {1, 0}}, f7)));
}

TEST_CASE("diagonalization preserves the class") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng.uniform(1, 4));
    Matrix g(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) g[i][j] = g[j][i] = rng.uniform(-6, 6);
    QuadForm q;
    try {
      q = diagonalize(g);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateForm);
      continue;
    }
    // Determinant agrees up to squares with the product of the pivots.
    CHECK(q.dim() == static_cast<std::size_t>(n));
    // Rediagonalizing after a permutation of the basis gives a Witt-equal form.
    Matrix h(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h[i][j] = g[n - 1 - i][n - 1 - j];
    CHECK(witt_equal(q, diagonalize(h)));
  }
}

TEST_CASE("invariants") {
  auto inv = witt_invariants(QuadForm{1, 1, 1, 1});
  CHECK(inv.dim == 4);
  CHECK(inv.signed_disc.is_one());
  CHECK(*inv.signature == 4);
  for (auto [p, h] : inv.hasse) CHECK(h == 1);
  inv = witt_invariants(QuadForm{1, -1});
  CHECK(inv.signed_disc.is_one());
  CHECK(*inv.signature == 0);
  const auto f7 = FieldSpec::prime_field(7);
  inv = witt_invariants(QuadForm::from_values({2, 3}, f7));
  CHECK(inv.signed_disc.is_one());
  CHECK_FALSE(inv.signature.has_value());
}

TEST_CASE("witt_equal examples") {
  CHECK(is_hyperbolic(QuadForm{2, 2, -2, -2}));
  CHECK_FALSE(is_hyperbolic(QuadForm{1, 1, 1, 1}));
  CHECK(witt_equal(QuadForm{1, 1}, QuadForm{2, 2}));
  CHECK_FALSE(witt_equal(QuadForm{1, 1}, QuadForm{3, 3}));
  CHECK_FALSE(witt_equal(QuadForm{1}, QuadForm{2}));
  CHECK_FALSE(witt_equal(QuadForm{1, 1, 1}, QuadForm{3, 3, 3}));  // discriminants 1 and 3
  CHECK(witt_equal(QuadForm{1, 1, 1, 1}, QuadForm{3, 3, 3, 3}));  // round form representing 3
  CHECK_THROWS_AS(witt_equal(QuadForm{1}, QuadForm::from_values({1}, FieldSpec::prime_field(5))), Error);
  const auto f5 = FieldSpec::prime_field(5);
  CHECK(is_hyperbolic(QuadForm::from_values({1, 1}, f5)));  // -1 is a square mod 5
  CHECK_FALSE(is_hyperbolic(QuadForm::from_values({1, 1}, FieldSpec::prime_field(7))));
}

TEST_CASE("witt_equal is an equivalence invariant under permutation and square scaling") {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto q = random_form(rng, static_cast<int>(rng.uniform(1, 5)), 30);
    const auto r = random_form(rng, static_cast<int>(rng.uniform(1, 5)), 30);
    CHECK(witt_equal(q, q));
    CHECK(witt_equal(q, r) == witt_equal(r, q));
    CHECK(is_hyperbolic(q + (-q)));
    std::vector<Rational> scaled;
    for (const auto& e : q.entries()) {
      const long s = rng.nonzero(9);
      scaled.push_back(e.value() * s * s);
    }
    std::reverse(scaled.begin(), scaled.end());
    CHECK(witt_equal(q, QuadForm::from_values(scaled)));
    const auto s = q + r + hyperbolic(1);
    CHECK(witt_equal(s, q + r));
  }
}

TEST_CASE("isotropy agrees with a bounded zero search") {
  Rng rng(17);
  int agree = 0;
  for (int i = 0; i < 120; ++i) {
    const int n = static_cast<int>(rng.uniform(2, 3));
    std::vector<long> a;
    std::vector<Rational> v;
    for (int k = 0; k < n; ++k) {
      a.push_back(rng.nonzero(20));
      v.emplace_back(a.back());
    }
    const bool predicted = is_isotropic(QuadForm::from_values(v));
    const bool found = brute_isotropic(a, n == 2 ? 40 : 30);
    // A found zero is a proof; a predicted zero of small forms lies within the box here.
    CHECK(predicted == found);
    agree += predicted == found;
  }
  CHECK(agree == 120);
}

TEST_CASE("anisotropic kernel") {
  Rng rng(23);
  CHECK(anisotropic_kernel(QuadForm{1, -1, 2, -2}).empty());
  CHECK(anisotropic_kernel(QuadForm{1, 1, -2, -2}).empty());
  CHECK(anisotropic_kernel(QuadForm{1, 1, 1, 1, -1}).dim() == 3);
  for (int i = 0; i < 300; ++i) {
    const auto q = random_form(rng, static_cast<int>(rng.uniform(1, 7)), 40);
    const auto k = anisotropic_kernel(q);
    CHECK(witt_equal(k, q));
    CHECK_FALSE(is_isotropic(k));
    CHECK((q.dim() - k.dim()) % 2 == 0);
  }
  const auto f7 = FieldSpec::prime_field(7);
  CHECK(anisotropic_kernel(QuadForm::from_values({1, 1, 1}, f7)).dim() == 1);
  CHECK(anisotropic_kernel(QuadForm::from_values({1, 1}, f7)).dim() == 2);
  CHECK(anisotropic_kernel(QuadForm::from_values({1, 3}, f7)).empty());
}

TEST_CASE("pfister forms") {
  CHECK(pfister(std::vector<Rational>{-1, -1}).entries() == QuadForm{1, 1, 1, 1}.entries());
  CHECK(pfister(std::vector<Rational>{1}).entries() == QuadForm{1, -1}.entries());
  CHECK(pfister(std::vector<Rational>{-1, 2}).entries() == QuadForm{1, 1, -2, -2}.entries());
  CHECK_THROWS_AS(pfister(std::vector<Rational>{0, 2}), Error);
  // Roundness: <c> pi = pi for values c represented by pi.
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    const long a = rng.nonzero(12), b = rng.nonzero(12);
    const auto pi = pfister(std::vector<Rational>{a, b});
    const long x = rng.uniform(-5, 5), y = rng.uniform(-5, 5), z = rng.uniform(-5, 5), w = rng.uniform(-5, 5);
    const Rational c = Rational(x * x) - a * y * y - b * z * z + a * b * w * w;
    if (sgn(c) == 0) continue;
    CHECK(witt_equal(pi.scaled(SquareClass::of(c)), pi));
  }
}

TEST_CASE("lambda on quadratic forms") {
  const auto q = QuadForm{2, 3, 5};
  CHECK(lambda_quad(2, q).sorted().entries() == QuadForm{6, 10, 15}.sorted().entries());
  CHECK(lambda_quad(3, QuadForm{1, 2, 3}).entries() == QuadForm{6}.entries());
  CHECK(lambda_quad(0, QuadForm{5}).entries() == QuadForm{1}.entries());
  CHECK(lambda_quad(1, q).entries() == q.entries());
  CHECK_THROWS_AS(lambda_quad(4, q), Error);
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_form(rng, static_cast<int>(rng.uniform(1, 3)), 15);
    const auto b = random_form(rng, static_cast<int>(rng.uniform(1, 3)), 15);
    const std::size_t d = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(a.dim() + b.dim())));
    QuadForm sum;
    for (std::size_t k = 0; k <= d; ++k) {
      if (k > a.dim() || d - k > b.dim()) continue;
      sum += lambda_quad(k, a) * lambda_quad(d - k, b);
    }
    CHECK(witt_equal(lambda_quad(d, a + b), sum));
  }
}

TEST_CASE("group ring delta") {
  const GroupRingElem x{WittClass(QuadForm{1}), WittClass(QuadForm{1})};
  CHECK(group_ring_delta(x) == WittClass(QuadForm{1, 1}));
  const GroupRingElem y{WittClass(QuadForm{1}), WittClass(QuadForm{-1})};
  CHECK(group_ring_delta(y).is_zero());
  Rng rng(37);
  for (int i = 0; i < 100; ++i) {
    const GroupRingElem a{WittClass(random_form(rng, 2, 10)), WittClass(random_form(rng, 1, 10))};
    const GroupRingElem b{WittClass(random_form(rng, 1, 10)), WittClass(random_form(rng, 2, 10))};
    CHECK(group_ring_delta(a * b) == group_ring_delta(a) * group_ring_delta(b));
  }
}
