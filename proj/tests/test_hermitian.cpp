#include "doctest.h"
#include "witt/hermitian.hpp"

using namespace witt;

namespace {

const QuatAlgebra H(-1, -1);
const QuatAlgebra M(1, 1);
const QuatAlgebra S27(2, 7);

Quaternion q(const QuatAlgebra& alg, long c0, long c1, long c2, long c3) { return Quaternion(alg, {c0, c1, c2, c3}); }

// gamma(U)^T G U must be the diagonal of the result.
void check_certificate(const QuatMatrix& gram, const HermDiagonalization& d) {
  const auto& z = d.form.entries();
  REQUIRE(d.basis.size() == z.size());
  for (std::size_t k = 0; k < z.size(); ++k)
    for (std::size_t l = 0; l < z.size(); ++l) {
      const Quaternion v = herm_eval(gram, d.basis[k], d.basis[l]);
      if (k == l)
        CHECK(v == z[k]);
      else
        CHECK(v.is_zero());
    }
}

QuatMatrix random_skew_gram(const QuatAlgebra& alg, Rng& rng, std::size_t n) {
  QuatMatrix g(n, QuatVector(n, Quaternion(alg)));
  for (std::size_t k = 0; k < n; ++k) {
    g[k][k] = Quaternion::pure(alg, rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3));
    for (std::size_t l = k + 1; l < n; ++l) {
      g[k][l] = Quaternion(alg, {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)});
      g[l][k] = -g[k][l].conj();
    }
  }
  return g;
}

}  // namespace

TEST_CASE("diagonalization examples") {
  const auto i = q(H, 0, 1, 0, 0);
  auto d = herm_diagonalize({{i}});
  CHECK(d.form.entries() == std::vector<Quaternion>{i});
  const QuatMatrix g{{q(H, 0, 0, 0, 0), q(H, 1, 0, 0, 0)}, {q(H, -1, 0, 0, 0), q(H, 0, 0, 0, 0)}};
  d = herm_diagonalize(g);
  CHECK(d.form.rank() == 2);
  check_certificate(g, d);
}

TEST_CASE("diagonalization rejects bad input") {
  const QuatMatrix bad{{q(H, 1, 0, 0, 0)}};
  try {
    herm_diagonalize(bad);
    FAIL("expected NonSkewHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSkewHermitian);
  }
  const QuatMatrix zero{{Quaternion(H), Quaternion(H)}, {Quaternion(H), Quaternion(H)}};
  try {
    herm_diagonalize(zero);
    FAIL("expected DegenerateForm");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateForm);
  }
}

TEST_CASE("diagonalization certificates on random Gram matrices") {
  Rng rng(7);
  int done = 0;
  for (const auto& alg : {H, M, S27}) {
    for (int n = 0; n < 60; ++n) {
      const auto g = random_skew_gram(alg, rng, 2 + static_cast<std::size_t>(n % 3));
      try {
        const auto d = herm_diagonalize(g);
        check_certificate(g, d);
        ++done;
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateForm);
      }
    }
  }
  CHECK(done > 100);
}

TEST_CASE("hermitian invariants") {
  const auto i = q(H, 0, 1, 0, 0), j = q(H, 0, 0, 1, 0);
  auto inv = herm_invariants(AntiHermForm(H, {i}));
  CHECK(inv.reduced_dim == 2);
  CHECK(inv.disc.is_one());
  inv = herm_invariants(AntiHermForm(H, {i, j}));
  CHECK(inv.reduced_dim == 4);
  CHECK(inv.disc.is_one());
  inv = herm_invariants(AntiHermForm(H, {i + j}));
  CHECK(inv.disc == SquareClass::of(2));
  CHECK_THROWS_AS(AntiHermForm(H, {q(H, 1, 1, 0, 0)}), Error);
}

TEST_CASE("ternary equations") {
  CHECK_FALSE(solve_ternary(1, 1, 3).has_value());
  Rng rng(3);
  int solved = 0;
  for (int n = 0; n < 300; ++n) {
    const Rational a = make_rational(rng.nonzero(30), rng.uniform(1, 4)), b(rng.nonzero(30)),
                   c = make_rational(rng.nonzero(30), rng.uniform(1, 3));
    const bool local = is_isotropic(QuadForm::from_values({a, b, -c}));
    const auto sol = solve_ternary(a, b, c);
    CHECK(sol.has_value() == local);
    if (sol) {
      const auto& [x, y, z] = *sol;
      CHECK(sgn(z) != 0);
      CHECK(a * x * x + b * y * y == c * z * z);
      ++solved;
    }
  }
  CHECK(solved > 50);
}

TEST_CASE("congruence solutions") {
  Rng rng(5);
  for (const auto& alg : {H, M, S27}) {
    for (int n = 0; n < 100; ++n) {
      const auto z = random_pure(alg, rng, 3);
      const auto u = random_unit(alg, rng, 3);
      const auto w = u.conj() * z * u;
      const auto sol = solve_congruence(z, w);
      REQUIRE(sol.has_value());
      CHECK(sol->conj() * z * *sol == w);
    }
  }
  // <i + j + ij> represents only norms 3 * squares up to sign; 1 is not reached.
  const auto w = q(H, 0, 1, 1, 1);
  CHECK_FALSE(solve_congruence(w, q(H, 0, 1, 0, 0)).has_value());
}

TEST_CASE("hyperbolicity certificates") {
  const auto i = q(H, 0, 1, 0, 0), j = q(H, 0, 0, 1, 0), ij = q(H, 0, 0, 0, 1);
  auto check_hyp = [](const AntiHermForm& h) {
    const auto r = hyperbolicity_certificate(h, 8);
    CHECK(r.status == HyperbolicityStatus::Hyperbolic);
    if (r.status == HyperbolicityStatus::Hyperbolic) CHECK(verify_isotropic_witness(h.gram(), r.witness, h.rank() / 2));
  };
  check_hyp(AntiHermForm(H, {i, -i}));
  check_hyp(AntiHermForm(H, {i, i}));
  check_hyp(AntiHermForm(H, {i, -i, j, -j}));
  for (const auto& z : {i, i + j, i + j + ij}) check_hyp(AntiHermForm(H, {z, z, z, z}));
  Rng rng(11);
  for (const auto& alg : {H, S27}) {
    for (int n = 0; n < 30; ++n) {
      const auto z = random_pure(alg, rng, 4);
      check_hyp(AntiHermForm(alg, {z, -z}));
    }
  }
  const auto w = i + j + ij;
  CHECK(pair_is_hyperbolic(w, w) == std::optional<bool>(false));
  CHECK(hyperbolicity_certificate(AntiHermForm(H, {w, w})).status == HyperbolicityStatus::AnisotropicAtBound);
  CHECK(hyperbolicity_certificate(AntiHermForm(H, {i})).status == HyperbolicityStatus::Unknown);
  CHECK(hyperbolicity_certificate(AntiHermForm(H)).status == HyperbolicityStatus::Hyperbolic);
}

TEST_CASE("transfer along a nilpotent") {
  const auto z0 = q(M, 0, 1, 0, 1);
  CHECK(is_hyperbolic(morita_transfer(q(M, 0, 0, 1, 0), z0)));
  CHECK(witt_equal(morita_transfer(q(M, 0, 0, 0, 1), z0), QuadForm{2, 2}));
  CHECK(is_hyperbolic(morita_transfer(q(M, 0, 1, 0, 0), z0)));
  Rng rng(13);
  for (const auto& alg : {M, S27}) {
    const auto n0 = find_nilpotent(alg);
    for (int n = 0; n < 100; ++n) {
      const auto z = random_pure(alg, rng, 5);
      CHECK(witt_equal(morita_transfer(z, n0), morita_closed_form(z, n0)));
    }
  }
  try {
    morita_transfer(q(M, 0, 0, 1, 0), q(M, 0, 1, 0, 0));
    FAIL("expected NotNilpotent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNilpotent);
  }
  try {
    morita_transfer(q(H, 0, 0, 1, 0), q(H, 0, 1, 0, 0));
    FAIL("expected NotSplit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSplit);
  }
}

TEST_CASE("transfer respects isometries, sums and determinants") {
  Rng rng(17);
  for (const auto& alg : {M, S27, QuatAlgebra(3, -2)}) {
    REQUIRE(is_split(alg));
    const auto z0 = find_nilpotent(alg);
    for (int n = 0; n < 200; ++n) {
      const auto z = random_pure(alg, rng, 4);
      const auto u = random_unit(alg, rng, 3);
      const auto moved = u.conj() * z * u;
      CHECK(witt_equal(morita_transfer(moved, z0), morita_transfer(z, z0)));
      const auto w = random_pure(alg, rng, 4);
      const AntiHermForm h(alg, {z, w});
      const auto t = morita_transfer(h, z0);
      CHECK(t.dim() == 4);
      CHECK(witt_equal(t, morita_transfer(z, z0) + morita_transfer(w, z0)));
      SquareClass det = SquareClass::one();
      for (const auto& c : t.entries()) det = det * c;
      CHECK(det == herm_invariants(h).disc);
    }
  }
}

TEST_CASE("proportional reduction") {
  CHECK(reduce_proportional(AntiHermForm(H, {q(H, 0, 1, 0, 0), q(H, 0, -1, 0, 0)})).empty());
  CHECK(reduce_proportional(AntiHermForm(H, {q(H, 0, 2, 0, 0), q(H, 0, -3, 0, 0), q(H, 0, 0, 1, 0)})).rank() == 3);
  const auto r = reduce_proportional(AntiHermForm(H, {q(H, 0, 1, 1, 0), q(H, 0, 4, 4, 0)}));
  REQUIRE(r.rank() == 2);
  CHECK(r.entries()[0] == r.entries()[1]);
  // Split algebras: the transfer sees no difference.
  Rng rng(23);
  for (const auto& alg : {M, S27}) {
    const auto z0 = find_nilpotent(alg);
    for (int n = 0; n < 100; ++n) {
      std::vector<Quaternion> d;
      const auto z = random_pure(alg, rng, 3), w = random_pure(alg, rng, 3);
      for (int k = 0; k < 5; ++k) d.push_back((rng.coin() ? z : w).scaled(Rational(rng.nonzero(6))));
      const AntiHermForm h(alg, d);
      CHECK(witt_equal(morita_transfer(reduce_proportional(h), z0), morita_transfer(h, z0)));
    }
  }
}

TEST_CASE("certificates split across proportional classes") {
  const Quaternion i = q(H, 0, 1, 0, 0), j = q(H, 0, 0, 1, 0), ij = q(H, 0, 0, 0, 1);
  const QuadForm nq{1, 1, 1, 1};
  const AntiHermForm h = AntiHermForm(H, {i}).scaled(nq) + AntiHermForm(H, {j + ij}).scaled(nq);
  const auto res = hyperbolicity_certificate(h, 8);
  REQUIRE(res.status == HyperbolicityStatus::Hyperbolic);
  CHECK(verify_isotropic_witness(h.gram(), res.witness, 4));
  const AntiHermForm lit(H, {i, i, i, -i});
  const auto lres = hyperbolicity_certificate(lit, 8);
  REQUIRE(lres.status == HyperbolicityStatus::Hyperbolic);
  CHECK(verify_isotropic_witness(lit.gram(), lres.witness, 2));
}
