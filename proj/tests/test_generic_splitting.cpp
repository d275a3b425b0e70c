#include "doctest.h"
#include "generators.hpp"
#include "witt/error.hpp"
#include "witt/generic_splitting.hpp"

using namespace witt;

namespace {

const Polynomial T = Polynomial::variable();
Polynomial lin(long c) { return Polynomial::linear_root(Rational(c)); }
const Polynomial T2P1({Rational(1), Rational(0), Rational(1)});   // t^2 + 1
const Polynomial T2M2({Rational(-2), Rational(0), Rational(1)});  // t^2 - 2
const Polynomial T2T1({Rational(1), Rational(1), Rational(1)});   // t^2 + t + 1

FFEntry entry(long unit, std::map<Polynomial, int> f = {}) { return FFEntry(Rational(unit), std::move(f)); }

FunctionFieldForm form(std::vector<FFEntry> e) { return FunctionFieldForm(std::move(e)); }

bool witt_same(const WittClass& x, const QuadForm& y) { return witt_equal(x.anis(), y); }

FFEntry random_entry(Rng& rng, bool with_quadratics) {
  std::vector<Polynomial> pool{T, lin(1), lin(-2), lin(3)};
  if (with_quadratics) pool.insert(pool.end(), {T2P1, T2M2, T2T1});
  std::map<Polynomial, int> f;
  const long nf = rng.uniform(0, 2);
  for (long k = 0; k < nf; ++k) f[pool[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1))]] += static_cast<int>(rng.uniform(-1, 2));
  return FFEntry(Rational(rng.nonzero(12)), f);
}

FunctionFieldForm random_ff(Rng& rng, std::size_t max_dim, bool with_quadratics) {
  std::vector<FFEntry> e;
  const long n = rng.uniform(1, static_cast<long>(max_dim));
  for (long k = 0; k < n; ++k) e.push_back(random_entry(rng, with_quadratics));
  return form(e);
}

// Order of vanishing at t = c by repeated division.
int order_at(Polynomial p, const Rational& c, Rational& cofactor_value) {
  int k = 0;
  const Polynomial l = Polynomial::linear_root(c);
  while (true) {
    auto [q, r] = divmod(p, l);
    if (!r.is_zero()) break;
    p = q;
    ++k;
  }
  cofactor_value = p(c);
  return k;
}

// Residues computed from the expanded rational function, independent of the factor maps.
GroupRingElem residue_oracle(const FunctionFieldForm& q, const Place& v) {
  std::vector<Rational> first, second;
  for (const auto& a : q.entries()) {
    const RationalFunction f = a.value();
    int val;
    Rational u;
    if (v.kind == PlaceKind::Infinite) {
      val = f.den().degree() - f.num().degree();
      u = f.num().leading() / f.den().leading();
    } else {
      const Rational c = -v.pi.coeff(0);
      Rational un, ud;
      val = order_at(f.num(), c, un) - order_at(f.den(), c, ud);
      u = un / ud;
    }
    (val % 2 == 0 ? first : second).push_back(u);
  }
  return {WittClass(QuadForm::from_values(first)), WittClass(QuadForm::from_values(second))};
}

// Verdict of specializing q1 - q2 at five good points.
std::optional<Decision> specialization_oracle(const FunctionFieldForm& q1, const FunctionFieldForm& q2) {
  const FunctionFieldForm d = q1 + (-q2);
  const std::vector<Rational> candidates{Rational(2),     Rational(3),  Rational(5),  Rational(7),  Rational(1, 2),
                                         Rational(-3, 2), Rational(11), Rational(13), Rational(5, 3), Rational(17)};
  int used = 0;
  bool all_zero = true;
  for (const auto& c : candidates) {
    bool good = true;
    for (const auto& a : d.entries()) {
      const RationalFunction f = a.value();
      if (sgn(f.num()(c)) == 0 || sgn(f.den()(c)) == 0) good = false;
    }
    if (!good) continue;
    std::vector<Rational> vals;
    for (const auto& a : d.entries()) {
      const RationalFunction f = a.value();
      vals.push_back(f.num()(c) / f.den()(c));
    }
    if (!witt_equal(QuadForm::from_values(vals), QuadForm())) all_zero = false;
    if (++used == 5) break;
  }
  if (used < 5) return std::nullopt;
  return all_zero ? Decision::Equal : Decision::Distinct;
}

}  // namespace

TEST_CASE("residue examples") {
  const Place at_t = Place::poly(T);
  const GroupRingElem r = residue(form({entry(3, {{T, 1}})}), at_t);
  CHECK(witt_same(r.odd, QuadForm{3}));
  CHECK(r.even.is_zero());
  CHECK(witt_same(residue(form({entry(5)}), at_t).even, QuadForm{5}));
  const GroupRingElem inf = residue(form({entry(1, {{T, 1}})}), Place::infinite());
  CHECK(witt_same(inf.odd, QuadForm{1}));
  CHECK(inf.even.is_zero());
  CHECK_THROWS_AS(residue(form({entry(1, {{T2P1, 1}})}), Place::poly(T2P1)), Error);
}

TEST_CASE("residues agree with the Laurent expansion oracle") {
  Rng rng(101);
  const std::vector<Place> places{Place::poly(T), Place::poly(lin(1)), Place::poly(lin(-2)), Place::infinite()};
  for (int n = 0; n < 220; ++n) {
    const FunctionFieldForm q = random_ff(rng, 4, true);
    for (const auto& v : places) {
      const GroupRingElem got = residue(q, v), want = residue_oracle(q, v);
      REQUIRE_MESSAGE(got == want, q.to_string() << " at " << v.to_string());
    }
  }
}

TEST_CASE("residue additivity, uniformizer change and multiplicativity") {
  Rng rng(202);
  const std::vector<Place> places{Place::poly(T), Place::poly(lin(1)), Place::infinite()};
  for (int n = 0; n < 220; ++n) {
    const FunctionFieldForm q1 = random_ff(rng, 3, true), q2 = random_ff(rng, 3, true);
    const Place& v = places[static_cast<std::size_t>(n) % places.size()];
    CHECK(residue(q1 + q2, v) == residue(q1, v) + residue(q2, v));
    CHECK(residue(q1 * q2, v) == residue(q1, v) * residue(q2, v));

    // pi' = pi w with w a unit at v; the first residue is unchanged and the
    // second is scaled by the reduction of w.
    const long wu = rng.nonzero(7);
    const int we = static_cast<int>(rng.uniform(-1, 1));
    FFEntry w = entry(wu, {{T2P1, we}});
    Rational wbar;
    if (v.kind == PlaceKind::Infinite) {
      w = w * entry(1, {{lin(-2), 1}, {T, -1 - 2 * we}});
      wbar = w.unit();
    } else {
      wbar = w.eval(-v.pi.coeff(0));
    }
    const GroupRingElem base = residue(q1, v), moved = residue(q1, v, natural_uniformizer(v) * w);
    CHECK(moved.even == base.even);
    CHECK(moved.odd == WittClass(base.odd.anis().scaled(SquareClass::of(wbar))));
  }
}

TEST_CASE("second residues at quadratic places") {
  const Place v = Place::poly(T2P1);
  const FFEntry pi = entry(1, {{T2P1, 1}});
  // theta and 2: -2 theta = (1 - theta)^2 in Q(i).
  CHECK(second_residue_vanishes(form({pi * entry(1, {{T, 1}}), pi * entry(2)}), v) == Decision::Equal);
  CHECK(second_residue_vanishes(form({pi, pi}), v) == Decision::Equal);  // -1 is a square in Q(i)
  CHECK(second_residue_vanishes(form({pi, pi * entry(2)}), v) == Decision::Distinct);
  CHECK(second_residue_vanishes(form({pi}), v) == Decision::Distinct);
  CHECK(second_residue_vanishes(form({entry(3)}), v) == Decision::Equal);
  const FFEntry rho = entry(1, {{T2M2, 1}});
  CHECK(second_residue_vanishes(form({rho, rho}), Place::poly(T2M2)) == Decision::Distinct);  // real signature 2
  CHECK(second_residue_vanishes(form({rho, -rho}), Place::poly(T2M2)) == Decision::Equal);

  const QuadraticResidue r = residue_quadratic(form({pi * entry(1, {{T, 1}}), entry(5)}), v);
  REQUIRE(r.second.size() == 1);
  CHECK(r.second[0].x == 0);
  CHECK(r.second[0].y == 1);
  REQUIRE(r.first.size() == 1);
  CHECK(r.first[0].x == 5);
}

TEST_CASE("Witt equality over Q(t) examples") {
  CHECK(kt_witt_equal(form({entry(1, {{T, 1}}), entry(-1, {{T, 1}})}), FunctionFieldForm()));
  CHECK_FALSE(kt_witt_equal(form({entry(1, {{T, 1}})}), form({entry(1)})));
  CHECK(kt_witt_equal(form({entry(2, {{T, 2}})}), form({entry(2)})));
  // <1,1> represents 1 + t^2.
  CHECK(kt_witt_equal(form({entry(1), entry(1)}), form({entry(1, {{T2P1, 1}}), entry(1, {{T2P1, 1}})})));
  CHECK_FALSE(kt_witt_equal(form({entry(1), entry(1)}), form({entry(1, {{T, 1}}), entry(1, {{T, 1}})})));
  CHECK(good_specialization_point(form({entry(1, {{T, 1}}), entry(1, {{lin(1), 1}})})) == 2);
}

TEST_CASE("Witt equality over Q(t) agrees with specialization at five points") {
  Rng rng(303);
  int decided = 0, equal = 0, distinct = 0;
  for (int n = 0; n < 400 && decided < 160; ++n) {
    const FunctionFieldForm q = random_ff(rng, 3, n % 3 == 0);
    std::vector<FFEntry> e = q.entries();
    const int kind = static_cast<int>(rng.uniform(0, 3));
    if (kind == 0) {
      std::reverse(e.begin(), e.end());
      e.front() = e.front() * entry(rng.nonzero(5), {{lin(3), 1}}).pow(2);
    } else if (kind == 1) {
      e.push_back(random_entry(rng, false));
      e.push_back(-e.back());
      std::swap(e.front(), e.back());
    } else if (kind == 2) {
      // <f, f> = <f s, f s> for s = 1 + t^2.
      e.push_back(e.front() * entry(1, {{T2P1, 1}}));
      e.push_back(e.front() * entry(1, {{T2P1, 1}}));
    } else {
      e.front() = e.front() * entry(1, {{T, 1}});
    }
    const FunctionFieldForm q2 = form(e);
    const FunctionFieldForm q1 = kind == 2 ? q + form({q.entries().front(), q.entries().front()}) : q;
    const Decision d = kt_witt_decide(q1, q2);
    if (d == Decision::Unknown) continue;
    const auto oracle = specialization_oracle(q1, q2);
    if (!oracle) continue;
    ++decided;
    (d == Decision::Equal ? equal : distinct)++;
    REQUIRE_MESSAGE(d == *oracle, q1.to_string() << " vs " << q2.to_string());
  }
  CHECK(decided >= 100);
  CHECK(equal >= 30);
  CHECK(distinct >= 30);
}

TEST_CASE("W0 membership") {
  CHECK(w0_membership(form({entry(2), entry(3)}), {Place::poly(T), Place::infinite()}));
  CHECK_FALSE(w0_membership(form({entry(1, {{T, 1}})}), {Place::poly(T)}));
  CHECK(w0_membership(form({entry(1, {{T, 1}}), entry(-1, {{T, 1}})}), {Place::poly(T)}));
}

TEST_CASE("conic parametrization") {
  const ConicData c = conic_parametrize(QuatAlgebra(1, 1));
  CHECK(c.x0 == 1);
  CHECK(c.y0 == 0);
  const Polynomial den({Rational(1), Rational(0), Rational(1)});
  CHECK(c.x == RationalFunction(Polynomial({Rational(1), Rational(0), Rational(-1)}), den));
  CHECK(c.y == RationalFunction(Polynomial({Rational(0), Rational(2)}), den));
  for (const auto& [a, b] : std::vector<std::pair<long, long>>{{1, 1}, {2, 7}, {3, -3}, {5, 1}, {-1, 1}, {2, -1}, {7, 2}}) {
    const QuatAlgebra alg(a, b);
    const ConicData k = conic_parametrize(alg);
    CHECK(k.delta().is_zero());
    const FunctionQuaternion w = k.omega();
    CHECK((w * w).is_zero());
    CHECK(Rational(a) * k.x0 * k.x0 + Rational(b) * k.y0 * k.y0 == Rational(a * b));
  }
  CHECK_THROWS_AS(conic_parametrize(QuatAlgebra(-1, -1)), Error);
}

TEST_CASE("psi examples") {
  const QuatAlgebra alg(1, 1);
  const ConicData c = conic_parametrize(alg);
  CHECK(kt_is_zero(psi_split(MixedClass::even_part(alg, norm_forms(alg).n_q), c)));
  const Quaternion ij = Quaternion::pure(alg, 0, 0, 1);
  const FunctionFieldForm p = psi_split(MixedClass::odd_part(AntiHermForm(alg, {ij})), c);
  CHECK(kt_witt_equal(p, form({entry(2), entry(2)})));
  CHECK(kt_is_zero(psi_split(psi_kernel_generator(alg), c)));
  CHECK_FALSE(kt_is_zero(psi_split(MixedClass::one(alg), c)));
  CHECK_FALSE(kt_is_zero(p));
  // Restricted to W(k), psi is scalar extension.
  const QuadForm q{3, -5, 7};
  CHECK(kt_witt_equal(psi_split(MixedClass::even_part(alg, q), c), FunctionFieldForm::constant(q)));
}

TEST_CASE("psi lands in W0 and is multiplicative") {
  Rng rng(404);
  int w0_decided = 0, mult_decided = 0;
  for (const auto& [a, b] : std::vector<std::pair<long, long>>{{1, 1}, {2, 7}, {3, -3}, {5, 1}}) {
    const QuatAlgebra alg(a, b);
    const ConicData c = conic_parametrize(alg);
    for (int n = 0; n < 60; ++n) {
      const MixedClass x = testgen::random_mixed(alg, rng);
      const FunctionFieldForm px = psi_split(x, c);
      const Decision w0 = w0_decide(px, c.affine_places(px));
      REQUIRE_MESSAGE(w0 != Decision::Distinct, x.to_string());
      if (w0 == Decision::Equal) ++w0_decided;
      if (n % 2 == 0) {
        const MixedClass y = testgen::random_mixed(alg, rng);
        const Decision d = kt_witt_decide(psi_split(x * y, c), px * psi_split(y, c));
        REQUIRE_MESSAGE(d != Decision::Distinct, x.to_string() << " * " << y.to_string());
        if (d == Decision::Equal) ++mult_decided;
      }
    }
  }
  CHECK(w0_decided >= 200);
  CHECK(mult_decided >= 100);
}

TEST_CASE("psi kernel on curated split elements") {
  for (const auto& [a, b] : std::vector<std::pair<long, long>>{{1, 1}, {2, 7}, {3, -3}}) {
    const QuatAlgebra alg(a, b);
    const ConicData c = conic_parametrize(alg);
    const MixedClass g = psi_kernel_generator(alg);
    const MixedClass nq = MixedClass::even_part(alg, norm_forms(alg).n_q);
    const std::vector<std::pair<MixedClass, MixedClass>> kernel{
        {g, g}, {g + g, g + g}, {g.scaled(QuadForm{3}), g.scaled(QuadForm{3})}, {g + nq, g}, {nq, MixedClass(alg)}};
    for (const auto& [x, multiple] : kernel) {
      REQUIRE(kt_is_zero(psi_split(x, c)));
      CHECK(mixed_equal(x, multiple) != Decision::Distinct);
    }
    CHECK_FALSE(kt_is_zero(psi_split(MixedClass::one(alg), c)));
    // psi<z> = <-T> <<z^2>> vanishes exactly when z^2 is a square.
    for (const auto& z : pairing_probes(alg)) {
      const Rational z2 = pure_square(z);
      const bool square = sgn(z2) > 0 && SquareClass::of(z2).is_one();
      CHECK(kt_is_zero(psi_split(MixedClass::odd_part(AntiHermForm(alg, {z})), c)) == square);
    }
  }
}

TEST_CASE("function field entries") {
  CHECK_THROWS_AS(FFEntry::factor(Polynomial({Rational(-1), Rational(0), Rational(1)}), 1, true), Error);
  CHECK_THROWS_AS(entry(0), Error);
  const FFEntry e = FFEntry::factor(Polynomial({Rational(2), Rational(0), Rational(2)}), 1, true);
  CHECK(e.unit() == 2);
  CHECK(e.factors().at(T2P1) == 1);
  const FFEntry f = FFEntry::from_function(RationalFunction(Polynomial({Rational(-6), Rational(0), Rational(6)}), T));
  CHECK(f.valuation(Place::poly(T)) == -1);
  CHECK(f.valuation(Place::infinite()) == -1);
  CHECK(f.value() == RationalFunction(Polynomial({Rational(-6), Rational(0), Rational(6)}), T));
  CHECK_THROWS_AS(FFEntry::from_function(RationalFunction(Polynomial({Rational(1), Rational(0), Rational(0), Rational(0), Rational(1)}))), Error);
}
