#include "witt/generic_splitting.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "witt/error.hpp"
#include "witt/hermitian.hpp"

namespace witt {

namespace {

bool is_rational_square(const Rational& r) {
  if (sgn(r) < 0) return false;
  return mpz_perfect_square_p(r.get_num_mpz_t()) != 0 && mpz_perfect_square_p(r.get_den_mpz_t()) != 0;
}

Rational rational_sqrt(const Rational& r) {
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  return make_rational(n, d);
}

std::optional<Polynomial> poly_sqrt(const Polynomial& p) {
  if (p.is_zero()) return Polynomial();
  if (p.degree() % 2 != 0 || !is_rational_square(p.leading())) return std::nullopt;
  const int k = p.degree() / 2;
  std::vector<Rational> s(k + 1);
  s[k] = rational_sqrt(p.leading());
  for (int i = k - 1; i >= 0; --i) {
    Rational acc = p.coeff(static_cast<std::size_t>(k + i));
    for (int j = i + 1; j <= k; ++j) {
      const int l = k + i - j;
      if (l > i && l <= k) acc -= s[j] * s[l];
    }
    s[i] = acc / (2 * s[k]);
  }
  Polynomial root(s);
  if (root * root != p) return std::nullopt;
  return root;
}

bool is_square_function(const RationalFunction& f) {
  if (f.is_zero()) return false;
  return poly_sqrt(f.num() * f.den()).has_value();
}

void require_rational_function_field_place(const Place& v) {
  if (v.kind != PlaceKind::Poly && v.kind != PlaceKind::Infinite) {
    fail(ErrorCode::UnsupportedField, "place " + v.to_string() + " is not a place of Q(t)");
  }
  if (v.kind == PlaceKind::Poly && (v.pi.degree() < 1 || v.pi.leading() != 1)) {
    fail(ErrorCode::UnsupportedResidueField, "place polynomial must be monic of positive degree");
  }
}

// Arithmetic in Q[t]/(t^2 + p t + q).
struct QuadraticField {
  Rational p, q;

  explicit QuadraticField(const Polynomial& f) : p(f.coeff(1)), q(f.coeff(0)) {}

  Rational disc() const { return p * p - 4 * q; }
  QuadraticElem reduce(const Polynomial& g, const Polynomial& f) const {
    const Polynomial r = remainder(g, f);
    return {r.coeff(0), r.coeff(1)};
  }
  QuadraticElem mul(const QuadraticElem& u, const QuadraticElem& w) const {
    return {u.x * w.x - q * u.y * w.y, u.x * w.y + w.x * u.y - p * u.y * w.y};
  }
  Rational norm(const QuadraticElem& u) const { return u.x * u.x - p * u.x * u.y + q * u.y * u.y; }
  Rational trace(const QuadraticElem& u) const { return 2 * u.x - p * u.y; }
  QuadraticElem inverse(const QuadraticElem& u) const {
    const Rational n = norm(u);
    return {(u.x - p * u.y) / n, -u.y / n};
  }
  bool is_square(const QuadraticElem& u) const {
    const Rational n2 = norm(u);
    if (is_rational_square(n2)) {
      const Rational n = rational_sqrt(n2);
      // beta^2 = u with Nrd beta = +-n forces Tr(beta)^2 = Tr(u) + 2 Nrd(beta).
      for (const Rational& m : {n, Rational(-n)}) {
        const Rational s2 = trace(u) + 2 * m;
        if (sgn(s2) != 0 && is_rational_square(s2)) return true;
      }
    }
    // Trace-zero roots c sqrt(D) square to c^2 D.
    return sgn(u.y) == 0 && is_rational_square(u.x / disc());
  }
  // Signs of u under the two real embeddings theta -> (-p +- sqrt D)/2.
  std::pair<int, int> real_signs(const QuadraticElem& u) const {
    const Rational a = 2 * u.x - p * u.y;
    const Rational d = disc();
    auto sign_of = [&](const Rational& b) {
      // sign of a + b sqrt(d)
      if (sgn(a) == 0) return sgn(b);
      if (sgn(b) == 0 || sgn(a) == sgn(b)) return sgn(a);
      return a * a > b * b * d ? sgn(a) : sgn(b);
    };
    return {sign_of(u.y), sign_of(-u.y)};
  }
};

Decision quadratic_form_vanishes(const QuadraticField& k, const std::vector<QuadraticElem>& xs) {
  const std::size_t n = xs.size();
  if (n == 0) return Decision::Equal;
  if (n % 2 == 1) return Decision::Distinct;
  if (sgn(k.disc()) > 0) {
    int sig1 = 0, sig2 = 0;
    for (const auto& u : xs) {
      const auto [s1, s2] = k.real_signs(u);
      sig1 += s1;
      sig2 += s2;
    }
    if (sig1 != 0 || sig2 != 0) return Decision::Distinct;
  }
  QuadraticElem det{(n / 2) % 2 == 0 ? Rational(1) : Rational(-1), 0};
  for (const auto& u : xs) det = k.mul(det, u);
  if (!k.is_square(det)) return Decision::Distinct;
  if (n == 2) return Decision::Equal;
  // A perfect matching into hyperbolic planes <u, w>, -uw a square.
  std::vector<bool> used(n, false);
  std::function<bool()> match = [&]() -> bool {
    std::size_t first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) return true;
    used[first] = true;
    for (std::size_t l = first + 1; l < n; ++l) {
      if (used[l]) continue;
      QuadraticElem prod = k.mul(xs[first], xs[l]);
      prod = {-prod.x, -prod.y};
      if (!k.is_square(prod)) continue;
      used[l] = true;
      if (match()) return true;
      used[l] = false;
    }
    used[first] = false;
    return false;
  };
  if (n <= 16 && match()) return Decision::Equal;
  return Decision::Unknown;
}

}  // namespace

// ---- FFEntry ----

FFEntry::FFEntry(const Rational& unit, std::map<Polynomial, int> factors) : unit_(unit) {
  if (sgn(unit) == 0) fail(ErrorCode::ZeroElement, "zero entry in a form over Q(t)");
  for (const auto& [f, e] : factors) {
    if (f.degree() < 1 || f.leading() != 1) fail(ErrorCode::MissingFactorization, "factor " + f.to_string() + " is not monic");
    if (e != 0) factors_[f] = e;
  }
}

FFEntry FFEntry::factor(const Polynomial& poly, int exp, bool declared_irreducible) {
  if (poly.is_zero()) fail(ErrorCode::ZeroElement, "zero factor");
  if (poly.degree() < 1) return FFEntry(Rational(1));
  const bool certified = certify_irreducible(poly);
  if (!certified && (poly.degree() <= 3 || !declared_irreducible)) {
    fail(ErrorCode::MissingFactorization, poly.to_string() + " is not certified irreducible");
  }
  const Polynomial monic = poly.monic();
  Rational unit = 1;
  for (int k = 0; k < std::abs(exp); ++k) unit *= poly.leading();
  if (exp < 0) unit = 1 / unit;
  return FFEntry(unit, {{monic, exp}});
}

FFEntry FFEntry::from_function(const RationalFunction& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroElement, "zero entry in a form over Q(t)");
  const PolyFactorization num = factor_low_degree(f.num());
  const PolyFactorization den = factor_low_degree(f.den());
  std::map<Polynomial, int> factors;
  for (const auto& [g, e] : num.factors) factors[g] += e;
  for (const auto& [g, e] : den.factors) factors[g] -= e;
  return FFEntry(num.unit / den.unit, factors);
}

FFEntry FFEntry::operator*(const FFEntry& o) const {
  std::map<Polynomial, int> f = factors_;
  for (const auto& [g, e] : o.factors_) f[g] += e;
  return FFEntry(unit_ * o.unit_, f);
}

FFEntry FFEntry::inverse() const {
  std::map<Polynomial, int> f;
  for (const auto& [g, e] : factors_) f[g] = -e;
  return FFEntry(1 / unit_, f);
}

FFEntry FFEntry::operator-() const { return FFEntry(-unit_, factors_); }

FFEntry FFEntry::pow(int e) const {
  FFEntry base = e < 0 ? inverse() : *this;
  FFEntry out;
  for (int k = 0; k < std::abs(e); ++k) out = out * base;
  return out;
}

FFEntry FFEntry::square_reduced() const {
  std::map<Polynomial, int> f;
  for (const auto& [g, e] : factors_)
    if (e % 2 != 0) f[g] = 1;
  return FFEntry(SquareClass::of(unit_).value(), f);
}

int FFEntry::valuation(const Place& v) const {
  require_rational_function_field_place(v);
  if (v.kind == PlaceKind::Poly) {
    auto it = factors_.find(v.pi);
    return it == factors_.end() ? 0 : it->second;
  }
  int deg = 0;
  for (const auto& [g, e] : factors_) deg += e * g.degree();
  return -deg;
}

bool FFEntry::good_at(const Rational& c) const {
  return std::all_of(factors_.begin(), factors_.end(), [&](const auto& f) { return sgn(f.first(c)) != 0; });
}

Rational FFEntry::eval(const Rational& c) const {
  Rational out = unit_;
  for (const auto& [g, e] : factors_) {
    const Rational gc = g(c);
    if (sgn(gc) == 0) fail(ErrorCode::ZeroElement, "entry " + to_string() + " is not a unit at t = " + c.get_str());
    for (int k = 0; k < std::abs(e); ++k) out = e > 0 ? Rational(out * gc) : Rational(out / gc);
  }
  return out;
}

RationalFunction FFEntry::value() const {
  Polynomial num = Polynomial::constant(unit_), den = Polynomial::constant(1);
  for (const auto& [g, e] : factors_) {
    Polynomial& side = e > 0 ? num : den;
    side = side * power(g, static_cast<unsigned>(std::abs(e)));
  }
  return RationalFunction(num, den);
}

bool operator<(const FFEntry& x, const FFEntry& y) {
  if (x.unit_ != y.unit_) return x.unit_ < y.unit_;
  return x.factors_ < y.factors_;
}

std::string FFEntry::to_string() const {
  std::ostringstream out;
  out << unit_.get_str();
  for (const auto& [g, e] : factors_) {
    out << "*(" << g.to_string() << ")";
    if (e != 1) out << "^" << e;
  }
  return out.str();
}

// ---- FunctionFieldForm ----

FunctionFieldForm FunctionFieldForm::constant(const QuadForm& q) {
  if (!q.field().is_rationals()) fail(ErrorCode::UnsupportedField, "only Q(t) forms are supported");
  std::vector<FFEntry> e;
  for (const auto& c : q.entries()) e.push_back(FFEntry::constant(c.value()));
  return FunctionFieldForm(e);
}

FunctionFieldForm FunctionFieldForm::operator+(const FunctionFieldForm& o) const {
  std::vector<FFEntry> e = entries_;
  e.insert(e.end(), o.entries_.begin(), o.entries_.end());
  return FunctionFieldForm(e);
}

FunctionFieldForm FunctionFieldForm::operator-() const {
  std::vector<FFEntry> e;
  for (const auto& x : entries_) e.push_back(-x);
  return FunctionFieldForm(e);
}

FunctionFieldForm FunctionFieldForm::operator*(const FunctionFieldForm& o) const {
  std::vector<FFEntry> e;
  for (const auto& x : entries_)
    for (const auto& y : o.entries_) e.push_back(x * y);
  return FunctionFieldForm(e);
}

FunctionFieldForm FunctionFieldForm::scaled(const FFEntry& c) const {
  std::vector<FFEntry> e;
  for (const auto& x : entries_) e.push_back(x * c);
  return FunctionFieldForm(e);
}

FunctionFieldForm FunctionFieldForm::reduced() const {
  std::vector<FFEntry> e;
  for (const auto& x : entries_) e.push_back(x.square_reduced());
  std::sort(e.begin(), e.end());
  std::vector<bool> dead(e.size(), false);
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (dead[k]) continue;
    const FFEntry neg = -e[k];
    for (std::size_t l = k + 1; l < e.size(); ++l)
      if (!dead[l] && e[l] == neg) {
        dead[k] = dead[l] = true;
        break;
      }
  }
  std::vector<FFEntry> out;
  for (std::size_t k = 0; k < e.size(); ++k)
    if (!dead[k]) out.push_back(e[k]);
  return FunctionFieldForm(out);
}

std::vector<Polynomial> FunctionFieldForm::support() const {
  std::vector<Polynomial> out;
  for (const auto& x : entries_)
    for (const auto& [g, e] : x.factors())
      if (e % 2 != 0) out.push_back(g);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string FunctionFieldForm::to_string() const {
  std::string out = "<";
  for (std::size_t k = 0; k < entries_.size(); ++k) out += (k ? ", " : "") + entries_[k].to_string();
  return out + ">";
}

// ---- residues ----

FFEntry natural_uniformizer(const Place& v) {
  require_rational_function_field_place(v);
  if (v.kind == PlaceKind::Poly) return FFEntry(Rational(1), {{v.pi, 1}});
  return FFEntry(Rational(1), {{Polynomial::variable(), -1}});
}

namespace {

// Entry a = pi^e u with v(u) = 0; returns (e, u).
std::pair<int, FFEntry> split_entry(const FFEntry& a, const Place& v, const FFEntry& pi) {
  const int e = a.valuation(v);
  return {e, a * pi.pow(-e)};
}

}  // namespace

GroupRingElem residue(const FunctionFieldForm& q, const Place& v) { return residue(q, v, natural_uniformizer(v)); }

GroupRingElem residue(const FunctionFieldForm& q, const Place& v, const FFEntry& uniformizer) {
  require_rational_function_field_place(v);
  if (v.kind == PlaceKind::Poly && v.pi.degree() != 1) {
    fail(ErrorCode::UnsupportedResidueField, "residue field of " + v.pi.to_string() + " is not Q; use residue_quadratic");
  }
  if (uniformizer.valuation(v) != 1) fail(ErrorCode::UnsupportedResidueField, "uniformizer must have valuation 1");
  std::vector<Rational> first, second;
  for (const auto& a : q.entries()) {
    const auto [e, u] = split_entry(a, v, uniformizer);
    // Monic factors have leading coefficient 1, so a unit at infinity reduces to its constant.
    const Rational ubar = v.kind == PlaceKind::Infinite ? u.unit() : u.eval(-v.pi.coeff(0));
    (e % 2 == 0 ? first : second).push_back(ubar);
  }
  return {WittClass(QuadForm::from_values(first)), WittClass(QuadForm::from_values(second))};
}

QuadraticResidue residue_quadratic(const FunctionFieldForm& q, const Place& v) {
  require_rational_function_field_place(v);
  if (v.kind != PlaceKind::Poly || v.pi.degree() != 2) {
    fail(ErrorCode::UnsupportedResidueField, "quadratic residues need a place of degree 2");
  }
  if (!certify_irreducible(v.pi)) fail(ErrorCode::MissingFactorization, v.pi.to_string() + " is reducible");
  const QuadraticField k(v.pi);
  const FFEntry pi = natural_uniformizer(v);
  QuadraticResidue out{v.pi, {}, {}};
  for (const auto& a : q.entries()) {
    const auto [e, u] = split_entry(a, v, pi);
    QuadraticElem ubar{u.unit(), 0};
    for (const auto& [g, ge] : u.factors()) {
      // Only the square class matters, so g^ge contributes g^(ge mod 2).
      if (ge % 2 == 0) continue;
      ubar = k.mul(ubar, k.reduce(g, v.pi));
    }
    (e % 2 == 0 ? out.first : out.second).push_back(ubar);
  }
  return out;
}

Decision second_residue_vanishes(const FunctionFieldForm& q, const Place& v) {
  require_rational_function_field_place(v);
  if (v.kind == PlaceKind::Infinite || v.pi.degree() == 1) {
    return residue(q, v).odd.is_zero() ? Decision::Equal : Decision::Distinct;
  }
  if (v.pi.degree() == 2) {
    const QuadraticResidue r = residue_quadratic(q, v);
    return quadratic_form_vanishes(QuadraticField(v.pi), r.second);
  }
  // Exponent parity alone still settles the trivial case.
  for (const auto& a : q.entries())
    if (a.valuation(v) % 2 != 0) return Decision::Unknown;
  return Decision::Equal;
}

// ---- equality over Q(t) ----

Rational good_specialization_point(const FunctionFieldForm& q, std::uint64_t limit) {
  for (std::uint64_t c = 0; c <= limit; ++c) {
    const Rational rc(static_cast<unsigned long>(c));
    if (std::all_of(q.entries().begin(), q.entries().end(), [&](const FFEntry& a) { return a.good_at(rc); })) return rc;
  }
  fail(ErrorCode::NoGoodSpecializationPoint, "no good integer point up to " + std::to_string(limit));
}

QuadForm specialize(const FunctionFieldForm& q, const Rational& c) {
  std::vector<Rational> v;
  for (const auto& a : q.entries()) v.push_back(a.eval(c));
  return QuadForm::from_values(v);
}

Decision kt_witt_decide(const FunctionFieldForm& q1, const FunctionFieldForm& q2) {
  const FunctionFieldForm q = (q1 + (-q2)).reduced();
  if (q.empty()) return Decision::Equal;
  if (!witt_equal(specialize(q, good_specialization_point(q)), QuadForm())) return Decision::Distinct;
  bool unknown = false;
  for (const auto& f : q.support()) {
    const Decision d = second_residue_vanishes(q, Place::poly(f));
    if (d == Decision::Distinct) return Decision::Distinct;
    if (d == Decision::Unknown) unknown = true;
  }
  return unknown ? Decision::Unknown : Decision::Equal;
}

bool kt_witt_equal(const FunctionFieldForm& q1, const FunctionFieldForm& q2) {
  const Decision d = kt_witt_decide(q1, q2);
  if (d == Decision::Unknown) {
    fail(ErrorCode::UnsupportedResidueField, "a second residue over a residue field of degree >= 2 is undecided");
  }
  return d == Decision::Equal;
}

bool kt_is_zero(const FunctionFieldForm& q) { return kt_witt_equal(q, FunctionFieldForm()); }

Decision w0_decide(const FunctionFieldForm& q, const std::vector<Place>& places) {
  const FunctionFieldForm r = q.reduced();
  bool unknown = false;
  for (const auto& v : places) {
    const Decision d = second_residue_vanishes(r, v);
    if (d == Decision::Distinct) return Decision::Distinct;
    if (d == Decision::Unknown) unknown = true;
  }
  return unknown ? Decision::Unknown : Decision::Equal;
}

bool w0_membership(const FunctionFieldForm& q, const std::vector<Place>& places) {
  const Decision d = w0_decide(q, places);
  if (d == Decision::Unknown) fail(ErrorCode::UnsupportedResidueField, "W0 membership undecided at a place of degree >= 2");
  return d == Decision::Equal;
}

// ---- the split conic ----

RationalFunction ConicData::delta() const {
  const RationalFunction a(alg.a()), b(alg.b());
  return -(a * x * x) - b * y * y + a * b;
}

FunctionQuaternion ConicData::omega() const {
  return FunctionQuaternion::pure(alg, x, y, RationalFunction(Rational(1)));
}

std::vector<Place> ConicData::affine_places(const FunctionFieldForm& q) const {
  std::vector<Polynomial> poles;
  for (const auto* f : {&x, &y})
    if (f->den().degree() >= 1)
      for (const auto& [g, e] : factor_low_degree(f->den()).factors) poles.push_back(g);
  std::vector<Place> out;
  for (const auto& g : q.reduced().support())
    if (std::find(poles.begin(), poles.end(), g) == poles.end()) out.push_back(Place::poly(g));
  if (x.num().degree() <= x.den().degree() && y.num().degree() <= y.den().degree()) out.push_back(Place::infinite());
  return out;
}

ConicData conic_parametrize(const QuatAlgebra& alg) {
  if (!alg.field().is_rationals()) fail(ErrorCode::UnsupportedField, "conics are parametrized over Q");
  if (!is_split(alg)) fail(ErrorCode::NotSplit, alg.to_string() + " is a division algebra");
  const Rational &a = alg.a(), &b = alg.b();
  Rational x0, y0;
  const Quaternion z0 = find_nilpotent(alg);
  if (sgn(z0[3]) != 0) {
    x0 = z0[1] / z0[3];
    y0 = z0[2] / z0[3];
  } else {
    const auto sol = solve_ternary(a, b, a * b);
    if (!sol) fail(ErrorCode::SearchBoundExceeded, "no rational point found on the conic of " + alg.to_string());
    x0 = (*sol)[0] / (*sol)[2];
    y0 = (*sol)[1] / (*sol)[2];
  }
  if (a * x0 * x0 + b * y0 * y0 != a * b) fail(ErrorCode::SearchBoundExceeded, "conic point check failed");
  // (x0 - t s, y0 + s) lies on the conic for s = (2 a x0 t - 2 b y0) / (a t^2 + b).
  const Polynomial t = Polynomial::variable();
  const RationalFunction s(Rational(2) * a * x0 * t - Polynomial::constant(2 * b * y0),
                           a * t * t + Polynomial::constant(b));
  ConicData out{alg, x0, y0, RationalFunction(x0) - RationalFunction(t) * s, RationalFunction(y0) + s};
  if (!out.delta().is_zero()) fail(ErrorCode::SearchBoundExceeded, "parametrization does not satisfy the conic equation");
  return out;
}

FunctionFieldForm psi_odd(const Quaternion& z, const ConicData& conic) {
  require_same_algebra(z.algebra(), conic.alg);
  require_pure_invertible(z);
  const FunctionQuaternion zt(conic.alg, {RationalFunction(z[0]), RationalFunction(z[1]), RationalFunction(z[2]),
                                          RationalFunction(z[3])});
  const FunctionQuaternion w = conic.omega();
  if (!(w * w).is_zero()) fail(ErrorCode::NotNilpotent, "omega(t) is not nilpotent");
  const RationalFunction tr = (zt * w).trd();
  const RationalFunction zsq(pure_square(z));
  const auto g = morita_gram(zt, w);
  const RationalFunction det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  // The Gram matrix is <g00, det/g00>; compare with <-T, T z^2>.
  if (g[0][0] != -tr || !is_square_function(det / (g[0][0] * tr * zsq))) {
    fail(ErrorCode::ClosedFormMismatch, "Morita Gram matrix over Q(t) disagrees with <-T, T z^2> for " + z.to_string());
  }
  return FunctionFieldForm({FFEntry::from_function(-tr), FFEntry::from_function(tr * zsq)});
}

FunctionFieldForm psi_split(const MixedClass& x, const ConicData& conic) {
  require_same_algebra(x.algebra(), conic.alg);
  FunctionFieldForm out = FunctionFieldForm::constant(x.even().anis());
  for (const auto& z : x.odd().entries()) out = out + psi_odd(z, conic);
  return out;
}

FunctionFieldForm psi_split(const MixedClass& x) { return psi_split(x, conic_parametrize(x.algebra())); }

MixedClass psi_kernel_generator(const QuatAlgebra& alg) {
  const Quaternion ij = Quaternion::pure(alg, 0, 0, 1);
  const QuadForm even = pfister(std::vector<SquareClass>{SquareClass::of(pure_square(ij))}).scaled(SquareClass::of(2));
  return MixedClass(alg, WittClass(even), AntiHermForm(alg, {-ij}));
}

}  // namespace witt
