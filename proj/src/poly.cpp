#include "witt/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "witt/base_field.hpp"
#include "witt/error.hpp"

namespace witt {

Polynomial::Polynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::variable() { return Polynomial(std::vector<Rational>{0, 1}); }

Polynomial Polynomial::linear_root(const Rational& c) { return Polynomial(std::vector<Rational>{-c, 1}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  const Rational lc = leading();
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] / lc;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const {
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& s, const Polynomial& a) { return Polynomial::constant(s) * a; }

bool operator<(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const int c = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    if (!first) out << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) out << "-";
    const Rational mag = rational_abs(c);
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i >= 1) out << (i == 0 || mag != 1 ? "*t" : "t");
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroElement, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Rational> quo(a.degree() - db + 1);
  const Rational lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    const Rational q = rem[i] / lb;
    quo[i - db] = q;
    if (sgn(q) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.coeffs()[j];
  }
  rem.resize(db);
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial remainder(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = remainder(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Polynomial power(const Polynomial& a, unsigned e) {
  Polynomial acc = Polynomial::constant(1);
  for (unsigned i = 0; i < e; ++i) acc = acc * a;
  return acc;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero()) fail(ErrorCode::ZeroElement, "rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Polynomial();
    den_ = Polynomial::constant(1);
    return;
  }
  const Polynomial g = gcd(num, den);
  num = divmod(num, g).first;
  den = divmod(den, g).first;
  const Rational lc = den.leading();
  num_ = (1 / lc) * num;
  den_ = (1 / lc) * den;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroElement, "rational function division by zero");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

// Integer coefficients (primitive up to sign) proportional to p.
std::vector<Integer> integer_coefficients(const Polynomial& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> out;
  for (const auto& c : p.coeffs()) {
    Rational s = c * l;
    out.push_back(s.get_num());
  }
  return out;
}

std::vector<Integer> positive_divisors(const Integer& n) {
  const Factorization f = factorize(n);
  std::vector<Integer> divs{1};
  for (const auto& [prime, e] : f.primes) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= static_cast<unsigned long>(prime);
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace

std::vector<Rational> rational_roots(const Polynomial& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroElement, "roots of the zero polynomial");
  std::set<Rational> roots;
  Polynomial q = p;
  if (sgn(q.coeff(0)) == 0) {
    roots.insert(Rational(0));
    while (!q.is_zero() && sgn(q.coeff(0)) == 0) q = divmod(q, Polynomial::variable()).first;
  }
  if (q.degree() >= 1) {
    const auto ic = integer_coefficients(q);
    Integer c0 = abs(ic.front());
    Integer cn = abs(ic.back());
    const auto num_divs = positive_divisors(c0);
    const auto den_divs = positive_divisors(cn);
    for (const auto& a : num_divs) {
      for (const auto& b : den_divs) {
        for (int s : {1, -1}) {
          Rational r{Integer(s * a), b};
          r.canonicalize();
          if (sgn(q(r)) == 0) roots.insert(r);
        }
      }
    }
  }
  return {roots.begin(), roots.end()};
}

bool certify_irreducible(const Polynomial& p) {
  if (p.degree() < 1) return false;
  if (p.degree() == 1) return true;
  if (p.degree() > 3) return false;
  return rational_roots(p).empty();
}

PolyFactorization factor_low_degree(const Polynomial& p) {
  if (p.is_zero()) fail(ErrorCode::ZeroElement, "factorization of the zero polynomial");
  if (p.degree() > 3) {
    fail(ErrorCode::MissingFactorization, "degree " + std::to_string(p.degree()) + " > 3 needs a declared factorization");
  }
  PolyFactorization out;
  out.unit = p.leading();
  Polynomial rest = p.monic();
  for (const auto& r : rational_roots(p)) {
    const Polynomial lin = Polynomial::linear_root(r);
    int e = 0;
    while (rest.degree() >= 1) {
      auto [q, rem] = divmod(rest, lin);
      if (!rem.is_zero()) break;
      rest = q;
      ++e;
    }
    if (e > 0) out.factors.emplace_back(lin, e);
  }
  if (rest.degree() >= 1) out.factors.emplace_back(rest, 1);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

}  // namespace witt
