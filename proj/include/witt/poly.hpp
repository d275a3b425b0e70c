#pragma once

#include <string>
#include <utility>
#include <vector>

#include "witt/rational.hpp"

namespace witt {

/// Dense univariate polynomial over Q, coefficients stored in ascending order
/// with no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending);

  static Polynomial constant(const Rational& c);
  static Polynomial variable();
  /// t - c
  static Polynomial linear_root(const Rational& c);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& t) const;

  Polynomial monic() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
  /// Total order used for canonical sorting of factor lists.
  friend bool operator<(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial remainder(const Polynomial& a, const Polynomial& b);
/// Monic gcd (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial power(const Polynomial& a, unsigned e);

/// Rational function num/den with coprime parts and monic denominator.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Polynomial::constant(1)) {}
  RationalFunction(const Rational& c) : num_(Polynomial::constant(c)), den_(Polynomial::constant(1)) {}  // NOLINT
  RationalFunction(const Polynomial& p) : num_(p), den_(Polynomial::constant(1)) {}                     // NOLINT
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  std::string to_string() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

inline std::string to_string(const RationalFunction& f) { return f.to_string(); }

/// unit * prod factor^exp with monic factors certified irreducible over Q.
struct PolyFactorization {
  Rational unit;
  std::vector<std::pair<Polynomial, int>> factors;
};

/// Complete factorization over Q for polynomials of degree <= 3 (rational
/// roots plus the discriminant test).  Throws MissingFactorization above
/// degree 3 and ZeroElement for the zero polynomial.
PolyFactorization factor_low_degree(const Polynomial& p);

/// Irreducibility certificate available for degree <= 3 only; returns false
/// for higher degrees (the caller must trust the factor explicitly).
bool certify_irreducible(const Polynomial& p);

/// Rational roots of a nonzero polynomial, via candidate divisors.
std::vector<Rational> rational_roots(const Polynomial& p);

}  // namespace witt
