#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "witt/poly.hpp"
#include "witt/rational.hpp"

namespace witt {

inline constexpr std::uint64_t kDefaultFactorBound = 1'000'000'000'000ULL;

enum class FieldKind { Rationals, PrimeField, RationalFunctionField };

/// Q, F_p (p odd prime) or one transcendental over either.
class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(FieldKind::Rationals, 0, FieldKind::Rationals); }
  /// Throws EvenOrCompositeModulus unless p is an odd prime.
  static FieldSpec prime_field(std::uint64_t p);
  /// base must be Q or F_p.
  static FieldSpec rational_functions(const FieldSpec& base);

  FieldKind kind() const { return kind_; }
  /// Characteristic (0 for Q and Q(t)).
  std::uint64_t p() const { return p_; }
  FieldSpec base() const;
  bool is_rationals() const { return kind_ == FieldKind::Rationals; }
  bool is_prime_field() const { return kind_ == FieldKind::PrimeField; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.base_kind_ == b.base_kind_;
  }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }

  std::string to_string() const;

 private:
  FieldSpec(FieldKind kind, std::uint64_t p, FieldKind base_kind) : kind_(kind), p_(p), base_kind_(base_kind) {}
  FieldKind kind_;
  std::uint64_t p_;
  FieldKind base_kind_;
};

struct Factorization {
  int sign = 1;
  std::vector<std::pair<std::uint64_t, unsigned>> primes;  // ascending
};

/// Trial division by primes up to sqrt(bound); a cofactor left over is
/// accepted as prime only when it is at most bound.
Factorization factorize(const Integer& n, std::uint64_t bound = kDefaultFactorBound);

/// Deterministic primality by trial division (n <= 10^12 intended).
bool is_prime(std::uint64_t n);

/// Legendre symbol (a|p); throws EvenOrCompositeModulus unless p is an odd prime.
int legendre_symbol(const Integer& a, std::uint64_t p);

/// Square class of a nonzero element of Q or F_p.  Over Q the representative
/// is a sign and a set of primes (the squarefree kernel); over F_p a single
/// residue flag.
class SquareClass {
 public:
  SquareClass() : SquareClass(FieldSpec::rationals()) {}
  explicit SquareClass(const FieldSpec& field) : field_(field) {}

  static SquareClass of(const Rational& x, const FieldSpec& field = FieldSpec::rationals(),
                        std::uint64_t factor_bound = kDefaultFactorBound);
  static SquareClass of(long x) { return of(Rational(x)); }
  static SquareClass one(const FieldSpec& field = FieldSpec::rationals()) { return SquareClass(field); }
  /// Over Q: sign times product of the given primes (must be sorted, distinct).
  static SquareClass from_primes(int sign, std::vector<std::uint64_t> primes);

  const FieldSpec& field() const { return field_; }
  int sign() const { return sign_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  bool nonsquare() const { return nonsquare_; }
  bool is_one() const { return sign_ == 1 && primes_.empty() && !nonsquare_; }
  bool contains_prime(std::uint64_t p) const;

  /// The squarefree integer (Q) or a fixed residue (F_p: 1 or the least nonresidue).
  Integer representative() const;
  Rational value() const { return Rational(representative()); }

  SquareClass operator*(const SquareClass& o) const;
  SquareClass operator-() const;
  SquareClass& operator*=(const SquareClass& o) { return *this = *this * o; }

  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.field_ == b.field_ && a.sign_ == b.sign_ && a.nonsquare_ == b.nonsquare_ && a.primes_ == b.primes_;
  }
  friend bool operator!=(const SquareClass& a, const SquareClass& b) { return !(a == b); }
  friend bool operator<(const SquareClass& a, const SquareClass& b);

  std::string to_string() const;

 private:
  FieldSpec field_;
  int sign_ = 1;
  bool nonsquare_ = false;
  std::vector<std::uint64_t> primes_;
};

enum class PlaceKind { Real, FinitePrime, Poly, Infinite };

/// A place of Q (real or p-adic) or of k(t) (monic irreducible or infinity).
struct Place {
  PlaceKind kind = PlaceKind::Real;
  std::uint64_t p = 0;
  Polynomial pi;

  static Place real() { return {PlaceKind::Real, 0, {}}; }
  static Place prime(std::uint64_t p) { return {PlaceKind::FinitePrime, p, {}}; }
  static Place poly(const Polynomial& monic_irreducible) { return {PlaceKind::Poly, 0, monic_irreducible}; }
  static Place infinite() { return {PlaceKind::Infinite, 0, {}}; }

  std::string to_string() const;
};

/// Local Hilbert symbol over Q at a real or p-adic place.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);
/// Same on square classes; p = 0 denotes the real place.
int hilbert_symbol(const SquareClass& a, const SquareClass& b, std::uint64_t p);

/// Whether c is a square in the completion at p (p = 0 is R).
bool is_local_square(const SquareClass& c, std::uint64_t p);

/// 2 together with every prime occurring in the given classes (sorted).
std::vector<std::uint64_t> relevant_primes(const std::vector<SquareClass>& classes);

}  // namespace witt
