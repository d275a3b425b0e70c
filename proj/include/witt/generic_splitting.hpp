#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "witt/lambda_invariants.hpp"
#include "witt/mixed_witt.hpp"
#include "witt/poly.hpp"
#include "witt/quadform.hpp"

namespace witt {

/// Nonzero element of Q(t) as unit * prod f^e over monic irreducible f.
class FFEntry {
 public:
  FFEntry() : unit_(1) {}
  explicit FFEntry(const Rational& unit, std::map<Polynomial, int> factors = {});

  static FFEntry constant(const Rational& c) { return FFEntry(c); }
  /// Factors numerator and denominator (degree <= 3 each, else MissingFactorization).
  static FFEntry from_function(const RationalFunction& f);
  /// Declared factor; certified through certify_irreducible when not trusted.
  /// Throws MissingFactorization when neither holds.
  static FFEntry factor(const Polynomial& monic, int exp, bool declared_irreducible);

  const Rational& unit() const { return unit_; }
  const std::map<Polynomial, int>& factors() const { return factors_; }
  bool is_constant() const { return factors_.empty(); }

  FFEntry operator*(const FFEntry& o) const;
  FFEntry inverse() const;
  FFEntry operator-() const;
  FFEntry pow(int e) const;

  /// Same square class: squarefree unit, exponents reduced mod 2.
  FFEntry square_reduced() const;

  /// Valuation at a Poly or Infinite place.
  int valuation(const Place& v) const;
  /// Whether every factor is nonzero at c.
  bool good_at(const Rational& c) const;
  Rational eval(const Rational& c) const;
  RationalFunction value() const;

  friend bool operator==(const FFEntry& x, const FFEntry& y) { return x.unit_ == y.unit_ && x.factors_ == y.factors_; }
  friend bool operator<(const FFEntry& x, const FFEntry& y);

  std::string to_string() const;

 private:
  Rational unit_;
  std::map<Polynomial, int> factors_;
};

/// Diagonal quadratic form over Q(t).
class FunctionFieldForm {
 public:
  FunctionFieldForm() = default;
  explicit FunctionFieldForm(std::vector<FFEntry> entries) : entries_(std::move(entries)) {}
  /// Scalar extension of a form over Q.
  static FunctionFieldForm constant(const QuadForm& q);

  const std::vector<FFEntry>& entries() const { return entries_; }
  std::size_t dim() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  FunctionFieldForm operator+(const FunctionFieldForm& o) const;
  FunctionFieldForm operator-() const;
  FunctionFieldForm operator*(const FunctionFieldForm& o) const;
  FunctionFieldForm scaled(const FFEntry& c) const;
  /// Square-reduced entries, opposite pairs cancelled, sorted.
  FunctionFieldForm reduced() const;

  /// Monic irreducibles with odd exponent in some square-reduced entry.
  std::vector<Polynomial> support() const;

  std::string to_string() const;

 private:
  std::vector<FFEntry> entries_;
};

/// Element x + y theta of Q[t]/(f) for a monic irreducible quadratic f.
struct QuadraticElem {
  Rational x, y;
};

/// Residue fields of degree-2 places: Q(theta), theta a root of the modulus.
struct QuadraticResidue {
  Polynomial modulus;
  std::vector<QuadraticElem> first;
  std::vector<QuadraticElem> second;
};

/// Natural uniformizer: pi itself at a Poly place, 1/t at infinity.
FFEntry natural_uniformizer(const Place& v);

/// (first residue, second residue) at a degree-1 Poly place or at infinity,
/// relative to the uniformizer (valuation 1 at v).  Throws
/// UnsupportedResidueField for places of degree >= 2.
GroupRingElem residue(const FunctionFieldForm& q, const Place& v);
GroupRingElem residue(const FunctionFieldForm& q, const Place& v, const FFEntry& uniformizer);

/// Residues at a degree-2 place, as elements of Q(theta).
QuadraticResidue residue_quadratic(const FunctionFieldForm& q, const Place& v);

/// Equal when the second residue at v vanishes, Distinct when it does not.
/// Exact at degree 1 and infinity; at degree 2 settled by pair cancellation,
/// dimension, discriminant and real signatures, else Unknown; Unknown at
/// higher degree.
Decision second_residue_vanishes(const FunctionFieldForm& q, const Place& v);

/// Smallest c = 0, 1, 2, ... at which every entry of q is defined and nonzero.
/// Throws NoGoodSpecializationPoint beyond `limit`.
Rational good_specialization_point(const FunctionFieldForm& q, std::uint64_t limit = 100000);
/// <entries evaluated at c> over Q.
QuadForm specialize(const FunctionFieldForm& q, const Rational& c);

/// Equality in W(Q(t)) through the Milnor sequence: specialization at the
/// smallest good point, then the second residues at the supporting places.
Decision kt_witt_decide(const FunctionFieldForm& q1, const FunctionFieldForm& q2);
/// As kt_witt_decide; throws UnsupportedResidueField when undecided.
bool kt_witt_equal(const FunctionFieldForm& q1, const FunctionFieldForm& q2);
bool kt_is_zero(const FunctionFieldForm& q);

/// Whether the second residue vanishes at every listed place.
Decision w0_decide(const FunctionFieldForm& q, const std::vector<Place>& places);
/// As w0_decide; throws UnsupportedResidueField when undecided.
bool w0_membership(const FunctionFieldForm& q, const std::vector<Place>& places);

/// Rational parametrization of -a x^2 - b y^2 + ab = 0 for split (a, b).
struct ConicData {
  QuatAlgebra alg;
  Rational x0, y0;  // base point
  RationalFunction x, y;

  /// -a x^2 - b y^2 + ab evaluated at (x(t), y(t)).
  RationalFunction delta() const;
  /// x(t) i + y(t) j + ij.
  FunctionQuaternion omega() const;
  /// Places of Q(t) over affine points of the conic: every finite place off
  /// the poles of x and y, and infinity when it is not a pole.
  std::vector<Place> affine_places(const FunctionFieldForm& q) const;
};

/// Lines through a rational point (x0, y0) in direction (-t, 1).  The point
/// comes from find_nilpotent, else from a ternary search.  Throws NotSplit /
/// SearchBoundExceeded; the substitution identity is checked exactly.
ConicData conic_parametrize(const QuatAlgebra& alg);

/// <-T, T z^2> with T = Trd(z omega(t)), checked against the 2x2 Gram matrix
/// of the Morita transfer through omega(t).
FunctionFieldForm psi_odd(const Quaternion& z, const ConicData& conic);
/// Scalar extension of the even part plus the transfer of the odd part.
FunctionFieldForm psi_split(const MixedClass& x, const ConicData& conic);
FunctionFieldForm psi_split(const MixedClass& x);

/// <2> <<(ij)^2>> - <ij>, the generator of the kernel of psi.
MixedClass psi_kernel_generator(const QuatAlgebra& alg);

}  // namespace witt
