#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "witt/base_field.hpp"

namespace witt {

/// Diagonal quadratic form <a_1, ..., a_n> with entries stored as square classes.
class QuadForm {
 public:
  QuadForm() = default;
  explicit QuadForm(const FieldSpec& field) : field_(field) {}
  QuadForm(std::vector<SquareClass> entries, const FieldSpec& field = FieldSpec::rationals());
  /// Convenience for small integer entries over Q.
  QuadForm(std::initializer_list<long> entries);

  static QuadForm from_values(const std::vector<Rational>& values, const FieldSpec& field = FieldSpec::rationals(),
                              std::uint64_t factor_bound = kDefaultFactorBound);

  const FieldSpec& field() const { return field_; }
  const std::vector<SquareClass>& entries() const { return entries_; }
  std::size_t dim() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Orthogonal sum.
  QuadForm operator+(const QuadForm& o) const;
  QuadForm& operator+=(const QuadForm& o);
  /// Tensor product.
  QuadForm operator*(const QuadForm& o) const;
  QuadForm scaled(const SquareClass& c) const;
  /// -q, the additive inverse in the Witt group.
  QuadForm operator-() const;
  /// Sorted entries; isometric to *this.
  QuadForm sorted() const;

  std::string to_string() const;

 private:
  FieldSpec field_ = FieldSpec::rationals();
  std::vector<SquareClass> entries_;
};

/// k copies of the hyperbolic plane <1,-1>.
QuadForm hyperbolic(std::size_t planes, const FieldSpec& field = FieldSpec::rationals());

using Matrix = std::vector<std::vector<Rational>>;

/// Gram-Schmidt with pivot search.  Throws NonSymmetricMatrix or DegenerateForm.
QuadForm diagonalize(const Matrix& gram, const FieldSpec& field = FieldSpec::rationals());

struct WittInvariants {
  std::size_t dim = 0;
  SquareClass signed_disc;
  /// (prime, Hasse symbol) over the relevant finite places; empty over F_p.
  std::vector<std::pair<std::uint64_t, int>> hasse;
  int hasse_real = 1;
  std::optional<int> signature;
};

/// Relevant places are R, 2 and the primes of the entries plus `extra_primes`.
WittInvariants witt_invariants(const QuadForm& q, const std::vector<std::uint64_t>& extra_primes = {});

/// Hasse invariant prod_{i<j} (a_i, a_j)_p; p = 0 is the real place.
int hasse_invariant(const QuadForm& q, std::uint64_t p);
int signature(const QuadForm& q);
/// (-1)^{n(n-1)/2} times the determinant.
SquareClass signed_discriminant(const QuadForm& q);

bool is_locally_isotropic(const QuadForm& q, std::uint64_t p);
/// Global isotropy (Hasse-Minkowski over Q; dimension count over F_p).
bool is_isotropic(const QuadForm& q);
/// Whether q represents c (q nondegenerate).
bool represents(const QuadForm& q, const SquareClass& c);

/// q1 = q2 in W(k), decided by invariants (Q) or by dimension parity and
/// discriminant (F_p).  Throws FieldMismatch / UnsupportedField.
bool witt_equal(const QuadForm& q1, const QuadForm& q2);
bool is_hyperbolic(const QuadForm& q);

/// Anisotropic form Witt-equivalent to q.
QuadForm anisotropic_kernel(const QuadForm& q);

/// <<a_1,...,a_n>> = tensor of <1,-a_i>.
QuadForm pfister(const std::vector<SquareClass>& slots);
/// Same from raw values; throws ZeroSlot on a zero slot.
QuadForm pfister(const std::vector<Rational>& slots);
/// Exterior power diagonal; throws DegreeTooLarge for d > dim.
QuadForm lambda_quad(std::size_t d, const QuadForm& q);

/// Element of W(k) kept in normal form (its anisotropic kernel).
class WittClass {
 public:
  WittClass() = default;
  explicit WittClass(const FieldSpec& field) : anis_(field) {}
  explicit WittClass(const QuadForm& q) : anis_(anisotropic_kernel(q)) {}

  const QuadForm& anis() const { return anis_; }
  const FieldSpec& field() const { return anis_.field(); }
  bool is_zero() const { return anis_.empty(); }

  WittClass operator+(const WittClass& o) const { return WittClass(anis_ + o.anis_); }
  WittClass operator-(const WittClass& o) const { return WittClass(anis_ + (-o.anis_)); }
  WittClass operator-() const { return WittClass(-anis_); }
  WittClass operator*(const WittClass& o) const { return WittClass(anis_ * o.anis_); }

  friend bool operator==(const WittClass& a, const WittClass& b) { return witt_equal(a.anis_, b.anis_); }
  friend bool operator!=(const WittClass& a, const WittClass& b) { return !(a == b); }

  std::string to_string() const { return anis_.to_string(); }

 private:
  QuadForm anis_;
};

/// Element of W(k)[Z/2Z]: even + odd * g with g^2 = 1.
struct GroupRingElem {
  WittClass even;
  WittClass odd;

  GroupRingElem operator+(const GroupRingElem& o) const { return {even + o.even, odd + o.odd}; }
  GroupRingElem operator*(const GroupRingElem& o) const {
    return {WittClass(even.anis() * o.even.anis() + odd.anis() * o.odd.anis()),
            WittClass(even.anis() * o.odd.anis() + odd.anis() * o.even.anis())};
  }
  friend bool operator==(const GroupRingElem& a, const GroupRingElem& b) {
    return a.even == b.even && a.odd == b.odd;
  }
};

/// Sum of components, the ring morphism W(k)[Z/2Z] -> W(k).
WittClass group_ring_delta(const GroupRingElem& x);

}  // namespace witt
