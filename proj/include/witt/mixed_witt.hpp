#pragma once

#include <optional>
#include <string>
#include <vector>

#include "witt/hermitian.hpp"
#include "witt/quadform.hpp"
#include "witt/quaternion.hpp"

namespace witt {

enum class Decision { Equal, Distinct, Unknown };
std::string to_string(Decision d);

/// Element of W(k) + W^-1(Q, gamma).  The odd part is a formal diagonal
/// representative; nothing is cancelled in it.
class MixedClass {
 public:
  explicit MixedClass(const QuatAlgebra& alg) : alg_(alg), even_(alg.field()), odd_(alg) {}
  MixedClass(const QuatAlgebra& alg, const WittClass& even, const AntiHermForm& odd);

  static MixedClass even_part(const QuatAlgebra& alg, const QuadForm& q) { return MixedClass(alg, WittClass(q), AntiHermForm(alg)); }
  static MixedClass odd_part(const AntiHermForm& h) { return MixedClass(h.algebra(), WittClass(h.algebra().field()), h); }
  static MixedClass one(const QuatAlgebra& alg) { return even_part(alg, QuadForm{1}); }

  const QuatAlgebra& algebra() const { return alg_; }
  const WittClass& even() const { return even_; }
  const AntiHermForm& odd() const { return odd_; }
  bool is_even() const { return odd_.empty(); }
  bool is_odd() const { return even_.is_zero(); }
  /// Both parts empty as representatives.
  bool is_trivially_zero() const { return even_.is_zero() && odd_.empty(); }

  MixedClass operator+(const MixedClass& o) const;
  MixedClass operator-() const;
  MixedClass operator-(const MixedClass& o) const { return *this + (-o); }
  /// Graded product; see mixed_mul.
  MixedClass operator*(const MixedClass& o) const;
  /// Action of W(k) on both parts.
  MixedClass scaled(const QuadForm& q) const;

  std::string to_string() const;

 private:
  QuatAlgebra alg_;
  WittClass even_;
  AntiHermForm odd_;
};

/// Quadratic form with Gram matrix Trd(gamma(e_s) z1 e_t gamma(z2)) on the
/// basis (1, i, j, ij).  Throws NotPureInvertible / AsymmetryDetected.
QuadForm twisted_trace_form(const Quaternion& z1, const Quaternion& z2);

/// The 2-fold Pfister form whose Witt class is <<z1^2, z2^2>> - n_Q.
/// Throws PfisterRecognitionFailure when no such form is found.
QuadForm product_pfister(const Quaternion& z1, const Quaternion& z2);

/// <-Trd(z1 z2)> * product_pfister(z1, z2), or the zero form when z1 and z2
/// anticommute.
QuadForm product_closed_form(const Quaternion& z1, const Quaternion& z2);

/// Graded product.  Odd times odd sums twisted_trace_form over entry pairs and
/// checks each against product_closed_form (ClosedFormMismatch on failure).
MixedClass mixed_mul(const MixedClass& x, const MixedClass& y);

/// Whether h is zero in W^-1(Q, gamma): complete for split algebras through
/// the Morita transfer; otherwise parity, discriminant and pairing probes can
/// prove Distinct, and a hyperbolicity certificate proves Equal.
Decision odd_is_zero(const AntiHermForm& h, std::uint64_t search_bound = kDefaultSearchBound);

Decision mixed_equal(const MixedClass& x, const MixedClass& y, std::uint64_t search_bound = kDefaultSearchBound);

/// Split-case ring morphism to W(k): even + Morita transfer of the odd part.
/// Throws NotSplit / NotNilpotent.
WittClass phi_z0(const MixedClass& x, const Quaternion& z0);

/// Probe elements used to separate odd classes: i, j, ij, i+-j, i+-ij, j+-ij
/// (those that are invertible).
std::vector<Quaternion> pairing_probes(const QuatAlgebra& alg);

}  // namespace witt
