#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "witt/quadform.hpp"
#include "witt/quaternion.hpp"

namespace witt {

using QuatVector = std::vector<Quaternion>;
using QuatMatrix = std::vector<QuatVector>;

inline constexpr std::uint64_t kDefaultSearchBound = 8;

/// Diagonal skew-hermitian form <z_1, ..., z_r> over (Q, gamma); entries are
/// pure invertible quaternions.
class AntiHermForm {
 public:
  explicit AntiHermForm(const QuatAlgebra& alg) : alg_(alg) {}
  /// Throws NotPureInvertible on a bad entry, AlgebraMismatch on a foreign one.
  AntiHermForm(const QuatAlgebra& alg, std::vector<Quaternion> diag);

  const QuatAlgebra& algebra() const { return alg_; }
  const std::vector<Quaternion>& entries() const { return diag_; }
  std::size_t rank() const { return diag_.size(); }
  bool empty() const { return diag_.empty(); }

  AntiHermForm operator+(const AntiHermForm& o) const;
  AntiHermForm& operator+=(const AntiHermForm& o);
  /// Module action <c> <z> = <c z>.
  AntiHermForm scaled(const Rational& c) const;
  AntiHermForm scaled(const QuadForm& q) const;
  AntiHermForm operator-() const { return scaled(Rational(-1)); }

  QuatMatrix gram() const;
  std::string to_string() const;

 private:
  QuatAlgebra alg_;
  std::vector<Quaternion> diag_;
};

/// h(x, y) = sum gamma(x_k) G_kl y_l.
Quaternion herm_eval(const QuatMatrix& gram, const QuatVector& x, const QuatVector& y);

/// Throws NonSkewHermitian unless gamma(G_lk) = -G_kl for all k, l.
void require_skew_hermitian(const QuatMatrix& gram);

struct HermDiagonalization {
  AntiHermForm form;
  /// Columns of U: basis[k] is the k-th new basis vector in old coordinates.
  QuatMatrix basis;
};

/// Gram-Schmidt over the quaternions with pivot search.  Throws
/// NonSkewHermitian, DegenerateForm or SearchBoundExceeded.
HermDiagonalization herm_diagonalize(const QuatMatrix& gram, std::uint64_t search_bound = kDefaultSearchBound);

struct HermWittData {
  std::size_t reduced_dim = 0;
  SquareClass disc;
};
HermWittData herm_invariants(const AntiHermForm& h);

enum class HyperbolicityStatus { Hyperbolic, AnisotropicAtBound, Unknown };

struct HyperbolicityResult {
  HyperbolicityStatus status = HyperbolicityStatus::Unknown;
  /// Spanning vectors (ambient coordinates) of a totally isotropic subspace
  /// of half rank; filled only for Hyperbolic.
  QuatMatrix witness;
};

std::string to_string(HyperbolicityStatus s);

/// Searches for a totally isotropic subspace of half rank: exact pairings
/// <z_k, z_l> first, then isotropic vectors with small coordinates, splitting
/// off hyperbolic planes recursively.  Every returned witness is verified.
HyperbolicityResult hyperbolicity_certificate(const AntiHermForm& h, std::uint64_t bound = kDefaultSearchBound);

/// Witt-equivalent form: entries grouped into proportional classes c z, each
/// class's coefficient form <c, ...> replaced by its anisotropic kernel.
/// Returns h unchanged over F_p.
AntiHermForm reduce_proportional(const AntiHermForm& h);

/// Checks that the vectors span a totally isotropic subspace of right rank
/// `rank` (rational rank 4 * rank).
bool verify_isotropic_witness(const QuatMatrix& gram, const QuatMatrix& witness, std::size_t rank);

/// q with gamma(q) z q = w, when one exists and is found; z, w pure, z invertible.
std::optional<Quaternion> solve_congruence(const Quaternion& z, const Quaternion& w);

/// Whether <z1, z2> is hyperbolic; exact over a division algebra up to the
/// internal search limit (nullopt when the search gives up).
std::optional<bool> pair_is_hyperbolic(const Quaternion& z1, const Quaternion& z2);

/// Rational X, Y, Z with a X^2 + b Y^2 = c Z^2 and Z != 0, if one exists and
/// the bounded search finds it.  Local solvability is decided exactly first.
std::optional<std::array<Rational, 3>> solve_ternary(const Rational& a, const Rational& b, const Rational& c);

/// 2x2 Gram matrix of (x1 z0, x2 z0) -> -Trd(z0 gamma(x1) z x2) on the first two
/// independent vectors among e_s z0.  Works over Q or Q(t).
template <class T>
std::array<std::array<T, 2>, 2> morita_gram(const BasicQuaternion<T>& z, const BasicQuaternion<T>& z0);

/// Transfer of <z> (or of a diagonal form) to a quadratic form over k via
/// the nilpotent z0.  Throws NotSplit or NotNilpotent.
QuadForm morita_transfer(const AntiHermForm& h, const Quaternion& z0);
QuadForm morita_transfer(const Quaternion& z, const Quaternion& z0);
/// Closed form <-Trd(z z0)> <<z^2>>, or a hyperbolic plane when Trd(z z0) = 0.
QuadForm morita_closed_form(const Quaternion& z, const Quaternion& z0);

void require_nilpotent(const Quaternion& z0);

// ---- template implementation ----

namespace detail {
inline bool is_zero_value(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero_value(const RationalFunction& v) { return v.is_zero(); }
}  // namespace detail

template <class T>
std::array<std::array<T, 2>, 2> morita_gram(const BasicQuaternion<T>& z, const BasicQuaternion<T>& z0) {
  const QuatAlgebra& alg = z0.algebra();
  std::vector<BasicQuaternion<T>> multipliers;
  std::vector<BasicQuaternion<T>> images;
  for (std::size_t s = 0; s < 4 && multipliers.size() < 2; ++s) {
    typename BasicQuaternion<T>::Coords c{T(0), T(0), T(0), T(0)};
    c[s] = T(1);
    const BasicQuaternion<T> x(alg, c);
    const BasicQuaternion<T> image = x * z0;
    if (image.is_zero()) continue;
    if (!images.empty()) {
      // Independent of the first image iff some 2x2 minor is nonzero.
      bool independent = false;
      for (std::size_t p = 0; p < 4 && !independent; ++p)
        for (std::size_t q = p + 1; q < 4 && !independent; ++q)
          independent = !detail::is_zero_value(images[0][p] * image[q] - images[0][q] * image[p]);
      if (!independent) continue;
    }
    multipliers.push_back(x);
    images.push_back(image);
  }
  if (multipliers.size() < 2) fail(ErrorCode::NotNilpotent, "z0 does not generate a rank-2 left ideal");
  std::array<std::array<T, 2>, 2> g;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      g[r][c] = -(z0 * multipliers[r].conj() * z * multipliers[c]).trd();
  return g;
}

}  // namespace witt
