#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "witt/base_field.hpp"
#include "witt/error.hpp"
#include "witt/quadform.hpp"
#include "witt/random.hpp"

namespace witt {

/// (a, b | k) with basis (1, i, j, ij), i^2 = a, j^2 = b, ji = -ij.
class QuatAlgebra {
 public:
  QuatAlgebra(const Rational& a, const Rational& b, const FieldSpec& field = FieldSpec::rationals());
  /// Additionally requires (ij)^2 = -ab to be a nonsquare (GenericBasisUnavailable otherwise).
  static QuatAlgebra generic(const Rational& a, const Rational& b);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const FieldSpec& field() const { return field_; }

  friend bool operator==(const QuatAlgebra& x, const QuatAlgebra& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.field_ == y.field_;
  }
  friend bool operator!=(const QuatAlgebra& x, const QuatAlgebra& y) { return !(x == y); }

  std::string to_string() const;

 private:
  Rational a_, b_;
  FieldSpec field_;
};

inline void require_same_algebra(const QuatAlgebra& x, const QuatAlgebra& y) {
  if (x != y) fail(ErrorCode::AlgebraMismatch, x.to_string() + " vs " + y.to_string());
}

/// Element c0 + c1 i + c2 j + c3 ij with coordinates in T (Q or Q(t)).
template <class T>
class BasicQuaternion {
 public:
  using Coords = std::array<T, 4>;

  explicit BasicQuaternion(const QuatAlgebra& alg) : alg_(alg), c_{T(0), T(0), T(0), T(0)} {}
  BasicQuaternion(const QuatAlgebra& alg, Coords c) : alg_(alg), c_(std::move(c)) {}

  static BasicQuaternion scalar(const QuatAlgebra& alg, const T& s) { return BasicQuaternion(alg, {s, T(0), T(0), T(0)}); }
  static BasicQuaternion pure(const QuatAlgebra& alg, const T& x, const T& y, const T& z) {
    return BasicQuaternion(alg, {T(0), x, y, z});
  }

  const QuatAlgebra& algebra() const { return alg_; }
  const Coords& coords() const { return c_; }
  const T& operator[](std::size_t k) const { return c_[k]; }

  bool is_zero() const { return is_zero_value(c_[0]) && is_zero_value(c_[1]) && is_zero_value(c_[2]) && is_zero_value(c_[3]); }
  bool is_pure() const { return is_zero_value(c_[0]); }
  bool is_scalar() const { return is_zero_value(c_[1]) && is_zero_value(c_[2]) && is_zero_value(c_[3]); }

  T trd() const { return T(2) * c_[0]; }
  T nrd() const {
    const T a(alg_.a()), b(alg_.b());
    return c_[0] * c_[0] - a * c_[1] * c_[1] - b * c_[2] * c_[2] + a * b * c_[3] * c_[3];
  }
  /// Canonical involution gamma(x) = Trd(x) - x.
  BasicQuaternion conj() const { return BasicQuaternion(alg_, {c_[0], -c_[1], -c_[2], -c_[3]}); }
  /// Inverse; throws ZeroElement when Nrd vanishes.
  BasicQuaternion inverse() const {
    const T n = nrd();
    if (is_zero_value(n)) fail(ErrorCode::ZeroElement, "quaternion with zero reduced norm is not invertible");
    return conj().scaled(T(1) / n);
  }

  BasicQuaternion scaled(const T& s) const {
    return BasicQuaternion(alg_, {s * c_[0], s * c_[1], s * c_[2], s * c_[3]});
  }
  BasicQuaternion operator-() const { return scaled(T(-1)); }
  BasicQuaternion operator+(const BasicQuaternion& o) const {
    require_same_algebra(alg_, o.alg_);
    return BasicQuaternion(alg_, {c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]});
  }
  BasicQuaternion operator-(const BasicQuaternion& o) const { return *this + (-o); }
  BasicQuaternion operator*(const BasicQuaternion& o) const {
    require_same_algebra(alg_, o.alg_);
    const T a(alg_.a()), b(alg_.b());
    const auto& x = c_;
    const auto& y = o.c_;
    return BasicQuaternion(alg_, {x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3],
                                  x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2],
                                  x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1],
                                  x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]});
  }
  BasicQuaternion& operator+=(const BasicQuaternion& o) { return *this = *this + o; }

  friend bool operator==(const BasicQuaternion& x, const BasicQuaternion& y) {
    return x.alg_ == y.alg_ && x.c_ == y.c_;
  }
  friend bool operator!=(const BasicQuaternion& x, const BasicQuaternion& y) { return !(x == y); }

  std::string to_string() const;

 private:
  static bool is_zero_value(const Rational& v) { return sgn(v) == 0; }
  static bool is_zero_value(const RationalFunction& v) { return v.is_zero(); }

  QuatAlgebra alg_;
  Coords c_;
};

template <class T>
std::string BasicQuaternion<T>::to_string() const {
  using witt::to_string;
  return "[" + to_string(c_[0]) + ", " + to_string(c_[1]) + ", " + to_string(c_[2]) + ", " + to_string(c_[3]) + "]";
}

using Quaternion = BasicQuaternion<Rational>;
using FunctionQuaternion = BasicQuaternion<RationalFunction>;

/// Product, conjugate, trace and norm in one record.
struct QuatArith {
  Quaternion product;
  Quaternion conj_x;
  Rational trd_x;
  Rational nrd_x;
};
QuatArith quat_arith(const Quaternion& x, const Quaternion& y);

/// Whether the norm form is isotropic (always true over F_p).
bool is_split(const QuatAlgebra& alg);

/// Pure z0 != 0 with z0^2 = 0, from the first isotropic vector of the pure
/// norm form in order of height.  Throws NotSplit or SearchBoundExceeded.
Quaternion find_nilpotent(const QuatAlgebra& alg, std::uint64_t height_bound = 200);

struct NormForms {
  QuadForm n_q;        // <1, -a, -b, ab>
  QuadForm pure_norm;  // <-a, -b, ab>
};
NormForms norm_forms(const QuatAlgebra& alg);

/// Pure invertible quaternion with integer coordinates in [-bound, bound].
Quaternion random_pure(const QuatAlgebra& alg, Rng& rng, std::int64_t height_bound);
Quaternion random_pure(const QuatAlgebra& alg, std::uint64_t seed, std::int64_t height_bound);
/// Invertible quaternion (not necessarily pure) with integer coordinates.
Quaternion random_unit(const QuatAlgebra& alg, Rng& rng, std::int64_t height_bound);

/// Throws NotPureInvertible unless z is pure with nonzero norm.
void require_pure_invertible(const Quaternion& z);

/// z^2 for pure z, as a rational (= -Nrd z).
inline Rational pure_square(const Quaternion& z) { return -z.nrd(); }

}  // namespace witt
