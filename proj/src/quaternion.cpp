#include "witt/quaternion.hpp"

#include <vector>

namespace witt {

QuatAlgebra::QuatAlgebra(const Rational& a, const Rational& b, const FieldSpec& field) : a_(a), b_(b), field_(field) {
  if (sgn(a_) == 0 || sgn(b_) == 0) fail(ErrorCode::ZeroArgument, "quaternion algebra parameters must be nonzero");
  if (field.kind() == FieldKind::RationalFunctionField) {
    fail(ErrorCode::UnsupportedField, "quaternion algebras are defined over Q or F_p");
  }
  if (field.is_prime_field()) {
    // Parameters must be units mod p.
    SquareClass::of(a_, field);
    SquareClass::of(b_, field);
  }
  a_.canonicalize();
  b_.canonicalize();
}

QuatAlgebra QuatAlgebra::generic(const Rational& a, const Rational& b) {
  QuatAlgebra alg(a, b);
  if (SquareClass::of(-a * b).is_one()) {
    fail(ErrorCode::GenericBasisUnavailable, "(ij)^2 = -ab is a square");
  }
  return alg;
}

std::string QuatAlgebra::to_string() const {
  return "(" + a_.get_str() + "," + b_.get_str() + "|" + field_.to_string() + ")";
}

QuatArith quat_arith(const Quaternion& x, const Quaternion& y) {
  require_same_algebra(x.algebra(), y.algebra());
  return {x * y, x.conj(), x.trd(), x.nrd()};
}

NormForms norm_forms(const QuatAlgebra& alg) {
  const Rational& a = alg.a();
  const Rational& b = alg.b();
  return {QuadForm::from_values({1, -a, -b, a * b}, alg.field()),
          QuadForm::from_values({-a, -b, a * b}, alg.field())};
}

bool is_split(const QuatAlgebra& alg) {
  switch (alg.field().kind()) {
    case FieldKind::PrimeField:
      return true;
    case FieldKind::Rationals:
      return is_isotropic(norm_forms(alg).n_q);
    default:
      break;
  }
  fail(ErrorCode::UnsupportedField, "splitting is decided over Q or F_p");
}

void require_pure_invertible(const Quaternion& z) {
  if (!z.is_pure() || sgn(z.nrd()) == 0) {
    fail(ErrorCode::NotPureInvertible, z.to_string() + " is not a pure invertible quaternion");
  }
}

Quaternion find_nilpotent(const QuatAlgebra& alg, std::uint64_t height_bound) {
  if (!alg.field().is_rationals()) fail(ErrorCode::UnsupportedField, "nilpotents are searched over Q");
  if (!is_split(alg)) fail(ErrorCode::NotSplit, alg.to_string() + " is a division algebra");
  const Rational& a = alg.a();
  const Rational& b = alg.b();
  // Values of one coordinate in search order: 1, -1, 2, -2, ..., h, -h, 0.
  auto ordered = [](long h) {
    std::vector<long> v;
    for (long k = 1; k <= h; ++k) {
      v.push_back(k);
      v.push_back(-k);
    }
    v.push_back(0);
    return v;
  };
  // (xi + yj + zij)^2 = a x^2 + b y^2 - ab z^2; solve for z given (x, y).
  for (long h = 1; h <= static_cast<long>(height_bound); ++h) {
    const auto values = ordered(h);
    for (long x : values)
      for (long y : values) {
        if (std::max(std::labs(x), std::labs(y)) != h) continue;
        const Rational z2 = (a * x * x + b * y * y) / (a * b);
        const auto z = rational_sqrt(z2);
        if (!z) continue;
        const Quaternion z0 = Quaternion::pure(alg, x, y, *z);
        if (!(z0 * z0).is_zero()) fail(ErrorCode::NotNilpotent, "internal: nilpotent candidate does not square to 0");
        return z0;
      }
  }
  fail(ErrorCode::SearchBoundExceeded, "no nilpotent of height <= " + std::to_string(height_bound));
}

Quaternion random_pure(const QuatAlgebra& alg, Rng& rng, std::int64_t height_bound) {
  if (height_bound < 1) fail(ErrorCode::SearchBoundExceeded, "height bound must be positive");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Quaternion z = Quaternion::pure(alg, rng.uniform(-height_bound, height_bound),
                                          rng.uniform(-height_bound, height_bound),
                                          rng.uniform(-height_bound, height_bound));
    if (sgn(z.nrd()) != 0) return z;
  }
  fail(ErrorCode::SearchBoundExceeded, "no invertible pure quaternion drawn");
}

Quaternion random_pure(const QuatAlgebra& alg, std::uint64_t seed, std::int64_t height_bound) {
  Rng rng(seed);
  return random_pure(alg, rng, height_bound);
}

Quaternion random_unit(const QuatAlgebra& alg, Rng& rng, std::int64_t height_bound) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Quaternion q(alg, {rng.uniform(-height_bound, height_bound), rng.uniform(-height_bound, height_bound),
                             rng.uniform(-height_bound, height_bound), rng.uniform(-height_bound, height_bound)});
    if (sgn(q.nrd()) != 0) return q;
  }
  fail(ErrorCode::SearchBoundExceeded, "no invertible quaternion drawn");
}

}  // namespace witt
