#include "witt/lambda_invariants.hpp"

#include <sstream>

#include "witt/error.hpp"
#include "witt/random.hpp"

namespace witt {

namespace {

MixedClass times(const MixedClass& x, const Integer& n) {
  MixedClass out(x.algebra());
  for (Integer k = 0; k < n; ++k) out = out + x;
  return out;
}

MixedClass elementary(const Quaternion& z) { return MixedClass::odd_part(AntiHermForm(z.algebra(), {z})); }

MixedClass norm_class(const Quaternion& z) {
  return MixedClass::even_part(z.algebra(), QuadForm::from_values({z.nrd()}, z.algebra().field()));
}

}  // namespace

Integer binomial(std::size_t n, std::size_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

LambdaInvariant::LambdaInvariant(std::size_t r_, std::vector<MixedClass> coeffs_) : r(r_), coeffs(std::move(coeffs_)) {
  if (r == 0) fail(ErrorCode::LengthMismatch, "invariants need at least one slot");
  if (coeffs.size() != 2 * r + 1) {
    fail(ErrorCode::LengthMismatch, std::to_string(coeffs.size()) + " coefficients for r = " + std::to_string(r));
  }
  for (const auto& c : coeffs) require_same_algebra(coeffs.front().algebra(), c.algebra());
}

LambdaInvariant LambdaInvariant::monomial(const QuatAlgebra& alg, std::size_t r, std::size_t d, const MixedClass& x) {
  std::vector<MixedClass> c(2 * r + 1, MixedClass(alg));
  if (d > 2 * r) fail(ErrorCode::DegreeTooLarge, "degree " + std::to_string(d) + " exceeds 2r");
  c[d] = x;
  return LambdaInvariant(r, c);
}

LambdaInvariant LambdaInvariant::operator-(const LambdaInvariant& o) const {
  if (r != o.r) fail(ErrorCode::RankMismatch, "invariants for different ranks");
  std::vector<MixedClass> c;
  for (std::size_t d = 0; d < coeffs.size(); ++d) c.push_back(coeffs[d] - o.coeffs[d]);
  return LambdaInvariant(r, c);
}

std::string LambdaInvariant::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    if (coeffs[d].is_trivially_zero()) continue;
    out << (first ? "" : " + ") << coeffs[d].to_string() << " l^" << d;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Mixed: return "mixed";
  }
  return "?";
}

Parity grading(const LambdaInvariant& a) {
  bool even = true, odd = true;
  for (std::size_t d = 0; d < a.coeffs.size(); ++d) {
    const auto& x = a.coeffs[d];
    const bool d_even = d % 2 == 0;
    // x_d even-only matches an even invariant at even d.
    if (!(d_even ? x.odd().empty() : x.even().is_zero())) even = false;
    if (!(d_even ? x.even().is_zero() : x.odd().empty())) odd = false;
  }
  if (even) return Parity::Even;
  if (odd) return Parity::Odd;
  return Parity::Mixed;
}

MixedClass lambda_herm(std::size_t d, const AntiHermForm& h) {
  const QuatAlgebra& alg = h.algebra();
  if (d > 2 * h.rank()) {
    fail(ErrorCode::DegreeTooLarge, "lambda^" + std::to_string(d) + " of a form of rank " + std::to_string(h.rank()));
  }
  std::vector<MixedClass> poly{MixedClass::one(alg)};
  for (const auto& z : h.entries()) {
    const MixedClass lin = elementary(z), quad = norm_class(z);
    const std::size_t top = std::min(d, poly.size() + 1);
    std::vector<MixedClass> next(top + 1, MixedClass(alg));
    for (std::size_t k = 0; k <= top; ++k) {
      if (k < poly.size()) next[k] = next[k] + poly[k];
      if (k >= 1 && k - 1 < poly.size() && !poly[k - 1].is_trivially_zero()) next[k] = next[k] + poly[k - 1] * lin;
      if (k >= 2 && k - 2 < poly.size() && !poly[k - 2].is_trivially_zero()) next[k] = next[k] + poly[k - 2] * quad;
    }
    poly = std::move(next);
  }
  return d < poly.size() ? poly[d] : MixedClass(alg);
}

MixedClass lambda_multi(const std::vector<std::size_t>& degrees, const AntiHermForm& h) {
  if (degrees.size() != h.rank()) fail(ErrorCode::RankMismatch, "one degree per slot is required");
  MixedClass out = MixedClass::one(h.algebra());
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    const Quaternion& z = h.entries()[k];
    switch (degrees[k]) {
      case 0: break;
      case 1: out = out * elementary(z); break;
      case 2: out = out * norm_class(z); break;
      default: fail(ErrorCode::DegreeTooLarge, "lambda^d of an elementary form vanishes for d > 2");
    }
  }
  return out;
}

MixedClass eval_invariant(const LambdaInvariant& a, const AntiHermForm& h) {
  require_same_algebra(a.algebra(), h.algebra());
  if (h.rank() != a.r) {
    fail(ErrorCode::RankMismatch, "invariant for rank " + std::to_string(a.r) + " applied to rank " + std::to_string(h.rank()));
  }
  MixedClass out(h.algebra());
  for (std::size_t d = 0; d < a.coeffs.size(); ++d) {
    if (a.coeffs[d].is_trivially_zero()) continue;
    out = out + a.coeffs[d] * lambda_herm(d, h);
  }
  return out;
}

MixedClass chi(std::size_t r, const std::vector<MixedClass>& coeffs) {
  if (coeffs.size() != 2 * r + 1) {
    fail(ErrorCode::LengthMismatch, std::to_string(coeffs.size()) + " coefficients for r = " + std::to_string(r));
  }
  MixedClass out(coeffs.front().algebra());
  for (std::size_t i = 0; i <= r; ++i) out = out + times(coeffs[2 * i], binomial(r, i));
  return out;
}

std::optional<WittClass> divide_by_norm_form(const WittClass& x, const QuatAlgebra& alg) {
  const FieldSpec& field = alg.field();
  if (x.is_zero()) return WittClass(field);
  if (!field.is_rationals() || is_split(alg)) return std::nullopt;  // n_Q is hyperbolic
  const QuadForm nq = norm_forms(alg).n_q;
  if (sgn(alg.a()) < 0 && sgn(alg.b()) < 0) {
    // n_Q represents every positive rational, so n_Q <c> = sign(c) n_Q.
    const int sig = signature(x.anis());
    if (sig % 4 != 0) return std::nullopt;
    const long m = sig / 4;
    QuadForm y(field);
    for (long k = 0; k < std::labs(m); ++k) y += QuadForm({m > 0 ? 1L : -1L});
    if (witt_equal(nq * y, x.anis())) return WittClass(y);
    return std::nullopt;
  }
  // Indefinite: n_Q represents everything, so 2 n_Q = 0.
  if (witt_equal(nq, x.anis())) return WittClass(QuadForm{1});
  return std::nullopt;
}

ConstancyResult is_constant_invariant(const LambdaInvariant& a, std::uint64_t search_bound) {
  ConstancyResult out;
  bool unknown = false;
  for (std::size_t d = 1; d < a.coeffs.size(); ++d) {
    const MixedClass& x = a.coeffs[d];
    if (!x.odd().empty()) {
      const Decision z = odd_is_zero(x.odd(), search_bound);
      if (z == Decision::Distinct) {
        out.kind = Decision::Distinct;
        out.witness_degree = d;
        return out;
      }
      if (z == Decision::Unknown) unknown = true;
    }
    if (!divide_by_norm_form(x.even(), a.algebra())) {
      out.kind = Decision::Distinct;
      out.witness_degree = d;
      return out;
    }
  }
  if (unknown) return out;
  out.kind = Decision::Equal;
  out.value = chi(a.r, a.coeffs);
  return out;
}

Decision invariant_equal(const LambdaInvariant& a, const LambdaInvariant& b, std::uint64_t search_bound) {
  require_same_algebra(a.algebra(), b.algebra());
  if (a.r != b.r) fail(ErrorCode::RankMismatch, "invariants for different ranks");
  const ConstancyResult c = is_constant_invariant(a - b, search_bound);
  if (c.kind != Decision::Equal) return c.kind;
  return mixed_equal(*c.value, MixedClass(a.algebra()), search_bound);
}

VersalCheck versal_sample_check(const LambdaInvariant& a, const MixedClass& claimed, std::size_t n_samples,
                                std::uint64_t seed, std::int64_t height) {
  VersalCheck out;
  Rng rng(seed);
  const QuatAlgebra& alg = a.algebra();
  for (std::size_t n = 0; n < n_samples; ++n) {
    std::vector<Quaternion> point;
    for (std::size_t k = 0; k < a.r; ++k) point.push_back(random_pure(alg, rng, height));
    const MixedClass value = eval_invariant(a, AntiHermForm(alg, point));
    ++out.samples;
    const Decision d = mixed_equal(value, claimed);
    if (d == Decision::Distinct) {
      out.consistent = false;
      out.point = point;
      return out;
    }
    if (d == Decision::Unknown) ++out.unknown;
  }
  return out;
}

}  // namespace witt
