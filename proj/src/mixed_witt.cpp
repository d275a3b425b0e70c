#include "witt/mixed_witt.hpp"

#include <sstream>

#include "witt/error.hpp"
#include "witt/random.hpp"

namespace witt {

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Equal: return "equal";
    case Decision::Distinct: return "distinct";
    case Decision::Unknown: return "unknown";
  }
  return "?";
}

MixedClass::MixedClass(const QuatAlgebra& alg, const WittClass& even, const AntiHermForm& odd)
    : alg_(alg), even_(even), odd_(odd) {
  require_same_algebra(alg_, odd.algebra());
  if (!even.anis().empty() && even.field() != alg.field()) {
    fail(ErrorCode::FieldMismatch, "even part lives over " + even.field().to_string());
  }
  if (even.anis().empty()) even_ = WittClass(alg.field());
}

MixedClass MixedClass::operator+(const MixedClass& o) const {
  require_same_algebra(alg_, o.alg_);
  return MixedClass(alg_, even_ + o.even_, odd_ + o.odd_);
}

MixedClass MixedClass::operator-() const { return MixedClass(alg_, -even_, -odd_); }

MixedClass MixedClass::operator*(const MixedClass& o) const { return mixed_mul(*this, o); }

MixedClass MixedClass::scaled(const QuadForm& q) const {
  return MixedClass(alg_, WittClass(q) * even_, q.empty() || odd_.empty() ? AntiHermForm(alg_) : odd_.scaled(q));
}

std::string MixedClass::to_string() const { return "(" + even_.to_string() + ", " + odd_.to_string() + ")"; }

namespace {

Quaternion basis_quaternion(const QuatAlgebra& alg, std::size_t s) {
  Quaternion::Coords c{0, 0, 0, 0};
  c[s] = 1;
  return Quaternion(alg, c);
}

// Recognizes a 2-fold Pfister form Witt-equal to c, or returns nullopt.
std::optional<QuadForm> recognize_pfister(const QuadForm& c) {
  const QuadForm kernel = anisotropic_kernel(c);
  if (kernel.empty()) return pfister(std::vector<SquareClass>{SquareClass::one(c.field()), SquareClass::one(c.field())});
  if (kernel.dim() != 4) return std::nullopt;
  // <x1,x2,x3,x4> with trivial determinant is <x1> <<-x1 x2, -x1 x3>>.
  const auto& x = kernel.entries();
  const QuadForm candidate = pfister(std::vector<SquareClass>{-(x[0] * x[1]), -(x[0] * x[2])});
  if (witt_equal(candidate, c)) return candidate;
  return std::nullopt;
}

}  // namespace

QuadForm twisted_trace_form(const Quaternion& z1, const Quaternion& z2) {
  require_same_algebra(z1.algebra(), z2.algebra());
  require_pure_invertible(z1);
  require_pure_invertible(z2);
  const QuatAlgebra& alg = z1.algebra();
  const Quaternion gz2 = z2.conj();
  Matrix g(4, std::vector<Rational>(4));
  for (std::size_t s = 0; s < 4; ++s) {
    const Quaternion left = basis_quaternion(alg, s).conj() * z1;
    for (std::size_t t = 0; t < 4; ++t) g[s][t] = (left * basis_quaternion(alg, t) * gz2).trd();
  }
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t t = 0; t < s; ++t)
      if (g[s][t] != g[t][s]) fail(ErrorCode::AsymmetryDetected, "twisted trace Gram matrix is not symmetric");
  return diagonalize(g, alg.field());
}

QuadForm product_pfister(const Quaternion& z1, const Quaternion& z2) {
  require_pure_invertible(z1);
  require_pure_invertible(z2);
  const QuatAlgebra& alg = z1.algebra();
  const FieldSpec& field = alg.field();
  const Rational a1 = pure_square(z1), a2 = pure_square(z2);
  const QuadForm target = pfister(std::vector<SquareClass>{SquareClass::of(a1, field), SquareClass::of(a2, field)}) +
                          (-norm_forms(alg).n_q);
  // 4 a1 a2 - T^2 = 4 Nrd of the pure part of z1 z2; zero when z1, z2 commute.
  const Rational t = (z1 * z2).trd();
  const Rational m = 4 * a1 * a2 - t * t;
  if (sgn(m) != 0) {
    const QuadForm candidate =
        pfister(std::vector<SquareClass>{SquareClass::of(a1, field), SquareClass::of(a1 * a2 * m, field)});
    if (witt_equal(candidate, target)) return candidate;
  }
  if (auto found = recognize_pfister(target)) return *found;
  fail(ErrorCode::PfisterRecognitionFailure, "no 2-fold Pfister form matches <<z1^2, z2^2>> - n_Q for " +
                                                 z1.to_string() + ", " + z2.to_string());
}

QuadForm product_closed_form(const Quaternion& z1, const Quaternion& z2) {
  const Rational t = (z1 * z2).trd();
  if (sgn(t) == 0) return QuadForm(z1.algebra().field());
  return product_pfister(z1, z2).scaled(SquareClass::of(-t, z1.algebra().field()));
}

MixedClass mixed_mul(const MixedClass& x, const MixedClass& y) {
  require_same_algebra(x.algebra(), y.algebra());
  const QuatAlgebra& alg = x.algebra();
  QuadForm even = (x.even().anis() * y.even().anis());
  for (const auto& z : x.odd().entries())
    for (const auto& w : y.odd().entries()) {
      const QuadForm trace = twisted_trace_form(z, w);
      if (!witt_equal(trace, product_closed_form(z, w))) {
        fail(ErrorCode::ClosedFormMismatch, "trace form and closed form differ for " + z.to_string() + ", " + w.to_string());
      }
      even += trace;
    }
  AntiHermForm odd(alg);
  if (!x.even().is_zero()) odd += y.odd().scaled(x.even().anis());
  if (!y.even().is_zero()) odd += x.odd().scaled(y.even().anis());
  return MixedClass(alg, WittClass(even), odd);
}

std::vector<Quaternion> pairing_probes(const QuatAlgebra& alg) {
  const Quaternion i = basis_quaternion(alg, 1), j = basis_quaternion(alg, 2), ij = basis_quaternion(alg, 3);
  std::vector<Quaternion> out;
  for (const auto& w : {i, j, ij, i + j, i - j, i + ij, i - ij, j + ij, j - ij, i + j + ij})
    if (sgn(w.nrd()) != 0) out.push_back(w);
  Rng rng(0x70be5);
  for (int n = 0; n < 4; ++n) out.push_back(random_pure(alg, rng, 3));
  return out;
}

Decision odd_is_zero(const AntiHermForm& form, std::uint64_t search_bound) {
  const AntiHermForm h = reduce_proportional(form);
  if (h.empty()) return Decision::Equal;
  const QuatAlgebra& alg = h.algebra();
  if (h.rank() % 2 == 1) return Decision::Distinct;
  if (!herm_invariants(h).disc.is_one()) return Decision::Distinct;
  if (alg.field().is_rationals() && is_split(alg)) {
    return is_hyperbolic(morita_transfer(h, find_nilpotent(alg))) ? Decision::Equal : Decision::Distinct;
  }
  if (h.rank() == 2) {
    if (auto hyp = pair_is_hyperbolic(h.entries()[0], h.entries()[1])) return *hyp ? Decision::Equal : Decision::Distinct;
  }
  const MixedClass hx = MixedClass::odd_part(h);
  for (const auto& w : pairing_probes(alg)) {
    const MixedClass prod = mixed_mul(hx, MixedClass::odd_part(AntiHermForm(alg, {w})));
    if (!prod.even().is_zero()) return Decision::Distinct;
  }
  if (hyperbolicity_certificate(h, search_bound).status == HyperbolicityStatus::Hyperbolic) return Decision::Equal;
  return Decision::Unknown;
}

Decision mixed_equal(const MixedClass& x, const MixedClass& y, std::uint64_t search_bound) {
  require_same_algebra(x.algebra(), y.algebra());
  if (x.even().anis().sorted().entries() == y.even().anis().sorted().entries() &&
      x.odd().entries() == y.odd().entries()) {
    return Decision::Equal;
  }
  if (x.even() != y.even()) return Decision::Distinct;
  return odd_is_zero(x.odd() + (-y.odd()), search_bound);
}

WittClass phi_z0(const MixedClass& x, const Quaternion& z0) {
  require_same_algebra(x.algebra(), z0.algebra());
  if (!is_split(x.algebra())) fail(ErrorCode::NotSplit, x.algebra().to_string() + " is a division algebra");
  require_nilpotent(z0);
  if (x.odd().empty()) return x.even();
  return x.even() + WittClass(morita_transfer(x.odd(), z0));
}

}  // namespace witt
