#include "witt/base_field.hpp"

#include <algorithm>
#include <cmath>

#include "witt/error.hpp"

namespace witt {

namespace {

constexpr std::uint64_t kSieveLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kSieveLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= kSieveLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= kSieveLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// Residue of the unit part (primes other than p, with sign) modulo m.
std::uint64_t unit_residue(const SquareClass& a, std::uint64_t p, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (auto q : a.primes()) {
    if (q == p) continue;
    r = mulmod(r, q % m, m);
  }
  if (a.sign() < 0) r = (m - r) % m;
  return r;
}

int legendre_unchecked(std::uint64_t a, std::uint64_t p) {
  Integer x(static_cast<unsigned long>(a % p));
  Integer m(static_cast<unsigned long>(p));
  return mpz_jacobi(x.get_mpz_t(), m.get_mpz_t());
}

// Sign and odd-exponent primes of n.
void squarefree_kernel(const Integer& n, std::uint64_t bound, int& sign, std::vector<std::uint64_t>& primes) {
  const Factorization f = factorize(n, bound);
  sign *= f.sign;
  for (const auto& [p, e] : f.primes) {
    if (e % 2 == 1) primes.push_back(p);
  }
}

std::vector<std::uint64_t> symmetric_difference(const std::vector<std::uint64_t>& a,
                                                const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::uint64_t least_nonresidue(std::uint64_t p) {
  for (std::uint64_t g = 2;; ++g) {
    if (legendre_unchecked(g, p) == -1) return g;
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint32_t q : small_primes()) {
    const std::uint64_t q64 = q;
    if (q64 * q64 > n) return true;
    if (n % q64 == 0) return n == q64;
  }
  for (std::uint64_t d = kSieveLimit + 1; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
  if (p == 2) fail(ErrorCode::UnsupportedField, "characteristic 2 is excluded");
  if (p < 3 || !is_prime(p)) fail(ErrorCode::EvenOrCompositeModulus, "modulus " + std::to_string(p) + " is not an odd prime");
  return FieldSpec(FieldKind::PrimeField, p, FieldKind::PrimeField);
}

FieldSpec FieldSpec::rational_functions(const FieldSpec& base) {
  if (base.kind_ == FieldKind::RationalFunctionField) {
    fail(ErrorCode::UnsupportedField, "only one transcendental is supported");
  }
  return FieldSpec(FieldKind::RationalFunctionField, base.p_, base.kind_);
}

FieldSpec FieldSpec::base() const {
  if (kind_ != FieldKind::RationalFunctionField) return *this;
  return FieldSpec(base_kind_, p_, base_kind_);
}

std::string FieldSpec::to_string() const {
  switch (kind_) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::PrimeField: return "F_" + std::to_string(p_);
    case FieldKind::RationalFunctionField: return base().to_string() + "(t)";
  }
  return "?";
}

Factorization factorize(const Integer& n, std::uint64_t bound) {
  if (n == 0) fail(ErrorCode::ZeroElement, "cannot factor 0");
  Factorization out;
  Integer m = n;
  if (m < 0) {
    out.sign = -1;
    m = -m;
  }
  const std::uint64_t limit = isqrt(bound);
  // Once q^2 exceeds the cofactor, the cofactor is 1 or prime.
  bool proven = false;
  auto step = [&](std::uint64_t q) {
    if (mpz_cmp_ui(m.get_mpz_t(), q * q) < 0) {
      proven = true;
      return false;
    }
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), q);
      ++e;
    }
    if (e > 0) out.primes.emplace_back(q, e);
    return true;
  };
  bool scanning = true;
  for (std::uint32_t q : small_primes()) {
    if (q > limit || !(scanning = step(q))) break;
  }
  if (scanning && !proven && limit > kSieveLimit) {
    for (std::uint64_t d = kSieveLimit + 1; d <= limit && step(d); d += 2) {
    }
  }
  if (m != 1) {
    // Without a proof the scan covered every q <= isqrt(bound), which suffices when m <= bound.
    if (!proven && (!m.fits_ulong_p() || m.get_ui() > bound)) {
      fail(ErrorCode::FactorizationLimitExceeded, "cofactor " + m.get_str() + " exceeds the factorization bound");
    }
    out.primes.emplace_back(m.get_ui(), 1);
  }
  return out;
}

int legendre_symbol(const Integer& a, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) fail(ErrorCode::EvenOrCompositeModulus, "modulus " + std::to_string(p) + " is not an odd prime");
  Integer m(static_cast<unsigned long>(p));
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return mpz_legendre(r.get_mpz_t(), m.get_mpz_t());
}

SquareClass SquareClass::of(const Rational& x, const FieldSpec& field, std::uint64_t factor_bound) {
  if (sgn(x) == 0) fail(ErrorCode::ZeroElement, "square class of 0");
  SquareClass out(field);
  switch (field.kind()) {
    case FieldKind::Rationals: {
      int sign = 1;
      std::vector<std::uint64_t> num_primes, den_primes;
      squarefree_kernel(x.get_num(), factor_bound, sign, num_primes);
      squarefree_kernel(x.get_den(), factor_bound, sign, den_primes);
      out.sign_ = sign;
      out.primes_ = symmetric_difference(num_primes, den_primes);
      return out;
    }
    case FieldKind::PrimeField: {
      const std::uint64_t p = field.p();
      if (mpz_divisible_ui_p(x.get_den().get_mpz_t(), p)) {
        fail(ErrorCode::ZeroElement, "denominator of " + x.get_str() + " vanishes mod " + std::to_string(p));
      }
      const int s = legendre_symbol(x.get_num(), p) * legendre_symbol(x.get_den(), p);
      if (s == 0) fail(ErrorCode::ZeroElement, x.get_str() + " vanishes mod " + std::to_string(p));
      out.nonsquare_ = s < 0;
      return out;
    }
    case FieldKind::RationalFunctionField:
      break;
  }
  fail(ErrorCode::UnsupportedField, "square classes over k(t) live in function-field forms");
}

SquareClass SquareClass::from_primes(int sign, std::vector<std::uint64_t> primes) {
  SquareClass out;
  out.sign_ = sign < 0 ? -1 : 1;
  out.primes_ = std::move(primes);
  return out;
}

bool SquareClass::contains_prime(std::uint64_t p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

Integer SquareClass::representative() const {
  if (field_.is_prime_field()) return nonsquare_ ? Integer(static_cast<unsigned long>(least_nonresidue(field_.p()))) : Integer(1);
  Integer r = sign_;
  for (auto q : primes_) r *= static_cast<unsigned long>(q);
  return r;
}

SquareClass SquareClass::operator*(const SquareClass& o) const {
  if (field_ != o.field_) fail(ErrorCode::FieldMismatch, "square classes over different fields");
  SquareClass out(field_);
  out.sign_ = sign_ * o.sign_;
  out.nonsquare_ = nonsquare_ != o.nonsquare_;
  out.primes_ = primes_.empty() ? o.primes_ : o.primes_.empty() ? primes_ : symmetric_difference(primes_, o.primes_);
  return out;
}

SquareClass SquareClass::operator-() const {
  if (field_.is_prime_field()) {
    // -1 is a square mod p iff p = 1 mod 4.
    SquareClass out = *this;
    if (field_.p() % 4 == 3) out.nonsquare_ = !out.nonsquare_;
    return out;
  }
  SquareClass out = *this;
  out.sign_ = -sign_;
  return out;
}

bool operator<(const SquareClass& a, const SquareClass& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  if (a.nonsquare_ != b.nonsquare_) return b.nonsquare_;
  if (a.primes_.size() != b.primes_.size()) return a.primes_.size() < b.primes_.size();
  return a.primes_ < b.primes_;
}

std::string SquareClass::to_string() const { return representative().get_str(); }

std::string Place::to_string() const {
  switch (kind) {
    case PlaceKind::Real: return "inf";
    case PlaceKind::FinitePrime: return std::to_string(p);
    case PlaceKind::Poly: return "(" + pi.to_string() + ")";
    case PlaceKind::Infinite: return "1/t";
  }
  return "?";
}

int hilbert_symbol(const SquareClass& a, const SquareClass& b, std::uint64_t p) {
  if (p == 0) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
  const int alpha = a.contains_prime(p) ? 1 : 0;
  const int beta = b.contains_prime(p) ? 1 : 0;
  if (p == 2) {
    const std::uint64_t u = unit_residue(a, 2, 8);
    const std::uint64_t w = unit_residue(b, 2, 8);
    auto eps = [](std::uint64_t x) { return static_cast<int>(((x - 1) / 2) % 2); };
    auto omega = [](std::uint64_t x) { return static_cast<int>(((x * x - 1) / 8) % 2); };
    const int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
    return e % 2 == 0 ? 1 : -1;
  }
  if (alpha == 0 && beta == 0) return 1;
  int s = 1;
  if (alpha == 1 && beta == 1 && p % 4 == 3) s = -s;
  if (beta == 1) s *= legendre_unchecked(unit_residue(a, p, p), p);
  if (alpha == 1) s *= legendre_unchecked(unit_residue(b, p, p), p);
  return s;
}

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (sgn(a) == 0 || sgn(b) == 0) fail(ErrorCode::ZeroArgument, "Hilbert symbol of 0");
  if (v.kind == PlaceKind::Real) {
    return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  }
  if (v.kind != PlaceKind::FinitePrime) fail(ErrorCode::UnsupportedField, "Hilbert symbols are computed at places of Q");
  if (!is_prime(v.p)) fail(ErrorCode::EvenOrCompositeModulus, std::to_string(v.p) + " is not prime");
  return hilbert_symbol(SquareClass::of(a), SquareClass::of(b), v.p);
}

bool is_local_square(const SquareClass& c, std::uint64_t p) {
  if (c.field().is_prime_field()) return !c.nonsquare();
  if (p == 0) return c.sign() > 0;
  if (c.contains_prime(p)) return false;
  if (p == 2) return unit_residue(c, 2, 8) == 1;
  return legendre_unchecked(unit_residue(c, p, p), p) == 1;
}

std::vector<std::uint64_t> relevant_primes(const std::vector<SquareClass>& classes) {
  std::vector<std::uint64_t> out{2};
  for (const auto& c : classes) out.insert(out.end(), c.primes().begin(), c.primes().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace witt
