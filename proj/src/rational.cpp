#include "witt/rational.hpp"

#include <cctype>

#include "witt/error.hpp"

namespace witt {

namespace {

bool valid_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_text(num, true) || !valid_integer_text(den, false)) {
    fail(ErrorCode::SchemaViolation, "malformed rational '" + std::string(text) + "'");
  }
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  Integer d{std::string(den)};
  if (d == 0) fail(ErrorCode::SchemaViolation, "zero denominator in '" + std::string(text) + "'");
  Rational r{Integer(n), d};
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string(const Integer& x) { return x.get_str(); }

int sign(const Rational& x) { return sgn(x); }

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  if (sgn(x) == 0) return Rational(0);
  const Integer& n = x.get_num();
  const Integer& d = x.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r{rn, rd};
  r.canonicalize();
  return r;
}

bool is_rational_square(const Rational& x) { return rational_sqrt(x).has_value(); }

Rational rational_abs(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }

}  // namespace witt
