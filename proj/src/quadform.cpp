#include "witt/quadform.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "witt/error.hpp"

namespace witt {

namespace {

void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  if (a != b) fail(ErrorCode::FieldMismatch, a.to_string() + " vs " + b.to_string());
}

SquareClass determinant(const QuadForm& q) {
  SquareClass d = SquareClass::one(q.field());
  for (const auto& a : q.entries()) d *= a;
  return d;
}

// Drops pairs c, -c (each such pair is a hyperbolic plane).
std::vector<SquareClass> cancel_opposite_pairs(const std::vector<SquareClass>& entries) {
  std::map<SquareClass, int> count;
  for (const auto& a : entries) ++count[a];
  std::vector<SquareClass> out;
  for (auto& [c, n] : count) {
    if (n == 0) continue;
    const SquareClass neg = -c;
    if (neg == c) {
      n %= 2;  // <c, c> = <c, -c> when -1 is a square
    }
    auto it = count.find(neg);
    if (it != count.end() && !(neg == c)) {
      const int m = std::min(n, it->second);
      n -= m;
      it->second -= m;
    }
    for (int i = 0; i < n; ++i) out.push_back(c);
  }
  return out;
}

// Elimination arithmetic over Q, or over F_p on integer residues.
struct Arith {
  FieldSpec field;

  Rational norm(const Rational& x) const {
    if (!field.is_prime_field()) return x;
    const Integer p(static_cast<unsigned long>(field.p()));
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t()) == 0) {
      fail(ErrorCode::ZeroElement, "denominator not invertible mod " + p.get_str());
    }
    Integer r = x.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
    return Rational(r);
  }
  Rational div(const Rational& a, const Rational& b) const {
    if (!field.is_prime_field()) return a / b;
    const Integer p(static_cast<unsigned long>(field.p()));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), b.get_num().get_mpz_t(), p.get_mpz_t());
    return norm(Rational(a.get_num() * inv));
  }
};

}  // namespace

QuadForm::QuadForm(std::vector<SquareClass> entries, const FieldSpec& field)
    : field_(field), entries_(std::move(entries)) {
  for (const auto& e : entries_) require_same_field(e.field(), field_);
}

QuadForm::QuadForm(std::initializer_list<long> entries) {
  for (long e : entries) entries_.push_back(SquareClass::of(Rational(e)));
}

QuadForm QuadForm::from_values(const std::vector<Rational>& values, const FieldSpec& field,
                               std::uint64_t factor_bound) {
  QuadForm q(field);
  for (const auto& v : values) q.entries_.push_back(SquareClass::of(v, field, factor_bound));
  return q;
}

QuadForm QuadForm::operator+(const QuadForm& o) const {
  QuadForm out = *this;
  out += o;
  return out;
}

QuadForm& QuadForm::operator+=(const QuadForm& o) {
  require_same_field(field_, o.field_);
  entries_.insert(entries_.end(), o.entries_.begin(), o.entries_.end());
  return *this;
}

QuadForm QuadForm::operator*(const QuadForm& o) const {
  require_same_field(field_, o.field_);
  QuadForm out(field_);
  out.entries_.reserve(entries_.size() * o.entries_.size());
  for (const auto& a : entries_)
    for (const auto& b : o.entries_) out.entries_.push_back(a * b);
  return out;
}

QuadForm QuadForm::scaled(const SquareClass& c) const {
  QuadForm out(field_);
  for (const auto& a : entries_) out.entries_.push_back(a * c);
  return out;
}

QuadForm QuadForm::operator-() const {
  QuadForm out(field_);
  for (const auto& a : entries_) out.entries_.push_back(-a);
  return out;
}

QuadForm QuadForm::sorted() const {
  QuadForm out = *this;
  std::sort(out.entries_.begin(), out.entries_.end());
  return out;
}

std::string QuadForm::to_string() const {
  std::ostringstream out;
  out << "<";
  for (std::size_t i = 0; i < entries_.size(); ++i) out << (i ? ", " : "") << entries_[i].to_string();
  out << ">";
  return out.str();
}

QuadForm hyperbolic(std::size_t planes, const FieldSpec& field) {
  std::vector<SquareClass> e;
  for (std::size_t i = 0; i < planes; ++i) {
    e.push_back(SquareClass::one(field));
    e.push_back(-SquareClass::one(field));
  }
  return QuadForm(std::move(e), field);
}

QuadForm diagonalize(const Matrix& gram, const FieldSpec& field) {
  if (field.kind() == FieldKind::RationalFunctionField) fail(ErrorCode::UnsupportedField, "diagonalize over k(t)");
  const Arith ar{field};
  const std::size_t n = gram.size();
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (gram[i].size() != n) fail(ErrorCode::NonSymmetricMatrix, "Gram matrix is not square");
    for (std::size_t j = 0; j < n; ++j) g[i].push_back(ar.norm(gram[i][j]));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (g[i][j] != g[j][i]) fail(ErrorCode::NonSymmetricMatrix, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");

  std::vector<Rational> diag;
  std::vector<std::size_t> live(n);
  for (std::size_t i = 0; i < n; ++i) live[i] = i;
  while (!live.empty()) {
    // Pivot: a nonzero diagonal entry, else e_i + e_j for a nonzero off-diagonal entry.
    std::size_t piv = live.size();
    for (std::size_t k = 0; k < live.size(); ++k)
      if (sgn(g[live[k]][live[k]]) != 0) {
        piv = k;
        break;
      }
    if (piv == live.size()) {
      bool found = false;
      for (std::size_t k = 0; k < live.size() && !found; ++k)
        for (std::size_t l = k + 1; l < live.size() && !found; ++l) {
          const std::size_t a = live[k], b = live[l];
          if (sgn(g[a][b]) == 0) continue;
          // Replace basis vector a by a + b.
          for (std::size_t m = 0; m < n; ++m) g[a][m] = ar.norm(g[a][m] + g[b][m]);
          for (std::size_t m = 0; m < n; ++m) g[m][a] = ar.norm(g[m][a] + g[m][b]);
          piv = k;
          found = true;
        }
      if (!found) fail(ErrorCode::DegenerateForm, "Gram matrix is singular");
    }
    const std::size_t p = live[piv];
    const Rational d = g[p][p];
    diag.push_back(d);
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(piv));
    for (std::size_t a : live) {
      const Rational c = ar.div(g[a][p], d);
      for (std::size_t b : live) g[a][b] = ar.norm(g[a][b] - c * g[p][b]);
    }
    for (std::size_t a : live) g[a][p] = g[p][a] = 0;
  }
  return QuadForm::from_values(diag, field);
}

int hasse_invariant(const QuadForm& q, std::uint64_t p) {
  int eps = 1;
  SquareClass d = SquareClass::one(q.field());
  for (const auto& a : q.entries()) {
    eps *= hilbert_symbol(d, a, p);
    d *= a;
  }
  return eps;
}

int signature(const QuadForm& q) {
  int s = 0;
  for (const auto& a : q.entries()) s += a.sign();
  return s;
}

SquareClass signed_discriminant(const QuadForm& q) {
  SquareClass d = determinant(q);
  const std::size_t n = q.dim();
  if ((n * (n - (n > 0 ? 1 : 0)) / 2) % 2 == 1) d = -d;
  return d;
}

WittInvariants witt_invariants(const QuadForm& q, const std::vector<std::uint64_t>& extra_primes) {
  WittInvariants inv;
  inv.dim = q.dim();
  inv.signed_disc = signed_discriminant(q);
  if (q.field().kind() == FieldKind::RationalFunctionField) {
    fail(ErrorCode::UnsupportedField, "invariants over k(t) are residue-based");
  }
  if (q.field().is_prime_field()) return inv;
  std::vector<SquareClass> support = q.entries();
  auto primes = relevant_primes(support);
  primes.insert(primes.end(), extra_primes.begin(), extra_primes.end());
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (auto p : primes) inv.hasse.emplace_back(p, hasse_invariant(q, p));
  inv.hasse_real = hasse_invariant(q, 0);
  inv.signature = signature(q);
  return inv;
}

bool is_locally_isotropic(const QuadForm& q, std::uint64_t p) {
  const std::size_t n = q.dim();
  if (n < 2) return false;
  if (p == 0) {
    bool pos = false, neg = false;
    for (const auto& a : q.entries()) (a.sign() > 0 ? pos : neg) = true;
    return pos && neg;
  }
  if (n >= 5) return true;
  const SquareClass d = determinant(q);
  const SquareClass minus_one = SquareClass::of(-1);
  switch (n) {
    case 2:
      return is_local_square(-d, p);
    case 3:
      return hilbert_symbol(minus_one, -d, p) == hasse_invariant(q, p);
    default:
      return !is_local_square(d, p) || hasse_invariant(q, p) == hilbert_symbol(minus_one, minus_one, p);
  }
}

bool is_isotropic(const QuadForm& q) {
  const std::size_t n = q.dim();
  if (n < 2) return false;
  switch (q.field().kind()) {
    case FieldKind::PrimeField:
      return n >= 3 || !(-determinant(q)).nonsquare();
    case FieldKind::Rationals: {
      if (!is_locally_isotropic(q, 0)) return false;
      if (n >= 5) return true;
      for (auto p : relevant_primes(q.entries()))
        if (!is_locally_isotropic(q, p)) return false;
      return true;
    }
    case FieldKind::RationalFunctionField:
      break;
  }
  fail(ErrorCode::UnsupportedField, "isotropy over k(t)");
}

bool represents(const QuadForm& q, const SquareClass& c) {
  if (q.empty()) return false;
  QuadForm t = q;
  t += QuadForm({-c}, q.field());
  return is_isotropic(t);
}

bool witt_equal(const QuadForm& q1, const QuadForm& q2) {
  require_same_field(q1.field(), q2.field());
  QuadForm diff(cancel_opposite_pairs((q1 + (-q2)).entries()), q1.field());
  const std::size_t m = diff.dim();
  if (m % 2 == 1) return false;
  if (!signed_discriminant(diff).is_one()) return false;
  switch (q1.field().kind()) {
    case FieldKind::PrimeField:
      return true;
    case FieldKind::Rationals: {
      if (signature(diff) != 0) return false;
      // A sum of k hyperbolic planes has Hasse invariant (-1,-1)_p^{k(k-1)/2}.
      const std::size_t k = m / 2;
      const int at_two = (k * (k - (k > 0 ? 1 : 0)) / 2) % 2 == 0 ? 1 : -1;
      for (auto p : relevant_primes(diff.entries())) {
        const int expected = p == 2 ? at_two : 1;
        if (hasse_invariant(diff, p) != expected) return false;
      }
      return true;
    }
    case FieldKind::RationalFunctionField:
      break;
  }
  fail(ErrorCode::UnsupportedField, "Witt equality over k(t) goes through residues");
}

bool is_hyperbolic(const QuadForm& q) { return witt_equal(q, QuadForm(q.field())); }

namespace {

// Invariants of a form over Q: determinant, Hasse symbols on a finite prime
// set S (trivial outside S), the real Hasse symbol and the number of negative
// entries.  Together with the dimension they fix the isometry class.
struct LocalData {
  std::size_t dim = 0;
  SquareClass det;
  std::map<std::uint64_t, int> hasse;
  int hasse_real = 1;
  long negatives = 0;
};

int symbol(const SquareClass& a, const SquareClass& b, std::uint64_t p) { return hilbert_symbol(a, b, p); }

const SquareClass& minus_one() {
  static const SquareClass m = SquareClass::of(-1);
  return m;
}

bool real_consistent(const LocalData& x) {
  const long t = x.negatives;
  if (t < 0 || t > static_cast<long>(x.dim)) return false;
  if ((t % 2 == 1) != (x.det.sign() < 0)) return false;
  return x.hasse_real == (((t * (t - 1) / 2) % 2 == 0) ? 1 : -1);
}

// Whether some form over Q has these invariants.
bool realizable(const LocalData& x) {
  if (!real_consistent(x)) return false;
  switch (x.dim) {
    case 0:
      if (!x.det.is_one()) return false;
      [[fallthrough]];
    case 1:
      for (const auto& [p, e] : x.hasse)
        if (e != 1) return false;
      return true;
    case 2:
      for (const auto& [p, e] : x.hasse)
        if (e == -1 && is_local_square(-x.det, p)) return false;
      return true;
    default:
      return true;
  }
}

// x = y + H: det y = -det x, eps(x) = eps(y) (det y, -1).
LocalData peel_plane(const LocalData& x) {
  LocalData y = x;
  y.dim -= 2;
  y.det = -x.det;
  for (auto& [p, e] : y.hasse) e *= symbol(y.det, minus_one(), p);
  y.hasse_real *= symbol(y.det, minus_one(), 0);
  y.negatives -= 1;
  return y;
}

// Prepends <a>: eps(<a> + y) = eps(y) (a, det y).
std::optional<LocalData> strip_entry(const LocalData& x, const SquareClass& a) {
  LocalData y = x;
  y.dim -= 1;
  y.det = x.det * a;
  for (auto p : a.primes()) y.hasse.emplace(p, 1);
  for (auto& [p, e] : y.hasse) e *= symbol(a, y.det, p);
  y.hasse_real *= symbol(a, y.det, 0);
  if (a.sign() < 0) y.negatives -= 1;
  if (!realizable(y)) return std::nullopt;
  return y;
}

std::vector<std::uint64_t> next_primes_outside(const std::map<std::uint64_t, int>& avoid, std::size_t count,
                                               std::uint64_t start = 3) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = start; out.size() < count; q += 2)
    if (is_prime(q) && !avoid.count(q)) out.push_back(q);
  return out;
}

// <x, x d> with (x, -d)_p = eps_p: linear algebra over F_2 in the exponents
// of x, adding auxiliary primes q with (-d | q) = 1 until solvable.
std::vector<SquareClass> realize_binary(const LocalData& x) {
  const SquareClass minus_d = -x.det;
  std::vector<std::uint64_t> rows;
  for (const auto& [p, e] : x.hasse) rows.push_back(p);
  // Sign of x: forced by the signature unless exactly one entry is negative.
  const bool sign_free = x.negatives == 1;
  const int fixed_sign = x.negatives == 2 ? -1 : 1;
  std::vector<std::uint64_t> columns(rows.begin(), rows.end());
  std::vector<std::uint64_t> aux_pool = next_primes_outside(x.hasse, 400);
  std::size_t aux_used = 0;
  for (int round = 0; round < 400; ++round) {
    // Columns: primes, then the sign (if free).  Augmented column last.
    const std::size_t nc = columns.size() + (sign_free ? 1 : 0);
    std::vector<std::vector<std::uint8_t>> m(rows.size(), std::vector<std::uint8_t>(nc + 1, 0));
    const SquareClass sigma = SquareClass::of(fixed_sign);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto p = rows[r];
      for (std::size_t c = 0; c < columns.size(); ++c)
        m[r][c] = symbol(SquareClass::from_primes(1, {columns[c]}), minus_d, p) == -1;
      if (sign_free) m[r][columns.size()] = symbol(minus_one(), minus_d, p) == -1;
      m[r][nc] = (x.hasse.at(p) * symbol(sigma, minus_d, p)) == -1;
    }
    // Gaussian elimination.
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < nc && rank < m.size(); ++c) {
      std::size_t r = rank;
      while (r < m.size() && !m[r][c]) ++r;
      if (r == m.size()) continue;
      std::swap(m[r], m[rank]);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (i != rank && m[i][c])
          for (std::size_t j = 0; j <= nc; ++j) m[i][j] ^= m[rank][j];
      pivot_col.push_back(c);
      ++rank;
    }
    bool solvable = true;
    for (std::size_t r = rank; r < m.size(); ++r) solvable &= !m[r][nc];
    if (solvable) {
      std::vector<std::uint8_t> sol(nc, 0);
      for (std::size_t r = 0; r < rank; ++r) sol[pivot_col[r]] = m[r][nc];
      std::vector<std::uint64_t> ps;
      for (std::size_t c = 0; c < columns.size(); ++c)
        if (sol[c]) ps.push_back(columns[c]);
      std::sort(ps.begin(), ps.end());
      int sign = fixed_sign;
      if (sign_free && sol[columns.size()]) sign = -sign;
      const SquareClass v = SquareClass::from_primes(sign, ps);
      return {v, v * x.det};
    }
    // Next auxiliary prime with (-d | q) = 1: its own condition is then void.
    while (aux_used < aux_pool.size() && !is_local_square(minus_d, aux_pool[aux_used])) ++aux_used;
    if (aux_used == aux_pool.size()) break;
    columns.push_back(aux_pool[aux_used++]);
  }
  fail(ErrorCode::SearchBoundExceeded, "no binary form with the prescribed invariants found");
}

std::vector<SquareClass> realize(const LocalData& x) {
  if (x.dim == 0) return {};
  if (x.dim == 1) return {x.det};
  if (x.dim == 2) return realize_binary(x);
  // Peel one entry <a>; for a ternary target the binary rest constrains a.
  std::vector<int> signs;
  if (static_cast<long>(x.dim) - x.negatives > 0) signs.push_back(1);
  if (x.negatives > 0) signs.push_back(-1);
  std::vector<std::uint64_t> base{};
  for (const auto& [p, e] : x.hasse) base.push_back(p);
  const auto aux = next_primes_outside(x.hasse, 40);
  base.insert(base.end(), aux.begin(), aux.end());
  std::vector<std::vector<std::uint64_t>> supports{{}};
  for (auto p : base) supports.push_back({p});
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) supports.push_back({std::min(base[i], base[j]), std::max(base[i], base[j])});
  for (const auto& ps : supports)
    for (int sign : signs) {
      const SquareClass a = SquareClass::from_primes(sign, ps);
      if (auto rest = strip_entry(x, a)) {
        auto out = realize(*rest);
        out.insert(out.begin(), a);
        return out;
      }
    }
  fail(ErrorCode::SearchBoundExceeded, "no first entry found for the prescribed invariants");
}

}  // namespace

QuadForm anisotropic_kernel(const QuadForm& q) {
  const FieldSpec& field = q.field();
  if (field.is_prime_field()) {
    const SquareClass sd = signed_discriminant(q);
    if (q.dim() % 2 == 1) return QuadForm({sd}, field);
    if (sd.is_one()) return QuadForm(field);
    return QuadForm({SquareClass::one(field), -sd}, field);
  }
  if (!field.is_rationals()) fail(ErrorCode::UnsupportedField, "anisotropic kernel over k(t)");
  const QuadForm reduced(cancel_opposite_pairs(q.entries()), field);
  if (reduced.dim() <= 1) return reduced;
  // The smallest realizable dimension in the Witt class is the anisotropic one,
  // and a form is determined by its invariants.
  LocalData data;
  data.dim = reduced.dim();
  data.det = determinant(reduced);
  for (auto p : relevant_primes(reduced.entries())) data.hasse[p] = hasse_invariant(reduced, p);
  data.hasse_real = hasse_invariant(reduced, 0);
  for (const auto& a : reduced.entries()) data.negatives += a.sign() < 0;
  LocalData best = data;
  while (best.dim >= 2 && best.negatives >= 1 && static_cast<long>(best.dim) - best.negatives >= 1) {
    const LocalData next = peel_plane(best);
    if (!realizable(next)) break;
    best = next;
  }
  if (best.dim == data.dim) return reduced.sorted();
  QuadForm out(realize(best), field);
  if (!witt_equal(out, reduced)) fail(ErrorCode::SearchBoundExceeded, "internal: kernel construction disagrees with invariants");
  return out.sorted();
}

QuadForm pfister(const std::vector<SquareClass>& slots) {
  const FieldSpec field = slots.empty() ? FieldSpec::rationals() : slots.front().field();
  QuadForm p({SquareClass::one(field)}, field);
  for (const auto& a : slots) p = p + p.scaled(-a);
  return p;
}

QuadForm pfister(const std::vector<Rational>& slots) {
  std::vector<SquareClass> classes;
  for (const auto& s : slots) {
    if (sgn(s) == 0) fail(ErrorCode::ZeroSlot, "Pfister slot is zero");
    classes.push_back(SquareClass::of(s));
  }
  return pfister(classes);
}

QuadForm lambda_quad(std::size_t d, const QuadForm& q) {
  const std::size_t n = q.dim();
  if (d > n) fail(ErrorCode::DegreeTooLarge, "lambda^" + std::to_string(d) + " of a form of dimension " + std::to_string(n));
  // Elementary symmetric expansion by dynamic programming over entries.
  std::vector<std::vector<SquareClass>> layer(d + 1);
  layer[0].push_back(SquareClass::one(q.field()));
  for (const auto& a : q.entries()) {
    for (std::size_t k = d; k >= 1; --k)
      for (const auto& c : layer[k - 1]) layer[k].push_back(c * a);
  }
  return QuadForm(layer[d], q.field());
}

WittClass group_ring_delta(const GroupRingElem& x) { return x.even + x.odd; }

}  // namespace witt
