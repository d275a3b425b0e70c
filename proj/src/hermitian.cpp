#include "witt/hermitian.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "witt/error.hpp"

namespace witt {

namespace {

bool invertible(const Quaternion& q) { return sgn(q.nrd()) != 0; }

Quaternion zero_of(const QuatAlgebra& alg) { return Quaternion(alg); }

Quaternion basis_element(const QuatAlgebra& alg, std::size_t s) {
  Quaternion::Coords c{0, 0, 0, 0};
  c[s] = 1;
  return Quaternion(alg, c);
}

QuatVector unit_vector(const QuatAlgebra& alg, std::size_t n, std::size_t k) {
  QuatVector v(n, zero_of(alg));
  v[k] = Quaternion::scalar(alg, 1);
  return v;
}

QuatVector add(const QuatVector& x, const QuatVector& y) {
  QuatVector out = x;
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] + y[k];
  return out;
}

// x * c (right scalar multiplication).
QuatVector times(const QuatVector& x, const Quaternion& c) {
  QuatVector out = x;
  for (auto& e : out) e = e * c;
  return out;
}

// Quaternions with integer coordinates in [-h, h], ordered by height.
std::vector<Quaternion> small_quaternions(const QuatAlgebra& alg, long h) {
  std::vector<std::pair<long, Quaternion>> tagged;
  for (long c0 = -h; c0 <= h; ++c0)
    for (long c1 = -h; c1 <= h; ++c1)
      for (long c2 = -h; c2 <= h; ++c2)
        for (long c3 = -h; c3 <= h; ++c3) {
          const long height = std::max({std::labs(c0), std::labs(c1), std::labs(c2), std::labs(c3)});
          if (height == 0) continue;
          tagged.emplace_back(height, Quaternion(alg, {c0, c1, c2, c3}));
        }
  std::stable_sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Quaternion> out;
  for (auto& [hh, q] : tagged) out.push_back(q);
  return out;
}

long height(const Quaternion& q) {
  long h = 0;
  for (std::size_t s = 0; s < 4; ++s) {
    const Rational& c = q[s];
    if (c.get_den() != 1 || !c.get_num().fits_slong_p()) return 1L << 40;
    h = std::max(h, std::labs(c.get_num().get_si()));
  }
  return h;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rational_rank(Matrix m) { return row_reduce(m).size(); }

// Basis of {x : A x = 0}.
std::vector<std::vector<Rational>> nullspace(Matrix a, std::size_t cols) {
  const auto pivots = row_reduce(a);
  std::vector<std::vector<Rational>> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    out.push_back(v);
  }
  return out;
}

// Rows: the rational coordinates of v * e_s for every vector v and s = 0..3.
Matrix right_span_rows(const QuatMatrix& vectors) {
  Matrix rows;
  for (const auto& v : vectors) {
    for (std::size_t s = 0; s < 4; ++s) {
      std::vector<Rational> row;
      for (const auto& x : v) {
        const Quaternion y = x * basis_element(x.algebra(), s);
        for (std::size_t t = 0; t < 4; ++t) row.push_back(y[t]);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

Integer isqrt_floor(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

AntiHermForm::AntiHermForm(const QuatAlgebra& alg, std::vector<Quaternion> diag) : alg_(alg), diag_(std::move(diag)) {
  for (const auto& z : diag_) {
    require_same_algebra(alg_, z.algebra());
    require_pure_invertible(z);
  }
}

AntiHermForm AntiHermForm::operator+(const AntiHermForm& o) const {
  AntiHermForm out = *this;
  out += o;
  return out;
}

AntiHermForm& AntiHermForm::operator+=(const AntiHermForm& o) {
  require_same_algebra(alg_, o.alg_);
  diag_.insert(diag_.end(), o.diag_.begin(), o.diag_.end());
  return *this;
}

AntiHermForm AntiHermForm::scaled(const Rational& c) const {
  if (sgn(c) == 0) fail(ErrorCode::ZeroElement, "scaling a form by 0");
  AntiHermForm out(alg_);
  for (const auto& z : diag_) out.diag_.push_back(z.scaled(c));
  return out;
}

AntiHermForm AntiHermForm::scaled(const QuadForm& q) const {
  AntiHermForm out(alg_);
  for (const auto& c : q.entries())
    for (const auto& z : diag_) out.diag_.push_back(z.scaled(c.value()));
  return out;
}

QuatMatrix AntiHermForm::gram() const {
  const std::size_t n = diag_.size();
  QuatMatrix g(n, QuatVector(n, zero_of(alg_)));
  for (std::size_t k = 0; k < n; ++k) g[k][k] = diag_[k];
  return g;
}

std::string AntiHermForm::to_string() const {
  std::ostringstream out;
  out << "<";
  for (std::size_t k = 0; k < diag_.size(); ++k) out << (k ? ", " : "") << diag_[k].to_string();
  out << ">";
  return out.str();
}

Quaternion herm_eval(const QuatMatrix& gram, const QuatVector& x, const QuatVector& y) {
  const std::size_t n = gram.size();
  if (x.size() != n || y.size() != n) fail(ErrorCode::RankMismatch, "vector length differs from the form rank");
  if (n == 0) fail(ErrorCode::RankMismatch, "evaluation on the zero form");
  Quaternion acc = zero_of(gram[0][0].algebra());
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k].is_zero()) continue;
    Quaternion row = zero_of(acc.algebra());
    for (std::size_t l = 0; l < n; ++l) {
      if (y[l].is_zero() || gram[k][l].is_zero()) continue;
      row += gram[k][l] * y[l];
    }
    acc += x[k].conj() * row;
  }
  return acc;
}

void require_skew_hermitian(const QuatMatrix& gram) {
  const std::size_t n = gram.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (gram[k].size() != n) fail(ErrorCode::NonSkewHermitian, "Gram matrix is not square");
    for (std::size_t l = 0; l < n; ++l) {
      require_same_algebra(gram[0][0].algebra(), gram[k][l].algebra());
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l <= k; ++l)
      if (gram[l][k].conj() != -gram[k][l]) {
        fail(ErrorCode::NonSkewHermitian,
             "gamma(G[" + std::to_string(l) + "][" + std::to_string(k) + "]) != -G[" + std::to_string(k) + "][" +
                 std::to_string(l) + "]");
      }
}

HermDiagonalization herm_diagonalize(const QuatMatrix& gram, std::uint64_t search_bound) {
  require_skew_hermitian(gram);
  const std::size_t n = gram.size();
  if (n == 0) fail(ErrorCode::DegenerateForm, "empty Gram matrix");
  const QuatAlgebra alg = gram[0][0].algebra();
  std::vector<QuatVector> remaining;
  for (std::size_t k = 0; k < n; ++k) remaining.push_back(unit_vector(alg, n, k));
  std::vector<Quaternion> diag;
  QuatMatrix basis;
  std::vector<Quaternion> probes;  // built on demand
  while (!remaining.empty()) {
    std::size_t piv = remaining.size();
    for (std::size_t k = 0; k < remaining.size(); ++k)
      if (invertible(herm_eval(gram, remaining[k], remaining[k]))) {
        piv = k;
        break;
      }
    if (piv == remaining.size()) {
      // Combine two vectors: v_k + v_l c.
      const Quaternion i = basis_element(alg, 1);
      bool all_zero = true;
      for (std::size_t k = 0; k < remaining.size() && piv == remaining.size(); ++k)
        for (std::size_t l = 0; l < remaining.size() && piv == remaining.size(); ++l) {
          if (k == l) continue;
          const Quaternion hkl = herm_eval(gram, remaining[k], remaining[l]);
          if (hkl.is_zero()) continue;
          all_zero = false;
          std::vector<Quaternion> candidates;
          if (invertible(hkl)) candidates.push_back(hkl.inverse() * i);
          if (probes.empty()) probes = small_quaternions(alg, static_cast<long>(std::min<std::uint64_t>(search_bound, 2)));
          candidates.insert(candidates.end(), probes.begin(), probes.end());
          for (const auto& c : candidates) {
            const QuatVector v = add(remaining[k], times(remaining[l], c));
            if (invertible(herm_eval(gram, v, v))) {
              remaining[k] = v;
              piv = k;
              break;
            }
          }
        }
      if (piv == remaining.size()) {
        bool diagonal_zero = true;
        for (const auto& v : remaining) diagonal_zero &= herm_eval(gram, v, v).is_zero();
        if (all_zero && diagonal_zero) fail(ErrorCode::DegenerateForm, "skew-hermitian Gram matrix is degenerate");
        fail(ErrorCode::SearchBoundExceeded, "no invertible pivot within the search bound");
      }
    }
    const QuatVector p = remaining[piv];
    const Quaternion d = herm_eval(gram, p, p);
    const Quaternion d_inv = d.inverse();
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(piv));
    for (auto& r : remaining) r = add(r, times(p, -(d_inv * herm_eval(gram, p, r))));
    diag.push_back(d);
    basis.push_back(p);
  }
  return {AntiHermForm(alg, diag), basis};
}

HermWittData herm_invariants(const AntiHermForm& h) {
  HermWittData out;
  out.reduced_dim = 2 * h.rank();
  Rational prod = 1;
  for (const auto& z : h.entries()) prod *= z.nrd();
  out.disc = SquareClass::of(prod);
  return out;
}

std::string to_string(HyperbolicityStatus s) {
  switch (s) {
    case HyperbolicityStatus::Hyperbolic: return "hyperbolic";
    case HyperbolicityStatus::AnisotropicAtBound: return "anisotropic-at-bound";
    case HyperbolicityStatus::Unknown: return "unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Ternary equations and the congruence gamma(q) z q = w.

std::optional<std::array<Rational, 3>> solve_ternary(const Rational& a, const Rational& b, const Rational& c) {
  if (sgn(a) == 0 || sgn(b) == 0 || sgn(c) == 0) fail(ErrorCode::ZeroArgument, "ternary coefficient is zero");
  // s1 X^2 + s2 Y^2 = s3 Z^2 with original variables m_i times the new ones.
  std::array<Integer, 3> s;
  std::array<Rational, 3> m;
  const std::array<Rational, 3> coeff{a, b, c};
  for (std::size_t i = 0; i < 3; ++i) {
    s[i] = coeff[i].get_num() * coeff[i].get_den();
    m[i] = Rational(coeff[i].get_den());
  }
  auto make_squarefree = [&](std::size_t i) {
    const Factorization f = factorize(s[i]);
    Integer t = f.sign, r = 1;
    for (const auto& [p, e] : f.primes) {
      for (unsigned k = 0; k < e / 2; ++k) r *= static_cast<unsigned long>(p);
      if (e % 2) t *= static_cast<unsigned long>(p);
    }
    s[i] = t;
    m[i] /= r;
  };
  for (std::size_t i = 0; i < 3; ++i) make_squarefree(i);
  // Make the coefficients pairwise coprime.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), s[i].get_mpz_t(), s[j].get_mpz_t());
        if (g == 1) continue;
        const std::size_t k = 3 - i - j;
        s[i] /= g;
        s[j] /= g;
        s[k] *= g;
        m[i] /= g;
        m[j] /= g;
        make_squarefree(k);
        changed = true;
      }
  }
  if (!is_isotropic(QuadForm::from_values({Rational(s[0]), Rational(s[1]), Rational(-s[2])}))) return std::nullopt;
  if (s[0] == -s[1]) {
    // s1 (X - Y)(X + Y) = s3 Z^2 with X + Y = 1, X - Y = s3 / s1.
    const Rational r = Rational(s[2]) / s[0];
    return std::array<Rational, 3>{m[0] * (1 + r) / 2, m[1] * (1 - r) / 2, m[2]};
  }
  // Holzer's bound: a nontrivial solution has |X| <= sqrt|s2 s3|, |Y| <= sqrt|s1 s3|.
  const Integer bx = isqrt_floor(abs(s[1] * s[2])), by = isqrt_floor(abs(s[0] * s[2]));
  if (bx * by > 50'000'000) return std::nullopt;
  const long nx = bx.get_si(), ny = by.get_si();
  Integer v, q, z;
  for (long x = 0; x <= nx; ++x)
    for (long y = 0; y <= ny; ++y) {
      if (x == 0 && y == 0) continue;
      v = s[0] * x * x + s[1] * y * y;
      if (!mpz_divisible_p(v.get_mpz_t(), s[2].get_mpz_t())) continue;
      mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), s[2].get_mpz_t());
      if (q <= 0 || !mpz_perfect_square_p(q.get_mpz_t())) continue;
      mpz_sqrt(z.get_mpz_t(), q.get_mpz_t());
      return std::array<Rational, 3>{m[0] * x, m[1] * y, m[2] * Rational(z)};
    }
  return std::nullopt;
}

namespace {

// Orthogonal basis of the restriction of Nrd to span(k1, k2).
std::optional<std::array<Quaternion, 2>> orthogonalize_pair(const Quaternion& k1, const Quaternion& k2) {
  auto bil = [](const Quaternion& x, const Quaternion& y) -> Rational { return ((x + y).nrd() - x.nrd() - y.nrd()) / 2; };
  const Rational b11 = k1.nrd(), b22 = k2.nrd(), b12 = bil(k1, k2);
  if (sgn(b11) != 0) return std::array<Quaternion, 2>{k1, k2 - k1.scaled(b12 / b11)};
  if (sgn(b22) != 0) return std::array<Quaternion, 2>{k2, k1 - k2.scaled(b12 / b22)};
  if (sgn(b12) != 0) return std::array<Quaternion, 2>{k1 + k2, k1 - k2};
  return std::nullopt;
}

}  // namespace

namespace {

// Also reports whether some sign of n made the norm equation locally soluble
// (or left the question open because the kernel restriction was degenerate).
std::optional<Quaternion> congruence_impl(const Quaternion& z, const Quaternion& w, bool& maybe_soluble) {
  maybe_soluble = false;
  require_same_algebra(z.algebra(), w.algebra());
  const QuatAlgebra& alg = z.algebra();
  if (w.is_zero()) return zero_of(alg);
  if (!invertible(z)) fail(ErrorCode::NotPureInvertible, "congruence target needs an invertible z");
  const auto ratio = rational_sqrt(w.nrd() / z.nrd());
  if (!ratio) return std::nullopt;
  for (const Rational& n : {*ratio, Rational(-*ratio)}) {
    // gamma(q) = Nrd(q) q^{-1}, so with Nrd(q) = n the equation reads n z q = q w.
    const Quaternion nz = z.scaled(n);
    Matrix a(4, std::vector<Rational>(4));
    for (std::size_t s = 0; s < 4; ++s) {
      const Quaternion e = basis_element(alg, s);
      const Quaternion col = nz * e - e * w;
      for (std::size_t t = 0; t < 4; ++t) a[t][s] = col[t];
    }
    const auto kernel = nullspace(a, 4);
    std::vector<Quaternion> ks;
    for (const auto& v : kernel) ks.emplace_back(alg, Quaternion::Coords{v[0], v[1], v[2], v[3]});
    std::optional<Quaternion> q;
    bool settled = false;  // local solubility of Nrd(q) = n decided exactly
    if (ks.size() == 2) {
      if (auto basis = orthogonalize_pair(ks[0], ks[1])) {
        const Rational a1 = (*basis)[0].nrd(), a2 = (*basis)[1].nrd();
        if (sgn(a1) != 0 && sgn(a2) != 0) {
          settled = true;
          if (is_isotropic(QuadForm::from_values({a1, a2, -n}))) maybe_soluble = true;
          if (auto sol = solve_ternary(a1, a2, n)) {
            const auto& [x, y, zz] = *sol;
            q = ((*basis)[0].scaled(x) + (*basis)[1].scaled(y)).scaled(1 / zz);
          }
        }
      }
    }
    if (!settled) maybe_soluble = true;
    if (!q && !ks.empty()) {
      // Degenerate restriction (split case): small integer combinations.
      const long h = 4;
      std::vector<long> coeffs(ks.size(), -h);
      while (!q) {
        Quaternion cand = zero_of(alg);
        for (std::size_t i = 0; i < ks.size(); ++i) cand += ks[i].scaled(coeffs[i]);
        if (cand.nrd() == n) q = cand;
        std::size_t i = 0;
        while (i < coeffs.size() && coeffs[i] == h) coeffs[i++] = -h;
        if (i == coeffs.size()) break;
        ++coeffs[i];
      }
    }
    if (q && q->conj() * z * *q == w) return q;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Quaternion> solve_congruence(const Quaternion& z, const Quaternion& w) {
  bool maybe = false;
  return congruence_impl(z, w, maybe);
}

std::optional<bool> pair_is_hyperbolic(const Quaternion& z1, const Quaternion& z2) {
  // An isotropic vector (1, q) exists iff gamma(q) z2 q = -z1 is solvable.
  const Rational ratio = z1.nrd() / z2.nrd();
  if (!is_rational_square(ratio)) return false;
  bool maybe_soluble = false;
  if (congruence_impl(z2, -z1, maybe_soluble)) return true;
  if (!maybe_soluble) return false;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Hyperbolicity certificates.

bool verify_isotropic_witness(const QuatMatrix& gram, const QuatMatrix& witness, std::size_t rank) {
  if (witness.size() != rank) return false;
  for (const auto& x : witness)
    for (const auto& y : witness)
      if (!herm_eval(gram, x, y).is_zero()) return false;
  return rational_rank(right_span_rows(witness)) == 4 * rank;
}

namespace {

struct SearchState {
  std::uint64_t bound;
  long budget;
  bool found_isotropic = false;
};

std::optional<QuatMatrix> certify(const AntiHermForm& form, SearchState& st);

// Perfect matching of entries into hyperbolic pairs; witnesses e_k + e_l q.
std::optional<QuatMatrix> certify_by_pairs(const AntiHermForm& form, SearchState& st) {
  const auto& z = form.entries();
  const std::size_t r = z.size();
  const QuatAlgebra& alg = form.algebra();
  std::vector<std::vector<std::optional<Quaternion>>> link(r, std::vector<std::optional<Quaternion>>(r));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = k + 1; l < r; ++l) {
      if (!is_rational_square(z[k].nrd() / z[l].nrd())) continue;
      link[k][l] = solve_congruence(z[l], -z[k]);
      if (link[k][l]) st.found_isotropic = true;
    }
  std::vector<int> mate(r, -1);
  std::function<bool()> match = [&]() -> bool {
    std::size_t k = 0;
    while (k < r && mate[k] >= 0) ++k;
    if (k == r) return true;
    for (std::size_t l = k + 1; l < r; ++l) {
      if (mate[l] >= 0 || !link[k][l]) continue;
      mate[k] = static_cast<int>(l);
      mate[l] = static_cast<int>(k);
      if (match()) return true;
      mate[k] = mate[l] = -1;
    }
    return false;
  };
  if (!match()) return std::nullopt;
  QuatMatrix witness;
  for (std::size_t k = 0; k < r; ++k) {
    if (mate[k] < static_cast<int>(k)) continue;
    QuatVector v = unit_vector(alg, r, k);
    v[static_cast<std::size_t>(mate[k])] = *link[k][static_cast<std::size_t>(mate[k])];
    witness.push_back(v);
  }
  return witness;
}

// Splits off the hyperbolic plane through the isotropic vector v and recurses.
std::optional<QuatMatrix> split_plane(const AntiHermForm& form, const QuatVector& v, SearchState& st) {
  const QuatMatrix gram = form.gram();
  const std::size_t r = form.rank();
  const QuatAlgebra& alg = form.algebra();
  std::optional<QuatVector> e;
  for (std::size_t k = 0; k < r && !e; ++k) {
    const QuatVector ek = unit_vector(alg, r, k);
    if (invertible(herm_eval(gram, v, ek))) e = ek;
  }
  if (!e) return std::nullopt;
  const Quaternion hve_inv = herm_eval(gram, v, *e).inverse();
  const Quaternion hev_inv = herm_eval(gram, *e, v).inverse();
  const Quaternion hee = herm_eval(gram, *e, *e);
  QuatMatrix complement;
  for (std::size_t k = 0; k < r && complement.size() + 2 < r; ++k) {
    const QuatVector x = unit_vector(alg, r, k);
    const Quaternion alpha = hve_inv * herm_eval(gram, v, x);
    const Quaternion beta = hev_inv * (herm_eval(gram, *e, x) - hee * alpha);
    const QuatVector p = add(x, add(times(v, -beta), times(*e, -alpha)));
    QuatMatrix trial = complement;
    trial.push_back(p);
    if (rational_rank(right_span_rows(trial)) == 4 * trial.size()) complement = trial;
  }
  if (complement.size() + 2 != r) return std::nullopt;
  QuatMatrix witness{v};
  if (complement.empty()) return witness;
  const std::size_t m = complement.size();
  QuatMatrix sub(m, QuatVector(m, zero_of(alg)));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) sub[a][b] = herm_eval(gram, complement[a], complement[b]);
  std::optional<HermDiagonalization> diag;
  try {
    diag = herm_diagonalize(sub, st.bound);
  } catch (const Error&) {
    return std::nullopt;
  }
  const HermDiagonalization& d = *diag;
  const auto inner = certify(d.form, st);
  if (!inner) return std::nullopt;
  for (const auto& w : *inner) {
    // w is in the coordinates of d.basis, whose vectors are in complement coordinates.
    QuatVector amb(r, zero_of(alg));
    for (std::size_t k = 0; k < m; ++k) {
      if (w[k].is_zero()) continue;
      for (std::size_t a = 0; a < m; ++a) {
        const Quaternion coeff = d.basis[k][a] * w[k];
        if (coeff.is_zero()) continue;
        amb = add(amb, times(complement[a], coeff));
      }
    }
    witness.push_back(amb);
  }
  return witness;
}

// Isotropic vectors (0,..,0, 1, c_1, .., c_m, y): small middle coordinates,
// the last one solved from gamma(y) z_r y = -(rest).
std::optional<QuatMatrix> certify_by_search(const AntiHermForm& form, SearchState& st) {
  const auto& z = form.entries();
  const std::size_t r = z.size();
  const QuatAlgebra& alg = form.algebra();
  const auto pool = small_quaternions(alg, static_cast<long>(st.bound));
  for (std::size_t lead = 0; lead + 1 < r; ++lead) {
    const std::size_t middle = r - lead - 2;
    for (long level = 0; level <= static_cast<long>(st.bound); ++level) {
      // Pool prefix of height <= level (plus zero), tuples touching height == level.
      std::vector<Quaternion> choices{zero_of(alg)};
      for (const auto& q : pool) {
        if (height(q) > level) break;
        choices.push_back(q);
      }
      std::vector<std::size_t> idx(middle, 0);
      while (true) {
        bool touches = middle == 0 ? level == 0 : false;
        for (std::size_t t = 0; t < middle; ++t) touches |= height(choices[idx[t]]) == level;
        if (touches) {
          if (--st.budget < 0) return std::nullopt;
          QuatVector v(r, zero_of(alg));
          v[lead] = Quaternion::scalar(alg, 1);
          Quaternion acc = z[lead];
          for (std::size_t t = 0; t < middle; ++t) {
            const Quaternion& c = choices[idx[t]];
            v[lead + 1 + t] = c;
            if (!c.is_zero()) acc += c.conj() * z[lead + 1 + t] * c;
          }
          if (auto y = solve_congruence(z[r - 1], -acc)) {
            v[r - 1] = *y;
            st.found_isotropic = true;
            if (auto w = split_plane(form, v, st)) return w;
          }
        }
        std::size_t t = 0;
        while (t < middle && idx[t] + 1 == choices.size()) idx[t++] = 0;
        if (t == middle) break;
        ++idx[t];
      }
    }
  }
  return std::nullopt;
}

bool proportional(const Quaternion& x, const Quaternion& y) {
  std::size_t k = 1;
  while (sgn(y[k]) == 0) ++k;
  const Rational c = x[k] / y[k];
  return x == y.scaled(c);
}

// Groups entries into classes of mutually proportional quaternions and
// certifies each class on its own; the orthogonal sum of the witnesses is one
// for the whole form.
std::optional<QuatMatrix> certify_by_classes(const AntiHermForm& form, SearchState& st) {
  const auto& z = form.entries();
  const std::size_t r = z.size();
  const QuatAlgebra& alg = form.algebra();
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t k = 0; k < r; ++k) {
    auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) { return proportional(z[k], z[c.front()]); });
    if (it == classes.end())
      classes.push_back({k});
    else
      it->push_back(k);
  }
  if (classes.size() < 2) return std::nullopt;
  for (const auto& c : classes)
    if (c.size() % 2 == 1) return std::nullopt;
  QuatMatrix witness;
  for (const auto& c : classes) {
    std::vector<Quaternion> sub;
    for (auto k : c) sub.push_back(z[k]);
    const auto w = certify(AntiHermForm(alg, sub), st);
    if (!w) return std::nullopt;
    for (const auto& v : *w) {
      QuatVector amb(r, zero_of(alg));
      for (std::size_t k = 0; k < c.size(); ++k) amb[c[k]] = v[k];
      witness.push_back(amb);
    }
  }
  return witness;
}

std::optional<QuatMatrix> certify(const AntiHermForm& form, SearchState& st) {
  const std::size_t r = form.rank();
  if (r == 0) return QuatMatrix{};
  if (r % 2 == 1) return std::nullopt;
  if (auto w = certify_by_pairs(form, st)) return w;
  if (r == 2) return std::nullopt;
  if (auto w = certify_by_classes(form, st)) return w;
  return certify_by_search(form, st);
}

}  // namespace

AntiHermForm reduce_proportional(const AntiHermForm& h) {
  const QuatAlgebra& alg = h.algebra();
  if (!alg.field().is_rationals()) return h;
  // <c z> depends on c only up to squares, and <z> (x) <1, -1> is hyperbolic.
  std::vector<Quaternion> reps;
  std::vector<std::vector<Rational>> coeffs;
  for (const auto& z : h.entries()) {
    std::size_t k = 0;
    while (k < reps.size() && !proportional(z, reps[k])) ++k;
    if (k == reps.size()) {
      reps.push_back(z);
      coeffs.emplace_back();
    }
    std::size_t c = 1;
    while (sgn(reps[k][c]) == 0) ++c;
    coeffs[k].push_back(z[c] / reps[k][c]);
  }
  std::vector<Quaternion> out;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const QuadForm kernel = anisotropic_kernel(QuadForm::from_values(coeffs[k]));
    for (const auto& sc : kernel.entries()) out.push_back(reps[k].scaled(sc.value()));
  }
  return AntiHermForm(alg, out);
}

HyperbolicityResult hyperbolicity_certificate(const AntiHermForm& h, std::uint64_t bound) {
  HyperbolicityResult out;
  if (h.rank() % 2 == 1) return out;
  SearchState st{bound, 20000};
  auto w = certify(h, st);
  if (w && (h.empty() || verify_isotropic_witness(h.gram(), *w, h.rank() / 2))) {
    out.status = HyperbolicityStatus::Hyperbolic;
    out.witness = std::move(*w);
    return out;
  }
  out.status = st.found_isotropic || st.budget < 0 ? HyperbolicityStatus::Unknown : HyperbolicityStatus::AnisotropicAtBound;
  return out;
}

// ---------------------------------------------------------------------------
// Morita transfer.

void require_nilpotent(const Quaternion& z0) {
  if (z0.is_zero() || !z0.is_pure() || !(z0 * z0).is_zero()) {
    fail(ErrorCode::NotNilpotent, z0.to_string() + " is not a nonzero pure quaternion with square 0");
  }
}

QuadForm morita_transfer(const Quaternion& z, const Quaternion& z0) {
  require_same_algebra(z.algebra(), z0.algebra());
  if (!is_split(z0.algebra())) fail(ErrorCode::NotSplit, z0.algebra().to_string() + " is a division algebra");
  require_nilpotent(z0);
  require_pure_invertible(z);
  const auto g = morita_gram(z, z0);
  if (g[0][1] != g[1][0]) fail(ErrorCode::AsymmetryDetected, "transferred bilinear form is not symmetric");
  return diagonalize({{g[0][0], g[0][1]}, {g[1][0], g[1][1]}});
}

QuadForm morita_transfer(const AntiHermForm& h, const Quaternion& z0) {
  if (!is_split(h.algebra())) fail(ErrorCode::NotSplit, h.algebra().to_string() + " is a division algebra");
  QuadForm out;
  for (const auto& z : h.entries()) out += morita_transfer(z, z0);
  return out;
}

QuadForm morita_closed_form(const Quaternion& z, const Quaternion& z0) {
  const Rational t = (z * z0).trd();
  if (sgn(t) == 0) return hyperbolic(1);
  return QuadForm::from_values({-t, t * pure_square(z)});
}

}  // namespace witt
