#include "witt/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "witt/error.hpp"
#include "witt/random.hpp"

namespace witt {

ParseContext RunConfig::context() const {
  ParseContext ctx;
  ctx.field = field;
  ctx.alg = QuatAlgebra(a, b, field.is_prime_field() ? field : FieldSpec::rationals());
  ctx.search_bound = search_bound;
  ctx.factor_bound = factor_bound;
  return ctx;
}

std::string to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass: return "pass";
    case CaseStatus::Fail: return "fail";
    case CaseStatus::Unknown: return "unknown";
  }
  return "?";
}

Totals Report::totals() const { return totals(""); }

Totals Report::totals(const std::string& prefix) const {
  Totals t;
  for (const auto& c : cases) {
    if (c.id.compare(0, prefix.size(), prefix) != 0) continue;
    switch (c.status) {
      case CaseStatus::Pass: ++t.pass; break;
      case CaseStatus::Fail: ++t.fail; break;
      case CaseStatus::Unknown: ++t.unknown; break;
    }
  }
  return t;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng stream(const RunConfig& cfg, const std::string& tag) {
  std::uint64_t h = cfg.seed;
  for (unsigned char c : tag) h = splitmix(h ^ c);
  return Rng(h);
}

std::string pad(std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", n);
  return buf;
}

class Collector {
 public:
  explicit Collector(std::string suite) { report_.suite = std::move(suite); }

  // Runs one case; library errors become failures with the message as witness.
  void run(const std::string& id, const std::function<CaseStatus(Json&)>& body) {
    Json witness;
    CaseResult r{id, CaseStatus::Fail, std::nullopt};
    try {
      r.status = body(witness);
    } catch (const Error& e) {
      witness["error"] = e.what();
      r.status = CaseStatus::Fail;
    }
    if (r.status != CaseStatus::Pass && !witness.is_null()) r.witness = witness;
    report_.cases.push_back(std::move(r));
  }

  Report take() {
    std::sort(report_.cases.begin(), report_.cases.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    return std::move(report_);
  }

 private:
  Report report_;
};

CaseStatus pass_if(bool ok) { return ok ? CaseStatus::Pass : CaseStatus::Fail; }

struct NamedAlgebra {
  std::string name;
  QuatAlgebra alg;
};

const NamedAlgebra kHamilton{"H", QuatAlgebra(-1, -1)};
const NamedAlgebra kIndefinite{"I3", QuatAlgebra(-1, 3)};
const NamedAlgebra kSplit11{"S11", QuatAlgebra(1, 1)};
const NamedAlgebra kSplit27{"S27", QuatAlgebra(2, 7)};
const NamedAlgebra kSplit3m3{"S3m3", QuatAlgebra(3, -3)};

// Pure invertible w with Trd(z w) = 0.
std::optional<Quaternion> anticommuting(const Quaternion& z, Rng& rng, std::int64_t h) {
  const QuatAlgebra& alg = z.algebra();
  const Rational &a = alg.a(), &b = alg.b();
  // Trd(z w) = 2 (a z1 w1 + b z2 w2 - ab z3 w3)
  const Rational coef[3] = {a * z[1], b * z[2], -a * b * z[3]};
  std::size_t pivot = 0;
  while (pivot < 3 && sgn(coef[pivot]) == 0) ++pivot;
  if (pivot == 3) return std::nullopt;
  Rational w[3];
  Rational rest = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    if (k == pivot) continue;
    w[k] = Rational(rng.uniform(-h, h));
    rest += coef[k] * w[k];
  }
  w[pivot] = -rest / coef[pivot];
  const Quaternion out = Quaternion::pure(alg, w[0], w[1], w[2]);
  if (sgn(out.nrd()) == 0) return std::nullopt;
  return out;
}

Json pair_json(const Quaternion& x, const Quaternion& y) { return Json::array({to_json(x), to_json(y)}); }

// ---- products ----

Report suite_products(const RunConfig& cfg) {
  Collector out("products");
  for (const auto& [name, alg] : {kHamilton, kSplit11, kSplit27}) {
    Rng rng = stream(cfg, "products/" + name);
    auto check = [&](const Quaternion& z1, const Quaternion& z2, Json& w) {
      w["pair"] = pair_json(z1, z2);
      const QuadForm trace = twisted_trace_form(z1, z2);
      const QuadForm closed = product_closed_form(z1, z2);
      if (!witt_equal(trace, closed)) {
        w["trace_form"] = to_json(trace);
        w["closed_form"] = to_json(closed);
        return CaseStatus::Fail;
      }
      if (sgn((z1 * z2).trd()) == 0) return pass_if(closed.empty() && is_hyperbolic(trace));
      return CaseStatus::Pass;
    };
    for (std::size_t n = 0; n < 500; ++n) {
      const Quaternion z1 = random_pure(alg, rng, 5), z2 = random_pure(alg, rng, 5);
      out.run(name + "/pair/" + pad(n), [&](Json& w) { return check(z1, z2, w); });
    }
    for (std::size_t n = 0; n < 60; ++n) {
      const Quaternion z1 = random_pure(alg, rng, 5);
      std::optional<Quaternion> z2;
      while (!(z2 = anticommuting(z1, rng, 5))) {}
      out.run(name + "/anticommuting/" + pad(n), [&](Json& w) { return check(z1, *z2, w); });
    }
  }
  return out.take();
}

// ---- morita ----

const std::vector<NamedAlgebra>& split_algebras() {
  static const std::vector<NamedAlgebra> algs{kSplit11, kSplit27, kSplit3m3};
  return algs;
}

Report suite_morita(const RunConfig& cfg) {
  Collector out("morita");
  for (const auto& [name, alg] : split_algebras()) {
    Rng rng = stream(cfg, "morita/" + name);
    const Quaternion z0 = find_nilpotent(alg);
    auto check = [&](const Quaternion& z, Json& w) {
      w["z"] = to_json(z);
      w["z0"] = to_json(z0);
      const QuadForm transfer = morita_transfer(z, z0);
      const QuadForm closed = morita_closed_form(z, z0);
      w["transfer"] = to_json(transfer);
      w["closed_form"] = to_json(closed);
      if (transfer.dim() != 2) return CaseStatus::Fail;
      if (sgn((z * z0).trd()) == 0) return pass_if(is_hyperbolic(transfer));
      return pass_if(witt_equal(transfer, closed));
    };
    for (std::size_t n = 0; n < 200; ++n) {
      const Quaternion z = random_pure(alg, rng, 6);
      out.run(name + "/z/" + pad(n), [&](Json& w) { return check(z, w); });
    }
    for (std::size_t n = 0; n < 20; ++n) {
      std::optional<Quaternion> z;
      while (!(z = anticommuting(z0, rng, 6))) {}
      out.run(name + "/trace-zero/" + pad(n), [&](Json& w) { return check(*z, w); });
    }
  }
  return out.take();
}

// ---- lambda ----

Report suite_lambda(const RunConfig& cfg) {
  Collector out("lambda");
  for (const auto& [name, alg] : {kHamilton, kIndefinite, kSplit11, kSplit27}) {
    Rng rng = stream(cfg, "lambda/" + name);
    const std::string kind = is_split(alg) ? "split" : "division";
    for (std::size_t n = 0; n < 200; ++n) {
      const Quaternion z = random_pure(alg, rng, 6);
      out.run(kind + "/" + name + "/" + pad(n), [&](Json& w) {
        w["z"] = to_json(z);
        const AntiHermForm h(alg, {z});
        const MixedClass l2 = lambda_herm(2, h);
        const MixedClass l1 = lambda_herm(1, h);
        w["lambda2"] = to_json(l2);
        // Nrd read off z gamma(z), which must be scalar.
        const Quaternion n = z * z.conj();
        if (!n.is_scalar() || n[0] != z.nrd()) return CaseStatus::Fail;
        const bool ok = l2.odd().empty() && witt_equal(l2.even().anis(), QuadForm::from_values({n[0]})) &&
                        l1.even().is_zero() && l1.odd().entries() == h.entries();
        if (!ok) return CaseStatus::Fail;
        // Split case: the determinant of the transferred plane.
        if (is_split(alg)) return pass_if(witt_equal(lambda_quad(2, morita_transfer(z, find_nilpotent(alg))), l2.even().anis()));
        return CaseStatus::Pass;
      });
    }
  }
  return out.take();
}

// ---- relations ----

Report suite_relations(const RunConfig& cfg) {
  Collector out("relations");
  for (const auto& [name, alg, per] : std::vector<std::tuple<std::string, QuatAlgebra, std::size_t>>{
           {kHamilton.name, kHamilton.alg, 50}, {kIndefinite.name, kIndefinite.alg, 10}}) {
    Rng rng = stream(cfg, "relations/" + name);
    const QuadForm nq = norm_forms(alg).n_q;
    const MixedClass nq_class = MixedClass::even_part(alg, nq);
    for (std::size_t r = 1; r <= 3; ++r)
      for (std::size_t i = 0; i <= r; ++i) {
        const LambdaInvariant inv = LambdaInvariant::monomial(alg, r, 2 * i, nq_class);
        QuadForm expected(alg.field());
        for (Integer k = 0; k < binomial(r, i); ++k) expected += nq;
        const MixedClass want = MixedClass::even_part(alg, expected);
        for (std::size_t n = 0; n < per; ++n) {
          std::vector<Quaternion> d;
          for (std::size_t k = 0; k < r; ++k) d.push_back(random_pure(alg, rng, 4));
          const AntiHermForm h(alg, d);
          const std::string id = "even/" + name + "/r" + std::to_string(r) + "/i" + std::to_string(i) + "/" + pad(n);
          out.run(id, [&](Json& w) {
            w["form"] = to_json(h);
            const MixedClass got = eval_invariant(inv, h);
            w["value"] = to_json(got);
            const Decision dcs = mixed_equal(got, want, cfg.search_bound);
            if (dcs == Decision::Unknown) return CaseStatus::Unknown;
            return pass_if(dcs == Decision::Equal);
          });
        }
      }
  }
  // Odd degrees: n_Q times an odd class is hyperbolic; certified by search.
  const QuatAlgebra& H = kHamilton.alg;
  const QuadForm nq = norm_forms(H).n_q;
  const Quaternion i = Quaternion::pure(H, 1, 0, 0), j = Quaternion::pure(H, 0, 1, 0), ij = Quaternion::pure(H, 0, 0, 1);
  const std::vector<std::pair<std::string, AntiHermForm>> curated{
      {"nq-i", AntiHermForm(H, {i}).scaled(nq)},
      {"nq-i+j", AntiHermForm(H, {i + j}).scaled(nq)},
      {"nq-i+j+ij", AntiHermForm(H, {i + j + ij}).scaled(nq)},
      {"nq-j", AntiHermForm(H, {j}).scaled(nq)},
      {"nq-2i-ij", AntiHermForm(H, {i.scaled(2) - ij}).scaled(nq)},
      {"i,i,i,-i", AntiHermForm(H, {i, i, i, -i})},
  };
  for (const auto& [name, h] : curated) {
    out.run("odd/H/" + name, [&](Json& w) {
      w["form"] = to_json(h);
      const HyperbolicityResult res = hyperbolicity_certificate(h, 8);
      w["status"] = to_string(res.status);
      return pass_if(res.status == HyperbolicityStatus::Hyperbolic);
    });
  }
  return out.take();
}

// ---- constancy ----

QuadForm random_small_form(Rng& rng, std::size_t max_dim, std::int64_t bound) {
  const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(max_dim) - 1));
  std::vector<Rational> v;
  for (std::size_t k = 0; k < n; ++k) v.emplace_back(rng.nonzero(bound));
  return QuadForm::from_values(v);
}

MixedClass random_mixed_class(const QuatAlgebra& alg, Rng& rng) {
  const QuadForm even = rng.coin() ? random_small_form(rng, 2, 12) : QuadForm();
  std::vector<Quaternion> d;
  const std::int64_t rank = rng.uniform(0, 2);
  for (std::int64_t k = 0; k < rank; ++k) d.push_back(random_pure(alg, rng, 3));
  return MixedClass(alg, WittClass(even), AntiHermForm(alg, d));
}

Report suite_constancy(const RunConfig& cfg) {
  Collector out("constancy");
  for (const auto& [name, alg, count] : std::vector<std::tuple<std::string, QuatAlgebra, std::size_t>>{
           {kHamilton.name, kHamilton.alg, 60}, {kIndefinite.name, kIndefinite.alg, 40}}) {
    Rng rng = stream(cfg, "constancy/" + name);
    const QuadForm nq = norm_forms(alg).n_q;
    for (std::size_t n = 0; n < count; ++n) {
      const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 3));
      std::vector<MixedClass> coeffs{random_mixed_class(alg, rng)};
      for (std::size_t d = 1; d <= 2 * r; ++d) {
        const QuadForm y = rng.uniform(0, 2) == 0 ? QuadForm() : random_small_form(rng, 1, 7);
        coeffs.push_back(MixedClass::even_part(alg, nq * y));
      }
      const LambdaInvariant a(r, coeffs);
      const bool sample = n % 4 == 0;
      const std::uint64_t sample_seed = rng.next();
      out.run("constant/" + name + "/" + pad(n), [&](Json& w) {
        w["invariant"] = to_json(a);
        const ConstancyResult c = is_constant_invariant(a, cfg.search_bound);
        if (c.kind == Decision::Unknown) return CaseStatus::Unknown;
        if (!c.is_constant()) return CaseStatus::Fail;
        const MixedClass expected = chi(r, coeffs);
        const Decision same = mixed_equal(*c.value, expected, cfg.search_bound);
        if (same != Decision::Equal) return same == Decision::Unknown ? CaseStatus::Unknown : CaseStatus::Fail;
        return CaseStatus::Pass;
      });
      if (sample) {
        out.run("versal/" + name + "/" + pad(n), [&](Json& w) {
          w["invariant"] = to_json(a);
          const VersalCheck v = versal_sample_check(a, chi(r, coeffs), 2, sample_seed, 4);
          w["samples"] = v.samples;
          w["unknown"] = v.unknown;
          if (!v.consistent) {
            w["refuting_point"] = to_json(AntiHermForm(alg, v.point));
            return CaseStatus::Fail;
          }
          return v.unknown == v.samples ? CaseStatus::Unknown : CaseStatus::Pass;
        });
      }
    }
    // Controls: an odd coefficient in positive degree is never constant.
    for (std::size_t n = 0; n < 10; ++n) {
      const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 2));
      std::vector<MixedClass> coeffs(2 * r + 1, MixedClass(alg));
      coeffs[1] = MixedClass::odd_part(AntiHermForm(alg, {random_pure(alg, rng, 4)}));
      const LambdaInvariant a(r, coeffs);
      out.run("control/" + name + "/" + pad(n), [&](Json& w) {
        w["invariant"] = to_json(a);
        return pass_if(is_constant_invariant(a, cfg.search_bound).is_nonconstant());
      });
    }
  }
  return out.take();
}

// ---- splitting ----

Report suite_splitting(const RunConfig& cfg) {
  Collector out("splitting");
  for (const auto& [name, alg] : split_algebras()) {
    Rng rng = stream(cfg, "splitting/" + name);
    const Quaternion z0 = find_nilpotent(alg);
    const ConicData conic = conic_parametrize(alg);
    for (std::size_t n = 0; n < 70; ++n) {
      const MixedClass x = random_mixed_class(alg, rng), y = random_mixed_class(alg, rng);
      out.run("phi/" + name + "/" + pad(n), [&](Json& w) {
        w["x"] = to_json(x);
        w["y"] = to_json(y);
        return pass_if(phi_z0(x * y, z0) == phi_z0(x, z0) * phi_z0(y, z0));
      });
      out.run("w0/" + name + "/" + pad(n), [&](Json& w) {
        w["x"] = to_json(x);
        const FunctionFieldForm p = psi_split(x, conic);
        w["psi"] = to_json(p);
        const Decision d = w0_decide(p, conic.affine_places(p));
        if (d == Decision::Unknown) return CaseStatus::Unknown;
        return pass_if(d == Decision::Equal);
      });
    }
    const MixedClass g = psi_kernel_generator(alg);
    const MixedClass nq = MixedClass::even_part(alg, norm_forms(alg).n_q);
    const std::vector<std::tuple<std::string, MixedClass, MixedClass>> kernel{
        {"generator", g, g}, {"2generator", g + g, g + g}, {"3generator", g.scaled(QuadForm{3}), g.scaled(QuadForm{3})},
        {"generator+nq", g + nq, g}, {"nq", nq, MixedClass(alg)}};
    for (const auto& [kname, x, multiple] : kernel) {
      out.run("kernel/" + name + "/" + kname, [&](Json& w) {
        w["x"] = to_json(x);
        if (!kt_is_zero(psi_split(x, conic))) return CaseStatus::Fail;
        return pass_if(mixed_equal(x, multiple, cfg.search_bound) != Decision::Distinct);
      });
    }
    out.run("kernel/" + name + "/not-one", [&](Json&) { return pass_if(!kt_is_zero(psi_split(MixedClass::one(alg), conic))); });
    std::size_t k = 0;
    for (const auto& z : pairing_probes(alg)) {
      out.run("kernel/" + name + "/probe-" + pad(k++), [&](Json& w) {
        w["z"] = to_json(z);
        const bool square = is_rational_square(pure_square(z));
        return pass_if(kt_is_zero(psi_split(MixedClass::odd_part(AntiHermForm(alg, {z})), conic)) == square);
      });
    }
    out.run("identity/" + name + "/psi-ij", [&](Json& w) {
      const Quaternion ij = Quaternion::pure(alg, 0, 0, 1);
      const QuadForm expected = pfister(std::vector<SquareClass>{SquareClass::of(pure_square(ij))}).scaled(SquareClass::of(2));
      const FunctionFieldForm p = psi_split(MixedClass::odd_part(AntiHermForm(alg, {ij})), conic);
      w["psi"] = to_json(p);
      return pass_if(kt_witt_equal(p, FunctionFieldForm::constant(expected)));
    });
  }
  return out.take();
}

// ---- witt ----

// Nonzero integer vector with coordinates in [-bound, bound] and q(x) = 0.
bool brute_isotropic(const std::vector<long long>& a, long long bound) {
  const std::size_t n = a.size();
  std::vector<long long> x(n - 1, -bound);
  auto is_square = [](long long v, long long& root) {
    if (v < 0) return false;
    long long r = static_cast<long long>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    root = r;
    return r * r == v;
  };
  while (true) {
    long long s = 0;
    bool nonzero = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      s += a[k] * x[k] * x[k];
      nonzero = nonzero || x[k] != 0;
    }
    // a_n x_n^2 = -s
    if (-s % a[n - 1] == 0) {
      long long root;
      if (is_square(-s / a[n - 1], root) && (nonzero || root != 0) && root <= bound) return true;
    }
    std::size_t k = 0;
    while (k + 1 < n && x[k] == bound) x[k++] = -bound;
    if (k + 1 == n) return false;
    ++x[k];
  }
}

Report suite_witt(const RunConfig& cfg) {
  Collector out("witt");
  Rng rng = stream(cfg, "witt");
  for (std::size_t n = 0; n < 500; ++n) {
    const QuadForm q = random_small_form(rng, 8, 60);
    out.run("cancel/" + pad(n), [&](Json& w) {
      w["q"] = to_json(q);
      const QuadForm d = q + (-q);
      return pass_if(witt_equal(d, QuadForm()) && WittClass(d).is_zero());
    });
  }
  for (std::size_t n = 0; n < 240; ++n) {
    const std::size_t dim = 2 + static_cast<std::size_t>(rng.uniform(0, 2));
    std::vector<long long> a;
    std::vector<Rational> v;
    for (std::size_t k = 0; k < dim; ++k) {
      a.push_back(rng.nonzero(20));
      v.emplace_back(static_cast<long>(a.back()));
    }
    out.run("isotropy/" + pad(n), [&, a, v](Json& w) {
      Json entries = Json::array();
      for (auto x : a) entries.push_back(x);
      w["entries"] = entries;
      const bool local = is_isotropic(QuadForm::from_values(v));
      const bool found = brute_isotropic(a, a.size() <= 3 ? 200 : 60);
      w["local"] = local;
      w["search"] = found;
      return pass_if(local == found);
    });
  }
  return out.take();
}

// ---- residues ----

const Polynomial& poly_t() {
  static const Polynomial t = Polynomial::variable();
  return t;
}

FFEntry random_ff_entry(Rng& rng, bool quadratics) {
  static const std::vector<Polynomial> linear{poly_t(), Polynomial::linear_root(1), Polynomial::linear_root(-2),
                                              Polynomial::linear_root(3)};
  static const std::vector<Polynomial> quad{Polynomial({Rational(1), Rational(0), Rational(1)}),
                                            Polynomial({Rational(-2), Rational(0), Rational(1)}),
                                            Polynomial({Rational(1), Rational(1), Rational(1)})};
  std::vector<Polynomial> pool = linear;
  if (quadratics) pool.insert(pool.end(), quad.begin(), quad.end());
  std::map<Polynomial, int> f;
  const std::int64_t nf = rng.uniform(0, 2);
  for (std::int64_t k = 0; k < nf; ++k)
    f[pool[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(pool.size()) - 1))]] +=
        static_cast<int>(rng.uniform(-1, 2));
  return FFEntry(Rational(rng.nonzero(12)), f);
}

FunctionFieldForm random_ff_form(Rng& rng, std::size_t max_dim, bool quadratics) {
  std::vector<FFEntry> e;
  const std::int64_t n = rng.uniform(1, static_cast<std::int64_t>(max_dim));
  for (std::int64_t k = 0; k < n; ++k) e.push_back(random_ff_entry(rng, quadratics));
  return FunctionFieldForm(e);
}

int vanishing_order(Polynomial p, const Rational& c, Rational& cofactor) {
  int k = 0;
  const Polynomial l = Polynomial::linear_root(c);
  while (true) {
    auto [q, r] = divmod(p, l);
    if (!r.is_zero()) break;
    p = q;
    ++k;
  }
  cofactor = p(c);
  return k;
}

// Residues from the expanded rational functions.
GroupRingElem laurent_residue(const FunctionFieldForm& q, const Place& v) {
  std::vector<Rational> first, second;
  for (const auto& a : q.entries()) {
    const RationalFunction f = a.value();
    int val;
    Rational u;
    if (v.kind == PlaceKind::Infinite) {
      val = f.den().degree() - f.num().degree();
      u = f.num().leading() / f.den().leading();
    } else {
      Rational un, ud;
      val = vanishing_order(f.num(), -v.pi.coeff(0), un) - vanishing_order(f.den(), -v.pi.coeff(0), ud);
      u = un / ud;
    }
    (val % 2 == 0 ? first : second).push_back(u);
  }
  return {WittClass(QuadForm::from_values(first)), WittClass(QuadForm::from_values(second))};
}

// Specialization of q1 - q2 at five good points: Equal iff all vanish.
std::optional<Decision> five_point_oracle(const FunctionFieldForm& q1, const FunctionFieldForm& q2) {
  const FunctionFieldForm d = q1 + (-q2);
  const std::vector<Rational> candidates{Rational(2),      Rational(3),  Rational(5),  Rational(7),
                                         Rational(1, 2),   Rational(-3, 2), Rational(11), Rational(13),
                                         Rational(5, 3),   Rational(17)};
  int used = 0;
  bool all_zero = true;
  for (const auto& c : candidates) {
    std::vector<Rational> vals;
    bool good = true;
    for (const auto& a : d.entries()) {
      const RationalFunction f = a.value();
      const Rational num = f.num()(c), den = f.den()(c);
      if (sgn(num) == 0 || sgn(den) == 0) {
        good = false;
        break;
      }
      vals.push_back(num / den);
    }
    if (!good) continue;
    if (!witt_equal(QuadForm::from_values(vals), QuadForm())) all_zero = false;
    if (++used == 5) break;
  }
  if (used < 5) return std::nullopt;
  return all_zero ? Decision::Equal : Decision::Distinct;
}

Report suite_residues(const RunConfig& cfg) {
  Collector out("residues");
  Rng rng = stream(cfg, "residues");
  const std::vector<Place> places{Place::poly(poly_t()), Place::poly(Polynomial::linear_root(1)),
                                  Place::poly(Polynomial::linear_root(-2)), Place::infinite()};
  const Polynomial t2p1({Rational(1), Rational(0), Rational(1)});
  for (std::size_t n = 0; n < 220; ++n) {
    const FunctionFieldForm q1 = random_ff_form(rng, 3, true), q2 = random_ff_form(rng, 3, true);
    const Place& v = places[n % places.size()];
    const long wu = rng.nonzero(7);
    const int we = static_cast<int>(rng.uniform(-1, 1));
    out.run("calculus/" + pad(n), [&](Json& w) {
      w["q1"] = to_json(q1);
      w["q2"] = to_json(q2);
      w["place"] = to_json(v);
      const GroupRingElem r1 = residue(q1, v), r2 = residue(q2, v);
      if (!(r1 == laurent_residue(q1, v))) return CaseStatus::Fail;
      if (!(residue(q1 + q2, v) == r1 + r2)) return CaseStatus::Fail;
      if (!(residue(q1 * q2, v) == r1 * r2)) return CaseStatus::Fail;
      // Uniformizer pi w with w a unit at v.
      FFEntry unit(Rational(wu), {{t2p1, we}});
      Rational wbar;
      if (v.kind == PlaceKind::Infinite) {
        unit = unit * FFEntry(Rational(1), {{Polynomial::linear_root(-2), 1}, {poly_t(), -1 - 2 * we}});
        wbar = unit.unit();
      } else {
        wbar = unit.eval(-v.pi.coeff(0));
      }
      const GroupRingElem moved = residue(q1, v, natural_uniformizer(v) * unit);
      return pass_if(moved.even == r1.even && moved.odd == WittClass(r1.odd.anis().scaled(SquareClass::of(wbar))));
    });
  }
  const Polynomial lin3 = Polynomial::linear_root(3);
  std::size_t decided = 0;
  for (std::size_t n = 0; n < 400 && decided < 150; ++n) {
    const FunctionFieldForm q = random_ff_form(rng, 3, n % 3 == 0);
    std::vector<FFEntry> e = q.entries();
    FunctionFieldForm q1 = q;
    const std::int64_t kind = rng.uniform(0, 3);
    if (kind == 0) {
      std::reverse(e.begin(), e.end());
      e.front() = e.front() * FFEntry(Rational(rng.nonzero(5)), {{lin3, 1}}).pow(2);
    } else if (kind == 1) {
      const FFEntry f = random_ff_entry(rng, false);
      e.push_back(f);
      e.push_back(-f);
      std::swap(e.front(), e.back());
    } else if (kind == 2) {
      // <f, f> = <f s, f s> for s = 1 + t^2.
      const FFEntry f = q.entries().front();
      q1 = q + FunctionFieldForm({f, f});
      e.push_back(f * FFEntry(Rational(1), {{t2p1, 1}}));
      e.push_back(f * FFEntry(Rational(1), {{t2p1, 1}}));
    } else {
      e.front() = e.front() * FFEntry(Rational(1), {{poly_t(), 1}});
    }
    const FunctionFieldForm q2(e);
    const Decision d = kt_witt_decide(q1, q2);
    const auto oracle = five_point_oracle(q1, q2);
    if (d == Decision::Unknown || !oracle) continue;
    ++decided;
    out.run("equality/" + pad(n), [&](Json& w) {
      w["q1"] = to_json(q1);
      w["q2"] = to_json(q2);
      w["decision"] = to_string(d);
      w["oracle"] = to_string(*oracle);
      return pass_if(d == *oracle);
    });
  }
  return out.take();
}

const std::map<std::string, std::function<Report(const RunConfig&)>>& registry() {
  static const std::map<std::string, std::function<Report(const RunConfig&)>> r{
      {"products", suite_products}, {"morita", suite_morita},       {"lambda", suite_lambda},
      {"relations", suite_relations}, {"constancy", suite_constancy}, {"splitting", suite_splitting},
      {"witt", suite_witt},           {"residues", suite_residues}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"products",  "morita",    "lambda", "relations",
                                              "constancy", "splitting", "witt",   "residues"};
  return names;
}

Report run_suite(const std::string& name, const RunConfig& config) {
  if (name == "all") {
    Report all{"all", {}};
    for (const auto& n : suite_names()) {
      Report r = registry().at(n)(config);
      for (auto& c : r.cases) {
        c.id = n + "/" + c.id;
        all.cases.push_back(std::move(c));
      }
    }
    std::sort(all.cases.begin(), all.cases.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    return all;
  }
  auto it = registry().find(name);
  if (it == registry().end()) fail(ErrorCode::UnknownSuite, "no suite named \"" + name + "\"");
  return it->second(config);
}

std::string emit_report(const Report& r, OutputMode mode) {
  const Totals t = r.totals();
  if (mode == OutputMode::Json) {
    Json cases = Json::array();
    for (const auto& c : r.cases) {
      Json j{{"id", c.id}, {"status", to_string(c.status)}};
      if (c.witness) j["witness"] = *c.witness;
      cases.push_back(j);
    }
    Json doc{{"suite", r.suite},
             {"cases", cases},
             {"totals", {{"total", t.total()}, {"pass", t.pass}, {"fail", t.fail}, {"unknown", t.unknown}}}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "suite " << r.suite << ": " << t.total() << " cases, " << t.pass << " pass, " << t.fail << " fail, " << t.unknown
      << " unknown\n";
  for (const auto& c : r.cases) {
    if (c.status == CaseStatus::Pass) continue;
    out << "  " << to_string(c.status) << " " << c.id;
    if (c.witness) out << " " << c.witness->dump();
    out << "\n";
  }
  return out.str();
}

}  // namespace witt
