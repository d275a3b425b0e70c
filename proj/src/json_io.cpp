#include "witt/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "witt/error.hpp"

namespace witt {

namespace {

[[noreturn]] void violation(const std::string& ptr, const std::string& what) {
  fail(ErrorCode::SchemaViolation, (ptr.empty() ? "/" : ptr) + ": " + what);
}

std::string child(const std::string& ptr, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return ptr + "/" + escaped;
}

std::string child(const std::string& ptr, std::size_t k) { return ptr + "/" + std::to_string(k); }

const Json& member(const Json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) violation(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) violation(ptr, "missing member \"" + key + "\"");
  return *it;
}

const Json& array(const Json& j, const std::string& ptr) {
  if (!j.is_array()) violation(ptr, "expected an array");
  return j;
}

Rational nonzero_rational(const Json& j, const std::string& ptr) {
  const Rational r = rational_from_json(j, ptr);
  if (sgn(r) == 0) violation(ptr, "entry must be nonzero");
  return r;
}

std::vector<std::vector<Rational>> rational_matrix(const Json& j, const std::string& ptr) {
  array(j, ptr);
  std::vector<std::vector<Rational>> m;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = child(ptr, r);
    array(j[r], rp);
    if (j[r].size() != j.size()) violation(rp, "matrix must be square");
    std::vector<Rational> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) row.push_back(rational_from_json(j[r][c], child(rp, c)));
    m.push_back(row);
  }
  return m;
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& ptr) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) violation(child(ptr, it.key()), "unexpected member");
  }
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (!j.is_string()) violation(ptr, "expected a rational string \"n\" or \"n/d\"");
  static const std::regex pattern(R"(^\s*[-+]?[0-9]+(\s*/\s*[0-9]+)?\s*$)");
  std::string s = j.get<std::string>();
  if (!std::regex_match(s, pattern)) violation(ptr, "malformed rational \"" + s + "\"");
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }), s.end());
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  const auto slash = s.find('/');
  if (slash != std::string::npos && Integer(s.substr(slash + 1)) == 0) violation(ptr, "zero denominator");
  Rational r(s);
  r.canonicalize();
  return r;
}

Json to_json(const Rational& x) { return x.get_str(); }

FieldSpec field_from_json(const Json& j, const std::string& ptr) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "Q") return FieldSpec::rationals();
    if (s == "Qt") return FieldSpec::rational_functions(FieldSpec::rationals());
    violation(ptr, "unknown field \"" + s + "\"");
  }
  const Json& type = member(j, "type", ptr);
  if (!type.is_string()) violation(child(ptr, "type"), "expected a string");
  const std::string t = type.get<std::string>();
  auto prime = [&]() -> std::uint64_t {
    const Json& p = member(j, "p", ptr);
    if (!p.is_number_unsigned()) violation(child(ptr, "p"), "expected a positive integer");
    return p.get<std::uint64_t>();
  };
  if (t == "Q") return FieldSpec::rationals();
  if (t == "Fp") return FieldSpec::prime_field(prime());
  if (t == "Qt") {
    if (j.contains("p")) return FieldSpec::rational_functions(FieldSpec::prime_field(prime()));
    return FieldSpec::rational_functions(FieldSpec::rationals());
  }
  violation(child(ptr, "type"), "unknown field type \"" + t + "\"");
}

Json to_json(const FieldSpec& f) {
  switch (f.kind()) {
    case FieldKind::Rationals: return {{"type", "Q"}};
    case FieldKind::PrimeField: return {{"type", "Fp"}, {"p", f.p()}};
    case FieldKind::RationalFunctionField:
      if (f.base().is_prime_field()) return {{"type", "Qt"}, {"p", f.p()}};
      return {{"type", "Qt"}};
  }
  return {};
}

Polynomial poly_from_json(const Json& j, const std::string& ptr) {
  array(j, ptr);
  std::vector<Rational> c;
  for (std::size_t k = 0; k < j.size(); ++k) c.push_back(rational_from_json(j[k], child(ptr, k)));
  return Polynomial(c);
}

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

QuadForm quadform_from_json(const Json& j, const ParseContext& ctx, const std::string& ptr) {
  if (!j.is_object()) violation(ptr, "expected {\"diag\": [...]} or {\"gram\": [[...]]}");
  if (j.contains("diag")) {
    only_keys(j, {"diag"}, ptr);
    const std::string dp = child(ptr, "diag");
    const Json& d = array(j["diag"], dp);
    std::vector<Rational> v;
    for (std::size_t k = 0; k < d.size(); ++k) v.push_back(nonzero_rational(d[k], child(dp, k)));
    return QuadForm::from_values(v, ctx.field, ctx.factor_bound);
  }
  if (j.contains("gram")) {
    only_keys(j, {"gram"}, ptr);
    return diagonalize(rational_matrix(j["gram"], child(ptr, "gram")), ctx.field);
  }
  violation(ptr, "expected member \"diag\" or \"gram\"");
}

Json to_json(const QuadForm& q) {
  Json d = Json::array();
  for (const auto& c : q.entries()) d.push_back(to_json(c.value()));
  return {{"diag", d}};
}

Json to_json(const WittClass& w) { return to_json(w.anis()); }

QuatAlgebra algebra_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_object()) violation(ptr, "expected {\"a\": ..., \"b\": ...}");
  only_keys(j, {"a", "b", "field"}, ptr);
  const Rational a = nonzero_rational(member(j, "a", ptr), child(ptr, "a"));
  const Rational b = nonzero_rational(member(j, "b", ptr), child(ptr, "b"));
  const FieldSpec f = j.contains("field") ? field_from_json(j["field"], child(ptr, "field")) : FieldSpec::rationals();
  return QuatAlgebra(a, b, f);
}

Json to_json(const QuatAlgebra& alg) {
  return {{"a", to_json(alg.a())}, {"b", to_json(alg.b())}, {"field", to_json(alg.field())}};
}

Quaternion quaternion_from_json(const Json& j, const QuatAlgebra& alg, const std::string& ptr) {
  array(j, ptr);
  if (j.size() != 4) violation(ptr, "a quaternion has 4 coordinates");
  Quaternion::Coords c;
  for (std::size_t k = 0; k < 4; ++k) c[k] = rational_from_json(j[k], child(ptr, k));
  return Quaternion(alg, c);
}

Json to_json(const Quaternion& z) {
  Json out = Json::array();
  for (std::size_t k = 0; k < 4; ++k) out.push_back(to_json(z[k]));
  return out;
}

AntiHermForm herm_from_json(const Json& j, const ParseContext& ctx, const std::string& ptr) {
  if (!j.is_object()) violation(ptr, "expected {\"herm_diag\": [...]} or {\"herm_gram\": [[...]]}");
  if (j.contains("herm_diag")) {
    only_keys(j, {"herm_diag"}, ptr);
    const std::string dp = child(ptr, "herm_diag");
    const Json& d = array(j["herm_diag"], dp);
    std::vector<Quaternion> v;
    for (std::size_t k = 0; k < d.size(); ++k) {
      v.push_back(quaternion_from_json(d[k], ctx.alg, child(dp, k)));
      if (!v.back().is_pure() || sgn(v.back().nrd()) == 0) violation(child(dp, k), "entry must be pure and invertible");
    }
    return AntiHermForm(ctx.alg, v);
  }
  if (j.contains("herm_gram")) {
    only_keys(j, {"herm_gram"}, ptr);
    const std::string gp = child(ptr, "herm_gram");
    const Json& g = array(j["herm_gram"], gp);
    QuatMatrix m;
    for (std::size_t r = 0; r < g.size(); ++r) {
      const std::string rp = child(gp, r);
      array(g[r], rp);
      if (g[r].size() != g.size()) violation(rp, "matrix must be square");
      QuatVector row;
      for (std::size_t c = 0; c < g[r].size(); ++c) row.push_back(quaternion_from_json(g[r][c], ctx.alg, child(rp, c)));
      m.push_back(row);
    }
    return herm_diagonalize(m, ctx.search_bound).form;
  }
  violation(ptr, "expected member \"herm_diag\" or \"herm_gram\"");
}

Json to_json(const AntiHermForm& h) {
  Json d = Json::array();
  for (const auto& z : h.entries()) d.push_back(to_json(z));
  return {{"herm_diag", d}};
}

MixedClass mixed_from_json(const Json& j, const ParseContext& ctx, const std::string& ptr) {
  if (!j.is_object()) violation(ptr, "expected {\"even\": ..., \"odd\": ...}");
  only_keys(j, {"even", "odd"}, ptr);
  ParseContext inner = ctx;
  inner.field = ctx.alg.field();
  const QuadForm even = j.contains("even") ? quadform_from_json(j["even"], inner, child(ptr, "even")) : QuadForm(inner.field);
  const AntiHermForm odd = j.contains("odd") ? herm_from_json(j["odd"], ctx, child(ptr, "odd")) : AntiHermForm(ctx.alg);
  return MixedClass(ctx.alg, WittClass(even), odd);
}

Json to_json(const MixedClass& x) { return {{"even", to_json(x.even())}, {"odd", to_json(x.odd())}}; }

LambdaInvariant invariant_from_json(const Json& j, const ParseContext& ctx, const std::string& ptr) {
  if (!j.is_object()) violation(ptr, "expected {\"r\": ..., \"coeffs\": [...]}");
  only_keys(j, {"r", "coeffs"}, ptr);
  const Json& r = member(j, "r", ptr);
  if (!r.is_number_unsigned() || r.get<std::uint64_t>() == 0) violation(child(ptr, "r"), "expected a positive integer");
  const std::string cp = child(ptr, "coeffs");
  const Json& c = array(member(j, "coeffs", ptr), cp);
  if (c.size() != 2 * r.get<std::size_t>() + 1) violation(cp, "expected 2r + 1 coefficients");
  std::vector<MixedClass> coeffs;
  for (std::size_t k = 0; k < c.size(); ++k) coeffs.push_back(mixed_from_json(c[k], ctx, child(cp, k)));
  return LambdaInvariant(r.get<std::size_t>(), coeffs);
}

Json to_json(const LambdaInvariant& a) {
  Json c = Json::array();
  for (const auto& x : a.coeffs) c.push_back(to_json(x));
  return {{"r", a.r}, {"coeffs", c}};
}

FunctionFieldForm ff_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_object()) violation(ptr, "expected {\"entries\": [...]}");
  only_keys(j, {"entries"}, ptr);
  const std::string ep = child(ptr, "entries");
  const Json& e = array(member(j, "entries", ptr), ep);
  std::vector<FFEntry> entries;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const std::string p = child(ep, k);
    if (!e[k].is_object()) violation(p, "expected {\"unit\": ..., \"factors\": [...]}");
    only_keys(e[k], {"unit", "factors"}, p);
    FFEntry entry(nonzero_rational(member(e[k], "unit", p), child(p, "unit")));
    if (e[k].contains("factors")) {
      const std::string fp = child(p, "factors");
      const Json& fs = array(e[k]["factors"], fp);
      for (std::size_t l = 0; l < fs.size(); ++l) {
        const std::string q = child(fp, l);
        if (!fs[l].is_object()) violation(q, "expected {\"poly\": [...], \"exp\": e, \"irreducible\": bool}");
        only_keys(fs[l], {"poly", "exp", "irreducible"}, q);
        const Polynomial poly = poly_from_json(member(fs[l], "poly", q), child(q, "poly"));
        if (poly.degree() < 1) violation(child(q, "poly"), "factor must have positive degree");
        const Json& ex = member(fs[l], "exp", q);
        if (!ex.is_number_integer()) violation(child(q, "exp"), "expected an integer");
        const Json& irr = member(fs[l], "irreducible", q);
        if (!irr.is_boolean()) violation(child(q, "irreducible"), "expected a boolean");
        entry = entry * FFEntry::factor(poly, ex.get<int>(), irr.get<bool>());
      }
    }
    entries.push_back(entry);
  }
  return FunctionFieldForm(entries);
}

Json to_json(const FFEntry& e) {
  Json fs = Json::array();
  for (const auto& [g, ex] : e.factors()) fs.push_back({{"poly", to_json(g)}, {"exp", ex}, {"irreducible", true}});
  return {{"unit", to_json(e.unit())}, {"factors", fs}};
}

Json to_json(const FunctionFieldForm& q) {
  Json e = Json::array();
  for (const auto& x : q.entries()) e.push_back(to_json(x));
  return {{"entries", e}};
}

Place place_from_json(const Json& j, const std::string& ptr) {
  if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity")) return Place::infinite();
  const Polynomial p = poly_from_json(j, ptr);
  if (p.degree() < 1 || p.leading() != 1) violation(ptr, "place polynomial must be monic of positive degree");
  if (p.degree() <= 3 && !certify_irreducible(p)) violation(ptr, "place polynomial is reducible");
  return Place::poly(p);
}

Json to_json(const Place& v) {
  if (v.kind == PlaceKind::Infinite) return "inf";
  if (v.kind == PlaceKind::Poly) return to_json(v.pi);
  if (v.kind == PlaceKind::Real) return "real";
  return v.p;
}

Json to_json(const GroupRingElem& g) { return {{"first", to_json(g.even)}, {"second", to_json(g.odd)}}; }

Json to_json(const QuadraticResidue& r) {
  auto list = [](const std::vector<QuadraticElem>& xs) {
    Json out = Json::array();
    for (const auto& u : xs) out.push_back(Json::array({to_json(u.x), to_json(u.y)}));
    return out;
  };
  return {{"modulus", to_json(r.modulus)}, {"first", list(r.first)}, {"second", list(r.second)}};
}

ParsedInput parse_input(const std::string& text, const ParseContext& ctx) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    violation("", std::string("not valid JSON (") + e.what() + ")");
  }
  if (j.is_array()) return quaternion_from_json(j, ctx.alg);
  if (!j.is_object()) violation("", "expected an object or a quaternion array");
  if (j.contains("diag") || j.contains("gram")) return quadform_from_json(j, ctx);
  if (j.contains("herm_diag") || j.contains("herm_gram")) return herm_from_json(j, ctx);
  if (j.contains("r") || j.contains("coeffs")) return invariant_from_json(j, ctx);
  if (j.contains("even") || j.contains("odd")) return mixed_from_json(j, ctx);
  if (j.contains("entries")) return ff_from_json(j);
  if (j.contains("a") || j.contains("b")) return algebra_from_json(j);
  violation("", "unrecognized document shape");
}

Json serialize(const ParsedInput& x) {
  return std::visit([](const auto& v) { return to_json(v); }, x);
}

MixedClass as_mixed(const ParsedInput& x, const ParseContext& ctx) {
  if (const auto* q = std::get_if<QuadForm>(&x)) return MixedClass::even_part(ctx.alg, *q);
  if (const auto* h = std::get_if<AntiHermForm>(&x)) return MixedClass::odd_part(*h);
  if (const auto* z = std::get_if<Quaternion>(&x)) return MixedClass::odd_part(AntiHermForm(ctx.alg, {*z}));
  if (const auto* m = std::get_if<MixedClass>(&x)) return *m;
  violation("", "expected a quadratic form, hermitian form, quaternion or mixed class");
}

}  // namespace witt
