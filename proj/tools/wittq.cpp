// wittq: command-line front end to the witt library.
//
// Inputs are JSON documents given inline, as @path, or as - for stdin.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "witt/error.hpp"
#include "witt/suites.hpp"

using namespace witt;

namespace {

std::string read_document(const std::string& arg) {
  if (arg == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) fail(ErrorCode::SchemaViolation, "cannot read " + arg.substr(1));
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  return arg;
}

FieldSpec parse_field(const std::string& s) {
  if (s == "Q") return FieldSpec::rationals();
  if (s == "Qt") return FieldSpec::rational_functions(FieldSpec::rationals());
  if (s.rfind("Fp:", 0) == 0) return FieldSpec::prime_field(std::stoull(s.substr(3)));
  throw CLI::ValidationError("--field", "expected Q, Qt or Fp:<p>");
}

struct Printer {
  OutputMode mode;

  // Text mode prints `text`; json mode prints `j`.
  void operator()(const Json& j, const std::string& text) const {
    if (mode == OutputMode::Json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << text << "\n";
  }
};

std::string group_ring_text(const GroupRingElem& g) {
  return "first residue " + g.even.to_string() + ", second residue " + g.odd.to_string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Witt rings of quaternion algebras with involution"};
  app.require_subcommand(1);

  std::string field = "Q";
  std::vector<std::string> quat{"-1", "-1"};
  std::uint64_t seed = 0, search_bound = kDefaultSearchBound, factor_bound = kDefaultFactorBound;
  std::string output = "text";
  app.add_option("--field", field, "Q, Qt or Fp:<p>");
  app.add_option("--quat", quat, "quaternion algebra (a, b)")->expected(2);
  app.add_option("--seed", seed);
  app.add_option("--search-bound", search_bound)->check(CLI::PositiveNumber);
  app.add_option("--factor-bound", factor_bound)->check(CLI::PositiveNumber);
  app.add_option("--output", output)->check(CLI::IsMember({"text", "json"}));

  std::string x_arg, y_arg, place_arg, unif_arg, z0_arg, suite;
  std::size_t degree = 0;

  auto* prod = app.add_subcommand("prod", "product in the mixed Witt ring");
  prod->add_option("x", x_arg)->required();
  prod->add_option("y", y_arg)->required();

  auto* lambda = app.add_subcommand("lambda", "exterior power of a quadratic or skew-hermitian form");
  lambda->add_option("d", degree)->required();
  lambda->add_option("form", x_arg)->required();

  auto* transfer = app.add_subcommand("transfer", "Morita transfer of a skew-hermitian form (split algebra)");
  transfer->add_option("form", x_arg)->required();
  transfer->add_option("--z0", z0_arg, "nilpotent pure quaternion; searched for when absent");

  auto* residue_cmd = app.add_subcommand("residue", "first and second residues of a form over Q(t)");
  residue_cmd->add_option("form", x_arg)->required();
  residue_cmd->add_option("--place", place_arg, "\"inf\" or a monic irreducible polynomial")->required();
  residue_cmd->add_option("--uniformizer", unif_arg, "entry with valuation 1 at the place");

  auto* decide = app.add_subcommand("decide", "equality of two Witt classes");
  decide->add_option("x", x_arg)->required();
  decide->add_option("y", y_arg)->required();

  auto* psi = app.add_subcommand("psi", "image over the function field of the conic");
  psi->add_option("x", x_arg)->required();

  auto* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("suite", suite)->required();

  CLI11_PARSE(app, argc, argv);

  const OutputMode mode = output == "json" ? OutputMode::Json : OutputMode::Text;
  const Printer print{mode};
  try {
    RunConfig cfg;
    cfg.field = parse_field(field);
    cfg.a = parse_rational(quat[0]);
    cfg.b = parse_rational(quat[1]);
    cfg.seed = seed;
    cfg.search_bound = search_bound;
    cfg.factor_bound = factor_bound;
    cfg.output = mode;
    const ParseContext ctx = cfg.context();
    auto parse = [&](const std::string& arg) { return parse_input(read_document(arg), ctx); };

    if (*check) {
      const Report r = run_suite(suite, cfg);
      std::cout << emit_report(r, mode);
      return r.exit_code();
    }
    if (*prod) {
      const ParsedInput x = parse(x_arg), y = parse(y_arg);
      if (std::holds_alternative<QuadForm>(x) && std::holds_alternative<QuadForm>(y)) {
        const QuadForm q = std::get<QuadForm>(x) * std::get<QuadForm>(y);
        print(to_json(q), q.to_string());
      } else {
        const MixedClass m = as_mixed(x, ctx) * as_mixed(y, ctx);
        print(to_json(m), m.to_string());
      }
    } else if (*lambda) {
      const ParsedInput x = parse(x_arg);
      if (const auto* q = std::get_if<QuadForm>(&x)) {
        const QuadForm l = lambda_quad(degree, *q);
        print(to_json(l), l.to_string());
      } else {
        const MixedClass m = as_mixed(x, ctx);
        if (!m.is_odd()) fail(ErrorCode::SchemaViolation, "lambda expects a quadratic or skew-hermitian form");
        const MixedClass l = lambda_herm(degree, m.odd());
        print(to_json(l), l.to_string());
      }
    } else if (*transfer) {
      const MixedClass m = as_mixed(parse(x_arg), ctx);
      const Quaternion z0 = z0_arg.empty() ? find_nilpotent(ctx.alg)
                                           : quaternion_from_json(Json::parse(read_document(z0_arg)), ctx.alg);
      const QuadForm q = morita_transfer(m.odd(), z0);
      print(Json{{"z0", to_json(z0)}, {"form", to_json(q)}, {"witt_class", to_json(WittClass(q))}},
            q.to_string() + "  (Witt class " + WittClass(q).to_string() + ", z0 = " + z0.to_string() + ")");
    } else if (*residue_cmd) {
      const FunctionFieldForm q = ff_from_json(Json::parse(read_document(x_arg)));
      const Json place_json = place_arg == "inf" ? Json("inf") : Json::parse(read_document(place_arg));
      const Place v = place_from_json(place_json, "/place");
      if (v.kind == PlaceKind::Poly && v.pi.degree() == 2) {
        const QuadraticResidue r = residue_quadratic(q, v);
        print(to_json(r), to_json(r).dump());
      } else {
        const GroupRingElem g = unif_arg.empty()
                                    ? residue(q, v)
                                    : residue(q, v, ff_from_json(Json{{"entries", Json::array({Json::parse(read_document(unif_arg))})}}).entries().front());
        print(to_json(g), group_ring_text(g));
      }
    } else if (*decide) {
      const ParsedInput x = parse(x_arg), y = parse(y_arg);
      Decision d;
      if (std::holds_alternative<FunctionFieldForm>(x) && std::holds_alternative<FunctionFieldForm>(y))
        d = kt_witt_decide(std::get<FunctionFieldForm>(x), std::get<FunctionFieldForm>(y));
      else if (std::holds_alternative<LambdaInvariant>(x) && std::holds_alternative<LambdaInvariant>(y))
        d = invariant_equal(std::get<LambdaInvariant>(x), std::get<LambdaInvariant>(y), cfg.search_bound);
      else if (std::holds_alternative<QuadForm>(x) && std::holds_alternative<QuadForm>(y))
        d = witt_equal(std::get<QuadForm>(x), std::get<QuadForm>(y)) ? Decision::Equal : Decision::Distinct;
      else
        d = mixed_equal(as_mixed(x, ctx), as_mixed(y, ctx), cfg.search_bound);
      print(Json{{"decision", to_string(d)}}, to_string(d));
    } else if (*psi) {
      const FunctionFieldForm q = psi_split(as_mixed(parse(x_arg), ctx));
      print(to_json(q), q.to_string());
    }
  } catch (const Error& e) {
    if (mode == OutputMode::Json)
      std::cout << Json{{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}}.dump(2) << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
