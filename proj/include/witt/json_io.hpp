#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <json.hpp>

#include "witt/generic_splitting.hpp"
#include "witt/lambda_invariants.hpp"

namespace witt {

using Json = nlohmann::json;

/// Everything a parser needs beyond the document itself.
struct ParseContext {
  FieldSpec field = FieldSpec::rationals();
  QuatAlgebra alg = QuatAlgebra(-1, -1);
  std::uint64_t search_bound = kDefaultSearchBound;
  std::uint64_t factor_bound = kDefaultFactorBound;
};

// Parsers throw SchemaViolation with a JSON pointer to the offending node.
// Semantic failures (degenerate matrices, impure entries, ...) keep their own codes.

Rational rational_from_json(const Json& j, const std::string& ptr = "");
FieldSpec field_from_json(const Json& j, const std::string& ptr = "");
Polynomial poly_from_json(const Json& j, const std::string& ptr = "");
QuadForm quadform_from_json(const Json& j, const ParseContext& ctx, const std::string& ptr = "");
QuatAlgebra algebra_from_json(const Json& j, const std::string& ptr = "");
Quaternion quaternion_from_json(const Json& j, const QuatAlgebra& alg, const std::string& ptr = "");
AntiHermForm herm_from_json(const Json& j, const ParseContext& ctx, const std::string& ptr = "");
MixedClass mixed_from_json(const Json& j, const ParseContext& ctx, const std::string& ptr = "");
LambdaInvariant invariant_from_json(const Json& j, const ParseContext& ctx, const std::string& ptr = "");
FunctionFieldForm ff_from_json(const Json& j, const std::string& ptr = "");
Place place_from_json(const Json& j, const std::string& ptr = "");

Json to_json(const Rational& x);
Json to_json(const FieldSpec& f);
Json to_json(const Polynomial& p);
Json to_json(const QuadForm& q);
Json to_json(const WittClass& w);
Json to_json(const QuatAlgebra& alg);
Json to_json(const Quaternion& z);
Json to_json(const AntiHermForm& h);
Json to_json(const MixedClass& x);
Json to_json(const LambdaInvariant& a);
Json to_json(const FFEntry& e);
Json to_json(const FunctionFieldForm& q);
Json to_json(const Place& v);
Json to_json(const GroupRingElem& g);
Json to_json(const QuadraticResidue& r);

using ParsedInput = std::variant<QuadForm, QuatAlgebra, Quaternion, AntiHermForm, MixedClass, LambdaInvariant, FunctionFieldForm>;

/// Parses a JSON document, dispatching on its shape: "diag"/"gram" (quadratic
/// form), "a"/"b" (algebra), a 4-array (quaternion), "herm_diag"/"herm_gram",
/// "even"/"odd" (mixed class), "r"/"coeffs" (invariant), "entries" (form over Q(t)).
ParsedInput parse_input(const std::string& text, const ParseContext& ctx);
Json serialize(const ParsedInput& x);

/// Lifts a parsed quadratic form, hermitian form or mixed class to a mixed class.
MixedClass as_mixed(const ParsedInput& x, const ParseContext& ctx);

}  // namespace witt
