#include <functional>

#include "doctest.h"
#include "witt/error.hpp"
#include "witt/suites.hpp"

using namespace witt;

namespace {

ParseContext ctx() { return ParseContext{}; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ZeroElement;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse examples") {
  const ParsedInput q = parse_input(R"({"diag":["1","-2"]})", ctx());
  REQUIRE(std::holds_alternative<QuadForm>(q));
  CHECK(std::get<QuadForm>(q).entries() == QuadForm{1, -2}.entries());

  const ParsedInput h = parse_input(R"({"herm_diag":[["0","1","0","0"]]})", ctx());
  REQUIRE(std::holds_alternative<AntiHermForm>(h));
  const QuatAlgebra H(-1, -1);
  CHECK(std::get<AntiHermForm>(h).entries() == std::vector<Quaternion>{Quaternion::pure(H, 1, 0, 0)});

  CHECK(code_of([] { parse_input(R"({"diag":["0"]})", ctx()); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse_input(R"({"diag":["1/0"]})", ctx()); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse_input(R"({"diag":"1"})", ctx()); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse_input("not json", ctx()); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse_input(R"({"shape":1})", ctx()); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse_input(R"({"herm_diag":[["1","0","0","0"]]})", ctx()); }) == ErrorCode::SchemaViolation);
  CHECK(message_of([] { parse_input(R"({"diag":["1","x"]})", ctx()); }).find("/diag/1:") != std::string::npos);
}

TEST_CASE("serialize after parse is the normalized document") {
  const std::vector<std::string> docs{
      R"({"diag":["1","-2","3/4"]})",
      R"({"gram":[["1","1"],["1","3"]]})",
      R"({"herm_diag":[["0","1","0","0"],["0","1","1","1"]]})",
      R"({"even":{"diag":["2"]},"odd":{"herm_diag":[["0","0","1","0"]]}})",
      R"({"entries":[{"unit":"3","factors":[{"poly":["1","0","1"],"exp":1,"irreducible":false}]},{"unit":"-1","factors":[]}]})",
      R"({"a":"2","b":"7"})",
      R"(["1","2","-3","1/2"])",
  };
  for (const auto& d : docs) {
    const Json once = serialize(parse_input(d, ctx()));
    const Json twice = serialize(parse_input(once.dump(), ctx()));
    CHECK(once == twice);
  }
  // Integers and strings denote the same rationals.
  CHECK(serialize(parse_input(R"({"diag":[1,-2]})", ctx())) == serialize(parse_input(R"({"diag":["1","-2"]})", ctx())));
  // The stored representative is the square class.
  CHECK(serialize(parse_input(R"({"diag":["8"]})", ctx())) == serialize(parse_input(R"({"diag":["2"]})", ctx())));
}

TEST_CASE("report totals and exit codes") {
  const Report empty{"empty", {}};
  const Totals t = empty.totals();
  CHECK(t.total() == 0);
  CHECK(empty.exit_code() == 0);
  const Json j = Json::parse(emit_report(empty, OutputMode::Json));
  CHECK(j["totals"]["pass"] == 0);
  CHECK(j["totals"]["fail"] == 0);
  CHECK(j["totals"]["unknown"] == 0);
  CHECK(j["cases"].empty());

  Report one_fail{"x", {{"a", CaseStatus::Pass, std::nullopt}, {"b", CaseStatus::Fail, Json{{"why", "mismatch"}}}}};
  CHECK(one_fail.exit_code() != 0);
  const Json f = Json::parse(emit_report(one_fail, OutputMode::Json));
  CHECK(f["totals"]["fail"] == 1);
  CHECK(f["cases"][1]["witness"]["why"] == "mismatch");
  CHECK(!f["cases"][0].contains("witness"));
  CHECK(emit_report(one_fail, OutputMode::Text).find("fail b") != std::string::npos);

  Report unknown_only{"u", {{"c", CaseStatus::Unknown, Json{{"bound", 8}}}}};
  CHECK(unknown_only.exit_code() == 0);
  CHECK(unknown_only.totals().unknown == 1);
  const std::string text = emit_report(unknown_only, OutputMode::Text);
  CHECK(text.find("1 unknown") != std::string::npos);
  CHECK(text.find("unknown c") != std::string::npos);
}

TEST_CASE("unknown suite") {
  CHECK(code_of([] { run_suite("nonsense", RunConfig{}); }) == ErrorCode::UnknownSuite);
}

TEST_CASE("suites are deterministic and sorted") {
  RunConfig cfg;
  cfg.seed = 1;
  const std::string a = emit_report(run_suite("all", cfg), OutputMode::Json);
  const std::string b = emit_report(run_suite("all", cfg), OutputMode::Json);
  CHECK(a == b);
  const Json j = Json::parse(a);
  std::string previous;
  for (const auto& c : j["cases"]) {
    CHECK(previous < c["id"].get<std::string>());
    previous = c["id"].get<std::string>();
  }
  for (const auto& name : suite_names()) CHECK(a.find("\"" + name + "/") != std::string::npos);
  CHECK(j["totals"]["fail"] == 0);
}
