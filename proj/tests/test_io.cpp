#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "textile/io.hpp"

using textile::io::Json;

namespace {

textile::io::SystemInput load(const std::string& name) {
  std::ifstream file(std::string(TEXTILE_DATA_DIR) + "/" + name);
  EXPECT_TRUE(file) << name;
  return textile::io::parse_system_input(file);
}

textile::io::SystemInput parse(const std::string& text) {
  std::istringstream is(text);
  return textile::io::parse_system_input(is);
}

textile::io::CheckOutcome check(const std::string& name) {
  const auto in = load(name);
  const auto sys = textile::io::build_from_input(in);
  return textile::io::run_checks(sys, in.kind, textile::default_max_steps(sys), false);
}

} // namespace

TEST(ParseInput, Kinds) {
  EXPECT_EQ(load("exchange_2_3.json").kind, textile::io::KappaKind::Exchange);
  EXPECT_EQ(load("identity.json").kind, textile::io::KappaKind::Canonical);
  const auto explicit_in = load("explicit_swap.json");
  EXPECT_EQ(explicit_in.kind, textile::io::KappaKind::Explicit);
  ASSERT_EQ(explicit_in.entries.size(), 2u);
  EXPECT_EQ(explicit_in.entries[0].beta, "(1,1,2)");
}

TEST(ParseInput, Rejections) {
  EXPECT_THROW(load("malformed.json"), textile::InputError);
  EXPECT_THROW(parse("[1, 2]"), textile::InputError);
  EXPECT_THROW(parse(R"js({"A": [[1]]})js"), textile::InputError);
  EXPECT_THROW(parse(R"js({"A": [[1, 0]], "B": [[1]]})js"), textile::InputError);
  EXPECT_THROW(parse(R"js({"A": [[-1]], "B": [[1]]})js"), textile::InputError);
  EXPECT_THROW(parse(R"js({"A": [[1.5]], "B": [[1]]})js"), textile::InputError);
  EXPECT_THROW(parse(R"js({"A": [[1]], "B": [[1, 0], [0, 1]]})js"), textile::InputError);
  EXPECT_THROW(parse(R"js({"A": [[1]], "B": [[1]], "kappa": "random"})js"), textile::InputError);
  EXPECT_THROW(parse(R"js({"A": [[1]], "B": [[1]], "kappa": [{"from": ["(1,1,1)"]}]})js"),
               textile::InputError);
}

TEST(BuildFromInput, ErrorClasses) {
  EXPECT_THROW(textile::io::build_from_input(load("noncommuting.json")),
               textile::CommutationError);
  EXPECT_THROW(textile::io::build_from_input(load("not_injective.json")),
               textile::SpecificationError);
  EXPECT_THROW(textile::io::build_from_input(load("unknown_edge.json")), textile::InputError);
  EXPECT_THROW(textile::io::build_from_input(
                   parse(R"js({"A": [[1,0],[0,1]], "B": [[1,0],[0,1]], "kappa": "exchange"})js")),
               textile::PreconditionError);
}

TEST(BuildFromInput, ExplicitKappa) {
  const auto sys = textile::io::build_from_input(load("explicit_swap.json"));
  ASSERT_EQ(sys.tiles.size(), 2u);
  EXPECT_EQ(sys.tiles[0].bottom, 1u);
  EXPECT_EQ(sys.tiles[1].bottom, 0u);
  // Edge ids tolerate spaces.
  const auto spaced = textile::io::build_from_input(parse(R"js({"A": [[1]], "B": [[1]],
      "kappa": [{"from": ["(1, 1, 1)", "(1,1,1)"], "to": ["(1,1,1)", "(1,1,1)"]}]})js"));
  EXPECT_EQ(spaced.tiles.size(), 1u);
}

TEST(RunChecks, ExchangeTwoThree) {
  const auto outcome = check("exchange_2_3.json");
  EXPECT_TRUE(outcome.passed);
  const auto& r = outcome.report;
  EXPECT_TRUE(r["checks"]["transitive"]["value"].get<bool>());
  EXPECT_TRUE(r["checks"]["transitive_search"]["value"].get<bool>());
  EXPECT_EQ(r["kgroups"]["k0"]["group"], "Z/8Z");
  EXPECT_EQ(r["kgroups"]["k1"]["group"], "0");
  EXPECT_TRUE(r["closed_form"]["agree"].get<bool>());
  EXPECT_EQ(r["system"]["tiles"], 6);
  for (const auto& [key, value] : r["checks"].items()) {
    EXPECT_TRUE(value.contains("detail")) << key;
    EXPECT_FALSE(value["detail"].get<std::string>().empty()) << key;
  }
}

TEST(RunChecks, IdentityIsNotTransitive) {
  const auto outcome = check("identity.json");
  EXPECT_TRUE(outcome.passed);
  EXPECT_FALSE(outcome.report["checks"]["transitive"]["value"].get<bool>());
  EXPECT_FALSE(outcome.report["checks"]["transitive_search"]["value"].get<bool>());
  EXPECT_NE(outcome.report["checks"]["transitive"]["detail"].get<std::string>().find("no path"),
            std::string::npos);
  EXPECT_FALSE(outcome.report.contains("closed_form"));
}

TEST(RunChecks, CirculantCrossCheck) {
  const auto outcome = check("circulant.json");
  EXPECT_TRUE(outcome.passed);
  EXPECT_TRUE(outcome.report["kgroups"]["h_kappa_cross_check"].get<bool>());
}

TEST(RunChecks, EmitMatrices) {
  const auto in = load("exchange_2_3.json");
  const auto sys = textile::io::build_from_input(in);
  const auto with = textile::io::run_checks(sys, in.kind, 12, true);
  ASSERT_TRUE(with.report.contains("matrices"));
  EXPECT_EQ(with.report["matrices"]["H_kappa"].size(), 12u);
  EXPECT_FALSE(textile::io::run_checks(sys, in.kind, 12, false).report.contains("matrices"));
}

TEST(Report, Deterministic) {
  for (const char* name : {"exchange_3_3.json", "circulant.json", "identity.json"}) {
    const auto first = check(name).report.dump(2);
    const auto second = check(name).report.dump(2);
    EXPECT_EQ(first, second) << name;
    EXPECT_EQ(textile::io::pretty(check(name).report), textile::io::pretty(check(name).report));
  }
}

TEST(Report, FieldOrder) {
  const auto r = check("exchange_2_3.json").report;
  std::vector<std::string> keys;
  for (const auto& [key, value] : r.items()) keys.push_back(key);
  EXPECT_EQ(keys, (std::vector<std::string>{"system", "checks", "structural_checks_passed",
                                            "kgroups", "closed_form"}));
}

TEST(Pretty, Rendering) {
  const Json report{{"system", {{"tiles", 6}, {"kappa", "exchange"}}},
                    {"ok", textile::io::check(true, "fine")},
                    {"rows", Json::array({{{"N", 2}, {"k0", "Z/3Z"}}, {{"N", 10}, {"k0", "0"}}})}};
  const std::string text = textile::io::pretty(report);
  EXPECT_NE(text.find("system:\n  tiles  6\n  kappa  exchange\n"), std::string::npos) << text;
  EXPECT_NE(text.find("ok      true  (fine)\n"), std::string::npos) << text;
  EXPECT_NE(text.find("  N   k0\n  2   Z/3Z\n  10  0\n"), std::string::npos) << text;
}
