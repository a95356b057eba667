#include <gtest/gtest.h>

#include "normtorus/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace normtorus;

namespace {

int exit_code_of(const std::string& rel) {
  try {
    const Report r = run(fixtures::load(rel));
    return r.oracle && r.oracle->verdict == "MISMATCH" ? kExitMismatch : kExitOk;
  } catch (const Error& e) {
    return exit_code_for(e.kind());
  }
}

}  // namespace

TEST(Pipeline, KleinWithOracle) {
  const Report r = run(fixtures::load("catalogue/klein_bicyclic.json"));
  EXPECT_EQ(r.invariant_factors, (std::vector<std::int64_t>{2}));
  ASSERT_TRUE(r.oracle);
  EXPECT_EQ(r.oracle->verdict, "MATCH");
  EXPECT_FALSE(r.global);
}

TEST(Pipeline, Z4SquaredNamesOneTerm) {
  const Report r = run(fixtures::load("catalogue/z4_squared_bicyclic.json"));
  EXPECT_EQ(r.invariant_factors, (std::vector<std::int64_t>{4}));
  ASSERT_EQ(r.parts.size(), 1u);
  ASSERT_EQ(r.parts[0].expressions.size(), 1u);
  EXPECT_EQ(r.parts[0].expressions[0].find(" + "), std::string::npos);
  EXPECT_NE(r.parts[0].expressions[0].find("(N_"), std::string::npos);
}

TEST(Pipeline, ErrorSamplesExitTwo) {
  for (const auto& f : fixtures::list("errors")) EXPECT_EQ(exit_code_of(f), kExitInput) << f;
}

TEST(Pipeline, NotNormalIsNotCyclic) {
  try {
    run(fixtures::load("errors/s3_not_normal.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_cyclic);
  }
}

TEST(Pipeline, BudgetExitCode) {
  RunOverrides o;
  o.oracle = true;
  o.oracle_budget = 4;
  try {
    run(fixtures::load("catalogue/z4_squared_bicyclic.json"), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(exit_code_for(e.kind()), kExitBudget);
  }
}

TEST(Pipeline, GlobalRequiresPrimePower) {
  JobConfig c = fixtures::load("composite/z6_two_factors.json");
  c.ramified = std::vector<SubgroupSpec>{};
  try {
    run(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(exit_code_for(e.kind()), kExitInput);
  }
}

TEST(Pipeline, QiFixtureGlobal) {
  RunOverrides o;
  o.ramified = parse_ramified(read_json_file(fixtures::sample_path("qi_fixture/ramified.json")));
  o.invariants = parse_invariants(read_json_file(fixtures::sample_path("qi_fixture/invariants_demo.json")));
  const Report r = run(fixtures::load("qi_fixture/config.json"), o);
  ASSERT_TRUE(r.global);
  EXPECT_EQ(r.global->arith_factors, (std::vector<std::int64_t>{2}));
  EXPECT_EQ(r.global->omega_factors, (std::vector<std::int64_t>{4}));
  EXPECT_EQ(r.global->g_equivalence, "agree");
  EXPECT_EQ(r.global->g_checked, 16u);
  ASSERT_TRUE(r.global->pairing);
  EXPECT_TRUE(r.global->pairing->obstruction);
  EXPECT_EQ(r.global->pairing->values, (std::vector<std::string>{"1/2"}));
}

TEST(Report, RoundTrip) {
  RunOverrides o;
  o.ramified = parse_ramified(read_json_file(fixtures::sample_path("qi_fixture/ramified.json")));
  o.invariants = parse_invariants(read_json_file(fixtures::sample_path("qi_fixture/invariants_zero.json")));
  for (const Report& r : {run(fixtures::load("catalogue/d8_cyclic_k.json")), run(fixtures::load("qi_fixture/config.json"), o),
                          run(fixtures::load("composite/z6xz2_three.json"))})
    EXPECT_EQ(parse_machine(emit_machine(r)), r);
}

TEST(Report, NoGlobalKeysWithoutGlobalData) {
  const std::string text = emit_machine(run(fixtures::load("catalogue/klein_single.json")));
  EXPECT_EQ(text.find("\"global\""), std::string::npos);
  EXPECT_EQ(text.find("ramified"), std::string::npos);
}

TEST(Report, TwoPrimePartsRender) {
  const Report r = run(fixtures::load("composite/z6_two_factors.json"));
  ASSERT_EQ(r.parts.size(), 2u);
  const std::string text = emit_text(r);
  EXPECT_NE(text.find("p = 2"), std::string::npos);
  EXPECT_NE(text.find("p = 3"), std::string::npos);
}

TEST(Report, Deterministic) {
  const JobConfig c = fixtures::load("catalogue/z4_semidirect_three.json");
  EXPECT_EQ(emit_machine(run(c)), emit_machine(run(c)));
  EXPECT_EQ(emit_text(run(c)), emit_text(run(c)));
}

TEST(Report, SchemaTag) {
  const std::string text = emit_machine(run(fixtures::load("catalogue/klein_single.json")));
  EXPECT_NE(text.find(kReportSchema), std::string::npos);
}

TEST(Config, RejectsAmbiguousGroup) {
  const auto c = fixtures::from_text(
      R"json({"group": {"cyclic_product": [2], "table": [[0]]}, "K": [], "factors": [{"label": "K1", "generators": []}]})json");
  try {
    build_group(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::input);
  }
}

TEST(Config, InvariantNumbersAsStrings) {
  const auto v = to_local_invariants(parse_invariants(Json::parse(R"([{"place": "v", "factor": 1, "num": "3", "den": "8"}])")));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].numerator, 3);
  EXPECT_EQ(v[0].denominator, 8);
}
