#include <gtest/gtest.h>

#include "normtorus/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace normtorus;

namespace {

const TowerSetup& only_part(const Job& job) {
  EXPECT_EQ(job.parts.size(), 1u);
  return job.parts.front();
}

ClassId class_of(const GammaTable& t, const NamedGroup& g, const std::string& word) {
  return t.classes.class_of[g.resolve_word(word)];
}

}  // namespace

TEST(Tower, KleinFixture) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kKlein));
  const TowerSetup& s = only_part(job);
  EXPECT_EQ(s.p, 2u);
  EXPECT_EQ(s.n, 1u);
  EXPECT_EQ(s.e_top(0), 1u);
  EXPECT_EQ(s.e_top(1), 1u);
  EXPECT_EQ(s.e_hat, 1u);
  ASSERT_EQ(s.blocks.size(), 1u);
  EXPECT_EQ(s.blocks.at(1), (std::vector<std::size_t>{0, 1}));
}

TEST(Tower, Z4Chain) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kZ4));
  const TowerSetup& s = only_part(job);
  EXPECT_EQ(s.n, 2u);
  EXPECT_EQ(s.e[0], (std::vector<unsigned>{0, 0, 1}));
  EXPECT_EQ(s.blocks.at(1), (std::vector<std::size_t>{0}));
  EXPECT_EQ(s.chain[1].size(), 2u);
}

TEST(Tower, TrivialQuotientRejected) {
  const auto c = fixtures::from_text(R"json({"group": {"cyclic_product": [2]}, "K": ["a"],
    "factors": [{"label": "K1", "generators": []}]})json");
  try {
    prepare_job(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_cyclic);
  }
}

TEST(Tower, PrimePowerIdempotent) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kZ4Squared));
  const auto parts = prime_power_parts(job.group.group, job.gk, job.factors);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].gk.elements(), job.gk.elements());
}

TEST(Tower, Z6Parts) {
  const Job job = prepare_job(fixtures::from_text(R"json({"group": {"cyclic_product": [6]}, "K": [],
    "factors": [{"label": "K1", "generators": ["a^3"]}]})json"));
  ASSERT_EQ(job.parts.size(), 2u);
  EXPECT_EQ(job.parts[0].p, 2u);
  EXPECT_EQ(job.parts[0].gk.index(), 2u);
  EXPECT_EQ(job.parts[1].p, 3u);
  EXPECT_EQ(job.parts[1].gk.index(), 3u);
}

TEST(Tower, NotCyclicQuotient) {
  const auto c = fixtures::load("errors/d4_not_cyclic.json");
  try {
    prepare_job(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_cyclic);
  }
}

TEST(Tower, WrongPrimeHint) {
  try {
    prepare_job(fixtures::load("errors/wrong_prime.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_prime_power);
  }
}

TEST(Gamma, KleinFixture) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kKlein));
  const GammaTable t = compute_gamma(only_part(job));
  EXPECT_EQ(t.gamma[0][1], (std::vector<ClassId>{class_of(t, job.group, "b")}));
  EXPECT_EQ(t.gamma[1][1], (std::vector<ClassId>{class_of(t, job.group, "a*b")}));
  EXPECT_EQ(t.levels[0][1], 0u);
  EXPECT_EQ(t.levels[0][0], 1u);
}

TEST(Gamma, DuplicateFactor) {
  const GammaTable t = fixtures::gamma_of(fixtures::kKleinDuplicate);
  EXPECT_EQ(t.gamma[0][1], t.gamma[1][1]);
  EXPECT_EQ(t.levels[0][1], 1u);
}

TEST(Gamma, Z4Table) {
  // G_K = {e}, factor <s^2>: the window at m = 1 is <s^2> \ {e}, at m = 2 it is empty
  const Job job = prepare_job(fixtures::from_text(fixtures::kZ4));
  const GammaTable t = compute_gamma(only_part(job));
  const FiniteGroup& g = *job.group.group;
  std::vector<ClassId> expected;
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) >= 2) expected.push_back(t.classes.class_of[x]);  // <x> contains s^2
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(t.gamma[0][1], expected);
  EXPECT_TRUE(t.gamma[0][2].empty());
  EXPECT_EQ(t.levels[0][0], 1u);
}

TEST(Gamma, DegreePAgreesKlein) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kKlein));
  const auto& s = only_part(job);
  const GammaTable a = compute_gamma(s);
  const GammaTable b = gamma_for_degree_p(s);
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_EQ(a.levels, b.levels);
}

TEST(Gamma, DegreePAgreesS3) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kS3));
  const auto& s = only_part(job);
  EXPECT_EQ(s.p, 2u);
  const GammaTable a = compute_gamma(s);
  const GammaTable b = gamma_for_degree_p(s);
  EXPECT_EQ(a.gamma, b.gamma);
  // both transposition subgroups see the transposition class
  EXPECT_EQ(a.levels[0][1], 1u);
}

TEST(Gamma, DegreePRejectsTowers) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kZ4));
  try {
    gamma_for_degree_p(only_part(job));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
}

TEST(Gamma, NonNormalFactorIsClassLevel) {
  // <s> in S3 is not normal: only one of the three transpositions lies in it,
  // yet the whole transposition class is listed.
  const Job job = prepare_job(fixtures::from_text(fixtures::kS3));
  const GammaTable t = compute_gamma(only_part(job));
  const ClassId tr = class_of(t, job.group, "s");
  EXPECT_TRUE(t.contains(0, 1, tr));
  EXPECT_EQ(t.classes.classes[tr].size(), 3u);
}
