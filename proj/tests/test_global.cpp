#include <gtest/gtest.h>

#include "normtorus/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace normtorus;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
  IntVector v;
  for (auto x : xs) v.push_back(x);
  return v;
}

CMap cmap(const TowerSetup& s, std::initializer_list<long long> xs) {
  return CMap::reduce(iv(xs), coordinate_moduli(s), s.p);
}

LocalInvariant inv(const std::string& place, std::size_t i, long long num, long long den) {
  return {place, i, num, den};
}

struct Qi {
  Job job;
  GammaTable gamma;
  std::vector<RamifiedPlace> places;
};

Qi qi_fixture() {
  JobConfig c = fixtures::load("qi_fixture/config.json");
  Job job = prepare_job(c);
  GammaTable gamma = compute_gamma(job.parts.front());
  std::vector<RamifiedPlace> places;
  for (const auto& s : parse_ramified(read_json_file(fixtures::sample_path("qi_fixture/ramified.json"))))
    places.push_back({s.label, job.group.subgroup(s.generators)});
  return {std::move(job), std::move(gamma), std::move(places)};
}

}  // namespace

TEST(VMembership, SplitPlace) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kZ4Squared));
  const TowerSetup& s = job.parts.front();
  const RamifiedPlace v{"v", Subgroup::trivial(job.group.group)};
  for (std::size_t i = 0; i < s.size(); ++i)
    for (unsigned m = 1; m <= s.n; ++m) EXPECT_FALSE(v_membership(v, i, m, s));
}

TEST(VMembership, WholeGroupDisjointFactor) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kZ4Squared));
  const TowerSetup& s = job.parts.front();
  const RamifiedPlace v{"v", Subgroup::whole(job.group.group)};
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_TRUE(v_membership(v, i, s.n, s));
}

TEST(VMembership, KleinInertInK) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kKlein));
  const TowerSetup& s = job.parts.front();
  const RamifiedPlace v{"v", job.gk};
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_FALSE(v_membership(v, i, 1, s));
}

TEST(CArith, EmptyRamifiedCollapses) {
  const GammaTable t = fixtures::gamma_of(fixtures::kZ4Squared);
  const ArithResult a = c_arith(t, {});
  EXPECT_EQ(a.levels, t.levels);
  EXPECT_EQ(a.sha.structure.invariant_factors, a.sha_omega.structure.invariant_factors);
}

TEST(CArith, QiFixture) {
  const Qi q = qi_fixture();
  const ArithResult a = c_arith(q.gamma, q.places);
  EXPECT_EQ(a.sha_omega.structure.invariant_factors, iv({4}));
  EXPECT_EQ(a.sha.structure.invariant_factors, iv({2}));
  ASSERT_EQ(a.sha.expressions.size(), 1u);
  EXPECT_EQ(a.sha.expressions[0].to_string(), "2(N_K2, χ)");
}

TEST(CArith, QiFixtureGEquivalence) {
  const Qi q = qi_fixture();
  const VTable vt = build_vtable(q.gamma, q.places);
  std::size_t checked = 0;
  for (long long x = 0; x < 4; ++x)
    for (long long y = 0; y < 4; ++y) {
      EXPECT_TRUE(g_equivalence_check(cmap(q.gamma.setup, {x, y}), vt).agree()) << x << "," << y;
      ++checked;
    }
  EXPECT_EQ(checked, 16u);
}

TEST(GEquivalence, Constants) {
  const GammaTable t = fixtures::gamma_of(fixtures::kKleinDuplicate);
  const VTable vt = build_vtable(t, {});
  const auto g = g_equivalence_check(cmap(t.setup, {1, 1}), vt);
  EXPECT_TRUE(g.in_c_arith);
  EXPECT_TRUE(g.intersection_empty);
}

TEST(GEquivalence, KleinAccepts) {
  const GammaTable t = fixtures::gamma_of(fixtures::kKlein);
  const auto g = g_equivalence_check(cmap(t.setup, {1, 0}), build_vtable(t, {}));
  EXPECT_TRUE(g.in_c_arith);
  EXPECT_TRUE(g.intersection_empty);
}

TEST(GEquivalence, DuplicateRejects) {
  const GammaTable t = fixtures::gamma_of(fixtures::kKleinDuplicate);
  const auto g = g_equivalence_check(cmap(t.setup, {1, 0}), build_vtable(t, {}));
  EXPECT_FALSE(g.in_c_arith);
  EXPECT_FALSE(g.intersection_empty);
}

TEST(Pairing, AllZero) {
  const GammaTable t = fixtures::gamma_of(fixtures::kKlein);
  const CMap c = cmap(t.setup, {1, 0});
  EXPECT_EQ(brauer_manin_pairing(c, {inv("v", 1, 0, 1), inv("v", 2, 0, 2)}), 0);
}

TEST(Pairing, ConstantsWithReciprocity) {
  const GammaTable t = fixtures::gamma_of(fixtures::kKlein);
  const CMap c = cmap(t.setup, {1, 1});
  // per factor the invariants sum to an integer over the places
  const std::vector<LocalInvariant> table{inv("v", 1, 1, 2), inv("v", 2, 0, 1), inv("w", 1, 1, 2),
                                          inv("w", 2, 0, 1)};
  EXPECT_EQ(brauer_manin_pairing(c, table), 0);
}

TEST(Pairing, SingleTerm) {
  const GammaTable t = fixtures::gamma_of(fixtures::kKlein);
  const CMap c = cmap(t.setup, {1, 0});
  EXPECT_EQ(brauer_manin_pairing(c, {inv("v", 1, 1, 2), inv("v", 2, 0, 1)}), Rational(1, 2));
}

TEST(Pairing, ReducesModOne) {
  const GammaTable t = fixtures::gamma_of(fixtures::kZ4Squared);
  const CMap c = cmap(t.setup, {3, 0});
  EXPECT_EQ(brauer_manin_pairing(c, {inv("v", 1, 3, 4), inv("v", 2, 0, 1)}), Rational(1, 4));
  EXPECT_EQ(brauer_manin_pairing(c, {inv("v", 1, -1, 4), inv("v", 2, 0, 1)}), Rational(1, 4));
}

TEST(Pairing, MalformedDenominator) {
  const GammaTable t = fixtures::gamma_of(fixtures::kKlein);
  try {
    brauer_manin_pairing(cmap(t.setup, {1, 0}), {inv("v", 1, 1, 3), inv("v", 2, 0, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::malformed_invariant);
  }
}

TEST(Pairing, FactorOutOfRange) {
  const GammaTable t = fixtures::gamma_of(fixtures::kKlein);
  try {
    brauer_manin_pairing(cmap(t.setup, {1, 0}), {inv("v", 3, 1, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::malformed_invariant);
  }
}

TEST(Pairing, MissingEntry) {
  const GammaTable t = fixtures::gamma_of(fixtures::kKlein);
  try {
    brauer_manin_pairing(cmap(t.setup, {1, 0}), {inv("v", 1, 1, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::missing_entry);
  }
}

TEST(Pairing, QiDemoObstruction) {
  const Qi q = qi_fixture();
  const ArithResult a = c_arith(q.gamma, q.places);
  const auto entries = to_local_invariants(
      parse_invariants(read_json_file(fixtures::sample_path("qi_fixture/invariants_demo.json"))));
  const PairingVerdict v = pairing_verdict(a.sha, entries);
  ASSERT_EQ(v.values.size(), 1u);
  EXPECT_EQ(v.values[0], Rational(1, 2));
  EXPECT_TRUE(v.obstruction);

  const auto zero = to_local_invariants(
      parse_invariants(read_json_file(fixtures::sample_path("qi_fixture/invariants_zero.json"))));
  EXPECT_FALSE(pairing_verdict(a.sha, zero).obstruction);
}
