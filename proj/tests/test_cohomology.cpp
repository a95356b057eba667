#include <gtest/gtest.h>

#include <random>

#include "normtorus/pipeline.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace normtorus;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
  IntVector v;
  for (auto x : xs) v.push_back(x);
  return v;
}

std::vector<long long> h2_of(const GroupPtr& g, const GLattice& m) {
  return oracle::to_ll(h2(g, m).structure.invariant_factors);
}

Sha2Result sha_of(const char* text) {
  const Job job = prepare_job(fixtures::from_text(text));
  std::vector<Subgroup> blocks{job.gk};
  for (const auto& f : job.factors) blocks.push_back(f.subgroup);
  return sha2_cycl(job.group.group, character_lattice(job.group.group, blocks));
}

}  // namespace

TEST(H2, CyclicTrivialCoefficients) {
  for (std::uint32_t n : {2u, 3u, 4u, 6u}) {
    const auto g = FiniteGroup::cyclic_product({n});
    EXPECT_EQ(h2_of(g, trivial_module(*g)), std::vector<long long>{n}) << "n = " << n;
  }
}

TEST(H2, KleinTrivialCoefficients) {
  const auto g = FiniteGroup::cyclic_product({2, 2});
  EXPECT_EQ(h2_of(g, trivial_module(*g)), (std::vector<long long>{2, 2}));
}

TEST(H2, RegularModuleVanishes) {
  const auto g = FiniteGroup::cyclic_product({2, 2});
  EXPECT_TRUE(h2_of(g, permutation_module(Subgroup::trivial(g))).empty());
}

TEST(H2, KleinCosetModule) {
  const auto g = FiniteGroup::cyclic_product({2, 2});
  const auto h = subgroup_closure(g, {g->generators()[0]});
  EXPECT_EQ(h2_of(g, permutation_module(h)), std::vector<long long>{2});
}

TEST(H2, CosetModuleMatchesAbelianization) {
  for (const char* file : {"catalogue/s3_single.json", "catalogue/d4_nested.json", "catalogue/q8_center.json"}) {
    const NamedGroup g = build_group(fixtures::load(file));
    for (const auto& h : cyclic_subgroups_up_to_conjugacy(g.group))
      EXPECT_EQ(h2_of(g.group, permutation_module(h)), oracle::abelianization(h)) << file;
    const Subgroup whole = Subgroup::whole(g.group);
    EXPECT_EQ(h2_of(g.group, permutation_module(whole)), oracle::abelianization(whole)) << file;
  }
}

TEST(H2, BudgetEnforced) {
  const auto g = FiniteGroup::cyclic_product({4, 4});
  try {
    h2(g, trivial_module(*g), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::budget_exceeded);
  }
}

TEST(H2, RepresentativesAreCocycles) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kKlein));
  const GLattice m = character_lattice(job.parts.front());
  const auto set = h2(job.group.group, m);
  const detail::CochainIndex ix(Subgroup::whole(job.group.group), m.rank);
  for (const auto& z : set.cocycles())
    EXPECT_TRUE(detail::is_zero_vector(detail::bar_d2_apply(*job.group.group, ix, detail::small_action(m), z)));
}

TEST(Lattice, TwoTrivialFactors) {
  const auto g = FiniteGroup::cyclic_product({2});
  const auto whole = Subgroup::whole(g);
  const GLattice m = character_lattice(g, {whole, whole});
  EXPECT_EQ(m.rank, 1u);
  for (const auto& a : m.action) EXPECT_EQ(a, IntMatrix::identity(1));
}

TEST(Lattice, KleinRank) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kKlein));
  const GLattice m = character_lattice(job.parts.front());
  EXPECT_EQ(m.rank, 5u);
  EXPECT_TRUE(is_action(*job.group.group, m));
}

TEST(Lattice, NonAbelianIsAction) {
  const Job job = prepare_job(fixtures::load("catalogue/d8_dihedral_k.json"));
  std::vector<Subgroup> blocks{job.gk};
  for (const auto& f : job.factors) blocks.push_back(f.subgroup);
  EXPECT_TRUE(is_action(*job.group.group, character_lattice(job.group.group, blocks)));
}

TEST(Sha, KleinFixture) { EXPECT_EQ(oracle::to_ll(sha_of(fixtures::kKlein).structure.invariant_factors), std::vector<long long>{2}); }

TEST(Sha, SingleFactorTrivial) { EXPECT_TRUE(sha_of(fixtures::kKleinSingle).structure.trivial()); }

TEST(Sha, DuplicateMatchesCombinatorial) {
  const GammaTable t = fixtures::gamma_of(fixtures::kKleinDuplicate);
  EXPECT_EQ(sha_of(fixtures::kKleinDuplicate).structure.invariant_factors, brauer_group(t).structure.invariant_factors);
}

TEST(Sha, GeneratorsRestrictTrivially) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kZ4Squared));
  std::vector<Subgroup> blocks{job.gk};
  for (const auto& f : job.factors) blocks.push_back(f.subgroup);
  const GLattice m = character_lattice(job.group.group, blocks);
  const Sha2Result r = sha2_cycl(job.group.group, m);
  EXPECT_EQ(r.structure.invariant_factors, iv({4}));
  for (const auto& c : cyclic_subgroups_up_to_conjugacy(job.group.group)) {
    const SubgroupCohomology sc(c, m);
    for (std::size_t k = 0; k < r.structure.generator_lifts.rows(); ++k)
      EXPECT_TRUE(sc.restriction_is_coboundary(r.structure.generator_lifts.row(k)));
  }
}

TEST(Sha, RestrictionOfCoboundaryIsCoboundary) {
  const Job job = prepare_job(fixtures::from_text(fixtures::kS3));
  const GroupPtr g = job.group.group;
  const GLattice m = character_lattice(job.parts.front());
  const detail::CochainIndex ix(Subgroup::whole(g), m.rank);
  const SparseIntMatrix d1 = detail::bar_d1(*g, ix, detail::small_action(m));
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    IntVector f(ix.c1_dim());
    for (auto& v : f) v = dist(rng);
    const IntVector z = d1.apply(f);
    for (const auto& c : cyclic_subgroups_up_to_conjugacy(g)) EXPECT_TRUE(SubgroupCohomology(c, m).restriction_is_coboundary(z));
  }
}
