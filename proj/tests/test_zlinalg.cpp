#include <gtest/gtest.h>

#include "normtorus/zlinalg.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace normtorus;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
  IntVector v;
  for (auto x : xs) v.push_back(x);
  return v;
}

}  // namespace

TEST(Hermite, IdentityIsFixed) {
  const IntMatrix m{{1, 0}, {0, 1}};
  const auto r = hermite_normal_form(m);
  EXPECT_EQ(r.h, m);
}

TEST(Hermite, TwoByTwo) {
  const IntMatrix m{{2, 4}, {6, 8}};
  const auto r = hermite_normal_form(m);
  EXPECT_EQ(r.h, (IntMatrix{{2, 0}, {0, 4}}));
  EXPECT_EQ(r.u * m, r.h);
  EXPECT_EQ(detail::abs_value(determinant(r.u)), 1);
}

TEST(Hermite, ZeroRow) {
  const IntMatrix m{{0, 0}};
  EXPECT_EQ(hermite_normal_form(m).h, m);
}

TEST(Smith, AlreadyDiagonal) {
  const auto r = smith_normal_form(IntMatrix{{2, 0}, {0, 4}});
  EXPECT_EQ(r.d, (IntMatrix{{2, 0}, {0, 4}}));
}

TEST(Smith, CoprimeDiagonal) {
  const IntMatrix m{{2, 0}, {0, 3}};
  const auto r = smith_normal_form(m);
  EXPECT_EQ(r.d, (IntMatrix{{1, 0}, {0, 6}}));
  EXPECT_EQ(r.u * m * r.v, r.d);
  const auto [d1, d2] = oracle::snf2x2(2, 0, 0, 3);
  EXPECT_EQ(d1, 1);
  EXPECT_EQ(d2, 6);
}

TEST(Smith, Zero) {
  const auto r = smith_normal_form(IntMatrix{{0}});
  EXPECT_EQ(r.d, IntMatrix{{0}});
  EXPECT_EQ(r.rank(), 0u);
}

TEST(Smith, RectangularInverses) {
  const IntMatrix m{{4, 6, 2}, {2, 2, 8}};
  const auto r = smith_normal_form(m);
  EXPECT_EQ(r.u * m * r.v, r.d);
  EXPECT_EQ(r.u * r.u_inv, IntMatrix::identity(2));
  EXPECT_EQ(r.v * r.v_inv, IntMatrix::identity(3));
  EXPECT_EQ(r.d(0, 0), 2);
  EXPECT_EQ(r.d(1, 1), 2);
}

TEST(Quotient, ScaledLattice) {
  const auto q = quotient_structure(LatticeBasis::full(2), LatticeBasis::span(IntMatrix{{2, 0}, {0, 2}}));
  EXPECT_EQ(q.invariant_factors, iv({2, 2}));
}

TEST(Quotient, IndexTwo) {
  const IntMatrix den{{2, 0}, {1, 1}};
  const auto q = quotient_structure(LatticeBasis::full(2), LatticeBasis::span(den));
  EXPECT_EQ(q.invariant_factors, iv({2}));
  EXPECT_EQ(oracle::lattice_quotient({{1, 0}, {0, 1}}, {{2, 0}, {1, 1}}), std::vector<long long>{2});
}

TEST(Quotient, EqualLattices) {
  const auto l = LatticeBasis::span(IntMatrix{{3, 1}, {0, 5}});
  EXPECT_TRUE(quotient_structure(l, l).trivial());
}

TEST(Quotient, ContainmentChecked) {
  const auto num = LatticeBasis::span(IntMatrix{{2, 0}, {0, 2}});
  const auto den = LatticeBasis::span(IntMatrix{{1, 0}, {0, 4}});
  try {
    quotient_structure(num, den);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::containment);
  }
}

TEST(Quotient, RankChecked) {
  const auto den = LatticeBasis::span(IntMatrix{{2, 0}});
  try {
    quotient_structure(LatticeBasis::full(2), den);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::rank);
  }
}

TEST(Quotient, InvariantFactorsNormalize) {
  EXPECT_EQ(invariant_factors_of(iv({2, 3})), iv({6}));
  EXPECT_EQ(invariant_factors_of(iv({4, 1, 2})), iv({2, 4}));
  EXPECT_TRUE(invariant_factors_of(iv({1, 1})).empty());
}

TEST(Kernel, SingleRow) {
  const auto k = kernel_lattice(IntMatrix{{1, 1}});
  ASSERT_EQ(k.rank(), 1u);
  const IntVector v = k.basis().row(0);
  EXPECT_EQ(v[0] + v[1], 0);
  EXPECT_NE(v[0], 0);
  EXPECT_EQ(detail::abs_value(v[0]), 1);
}

TEST(Solve, Identity) {
  const auto x = solve_integer_linear(IntMatrix::identity(2), iv({3, 5}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, iv({3, 5}));
}

TEST(Solve, Parity) { EXPECT_FALSE(solve_integer_linear(IntMatrix{{2}}, iv({3}))); }

TEST(Solve, ExtendedGcd) {
  const IntMatrix a{{2, 3}};
  const auto x = solve_integer_linear(a, iv({1}));
  ASSERT_TRUE(x);
  EXPECT_EQ(2 * (*x)[0] + 3 * (*x)[1], 1);
}

TEST(IntegerSystemTest, CokernelOfDiagonal) {
  const IntegerSystem s(IntMatrix{{2, 0}, {0, 3}, {0, 0}});
  EXPECT_EQ(s.torsion(), iv({6}));
  EXPECT_EQ(s.free_rank(), 1u);
  EXPECT_TRUE(s.in_image(iv({4, 9, 0})));
  EXPECT_FALSE(s.in_image(iv({1, 0, 0})));
  const auto gens = s.torsion_generators();
  ASSERT_EQ(gens.size(), 1u);
  const auto cls = s.classify(gens[0]);
  EXPECT_FALSE(cls.is_zero());
}

TEST(Properties, ReconstructionSmallRun) {
  const auto o = properties::zlinalg_reconstruction(200, 11);
  EXPECT_TRUE(o.ok()) << o.first_failure;
}

TEST(Properties, QuotientCountingSmallRun) {
  const auto o = properties::quotient_counting(150, 12);
  EXPECT_TRUE(o.ok()) << o.first_failure;
}
