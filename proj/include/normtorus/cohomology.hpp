#pragma once

// Brute-force H^2(G, M) and its cyclically trivial part for small G, using
// normalized inhomogeneous cochains.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "normtorus/error.hpp"
#include "normtorus/group.hpp"
#include "normtorus/tower.hpp"
#include "normtorus/zlinalg.hpp"

namespace normtorus {

inline constexpr std::size_t kDefaultOracleBudget = 16;

/// A Z[G]-lattice: one integer matrix per group element acting on columns.
struct GLattice {
  std::size_t rank = 0;
  std::vector<IntMatrix> action;
  std::vector<std::string> labels;
};

inline GLattice trivial_module(const FiniteGroup& g, std::size_t rank = 1) {
  GLattice m;
  m.rank = rank;
  m.action.assign(g.order(), IntMatrix::identity(rank));
  for (std::size_t a = 0; a < rank; ++a) m.labels.push_back("z" + std::to_string(a));
  return m;
}

/// Z[G/H] with g (xH) = gxH.
inline GLattice permutation_module(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  const LeftCosets cosets = left_cosets(h);
  const std::size_t r = cosets.representatives.size();
  GLattice m;
  m.rank = r;
  for (Element x = 0; x < g.order(); ++x) {
    IntMatrix a(r, r);
    for (std::size_t c = 0; c < r; ++c) a(cosets.coset_of[g.mul(x, cosets.representatives[c])], c) = 1;
    m.action.push_back(std::move(a));
  }
  for (Element rep : cosets.representatives) m.labels.push_back(g.label(rep) + "H");
  return m;
}

/// coker(Z -> ⊕_j Z[G/H_j]), 1 mapping to the sum of all coset vectors.
/// Basis: all coset vectors but the last, which equals minus their sum.
inline GLattice character_lattice(const GroupPtr& group, const std::vector<Subgroup>& blocks) {
  detail::ensure(!blocks.empty(), "cohomology", "no blocks for the character lattice");
  std::vector<GLattice> parts;
  std::size_t total = 0;
  for (const auto& h : blocks) {
    parts.push_back(permutation_module(h));
    total += parts.back().rank;
  }
  const std::size_t r = total - 1;
  GLattice m;
  m.rank = r;
  for (Element x = 0; x < group->order(); ++x) {
    IntMatrix big(total, total);
    std::size_t off = 0;
    for (const auto& part : parts) {
      for (std::size_t i = 0; i < part.rank; ++i)
        for (std::size_t j = 0; j < part.rank; ++j) big(off + i, off + j) = part.action[x](i, j);
      off += part.rank;
    }
    // project e_last to -(1,...,1)
    IntMatrix a(r, r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < total; ++i) {
        if (big(i, j) == 0) continue;
        if (i < r) {
          a(i, j) += big(i, j);
        } else {
          for (std::size_t k = 0; k < r; ++k) a(k, j) -= big(i, j);
        }
      }
    m.action.push_back(std::move(a));
  }
  std::size_t b = 0;
  for (const auto& part : parts) {
    for (const auto& l : part.labels) m.labels.push_back("[" + std::to_string(b) + "]" + l);
    ++b;
  }
  m.labels.pop_back();
  return m;
}

/// Blocks G_K, G_{K_1}, ..., G_{K_|I|}.
inline GLattice character_lattice(const TowerSetup& s) {
  std::vector<Subgroup> blocks{s.gk};
  for (const auto& f : s.factors) blocks.push_back(f.subgroup);
  return character_lattice(s.group, blocks);
}

/// A_{gh} = A_g A_h and A_e = 1.
inline bool is_action(const FiniteGroup& g, const GLattice& m) {
  if (m.action.size() != g.order()) return false;
  if (!(m.action[g.identity()] == IntMatrix::identity(m.rank))) return false;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (!(m.action[g.mul(a, b)] == m.action[a] * m.action[b])) return false;
  return true;
}

namespace detail {

// Index bookkeeping for cochains on a subgroup's non-identity elements.
struct CochainIndex {
  std::vector<Element> elements;     // non-identity, sorted
  std::vector<std::int64_t> pos;     // group element -> position, -1 if absent
  std::size_t rank = 0;

  CochainIndex(const Subgroup& c, std::size_t module_rank) : pos(c.parent()->order(), -1), rank(module_rank) {
    for (Element x : c.elements())
      if (x != c.parent()->identity()) {
        pos[x] = static_cast<std::int64_t>(elements.size());
        elements.push_back(x);
      }
  }
  std::size_t k() const noexcept { return elements.size(); }
  std::size_t c1_dim() const noexcept { return k() * rank; }
  std::size_t c2_dim() const noexcept { return k() * k() * rank; }
  std::size_t c1(Element g, std::size_t a) const { return static_cast<std::size_t>(pos[g]) * rank + a; }
  std::size_t c2(Element g, Element h, std::size_t a) const {
    return (static_cast<std::size_t>(pos[g]) * k() + static_cast<std::size_t>(pos[h])) * rank + a;
  }
};

using SmallMatrix = std::vector<std::vector<long long>>;

inline std::vector<SmallMatrix> small_action(const GLattice& m) {
  std::vector<SmallMatrix> out;
  for (const auto& a : m.action) {
    SmallMatrix s(m.rank, std::vector<long long>(m.rank));
    for (std::size_t i = 0; i < m.rank; ++i)
      for (std::size_t j = 0; j < m.rank; ++j) s[i][j] = static_cast<long long>(a(i, j));
    out.push_back(std::move(s));
  }
  return out;
}

// (d1 f)(g,h) = g.f(h) - f(gh) + f(g)
inline SparseIntMatrix bar_d1(const FiniteGroup& g, const CochainIndex& ix, const std::vector<SmallMatrix>& act) {
  SparseIntMatrix d(ix.c2_dim(), ix.c1_dim());
  const std::size_t r = ix.rank;
  for (Element x : ix.elements)
    for (std::size_t b = 0; b < r; ++b) {
      const std::size_t col = ix.c1(x, b);
      for (Element y : ix.elements) {
        for (std::size_t a = 0; a < r; ++a)
          if (act[y][a][b] != 0) d.add(ix.c2(y, x, a), col, BigInt(act[y][a][b]));
        const Element h = g.mul(g.inverse(y), x);
        if (h != g.identity()) d.add(ix.c2(y, h, b), col, BigInt(-1));
        d.add(ix.c2(x, y, b), col, BigInt(1));
      }
    }
  return d;
}

// (d2 f)(g,h,k) = g.f(h,k) - f(gh,k) + f(g,hk) - f(g,h), evaluated on every triple
inline IntVector bar_d2_apply(const FiniteGroup& g, const CochainIndex& ix, const std::vector<SmallMatrix>& act,
                              const IntVector& f) {
  const std::size_t r = ix.rank;
  const std::size_t k = ix.k();
  IntVector out(k * k * k * r);
  auto value = [&](Element a, Element b, std::size_t c) -> BigInt {
    if (a == g.identity() || b == g.identity()) return 0;
    return f[ix.c2(a, b, c)];
  };
  std::size_t idx = 0;
  for (Element x : ix.elements)
    for (Element y : ix.elements)
      for (Element z : ix.elements)
        for (std::size_t a = 0; a < r; ++a, ++idx) {
          BigInt v = 0;
          for (std::size_t b = 0; b < r; ++b)
            if (act[x][a][b] != 0) v += act[x][a][b] * value(y, z, b);
          v -= value(g.mul(x, y), z, a);
          v += value(x, g.mul(y, z), a);
          v -= value(x, y, a);
          out[idx] = v;
        }
  return out;
}

inline bool is_zero_vector(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline void check_budget(const FiniteGroup& g, std::size_t budget) {
  if (g.order() > budget)
    throw Error(ErrorKind::budget_exceeded, "cohomology",
                "|G| = " + std::to_string(g.order()) + " exceeds the oracle budget " + std::to_string(budget));
}

}  // namespace detail

struct CocycleClassSet {
  std::size_t c1_dim = 0;
  std::size_t c2_dim = 0;
  std::size_t c3_dim = 0;
  AbelianGroupStructure structure;  // generator_lifts: representative 2-cocycles
  std::vector<IntVector> cocycles() const {
    std::vector<IntVector> out;
    for (std::size_t k = 0; k < structure.generator_lifts.rows(); ++k) out.push_back(structure.generator_lifts.row(k));
    return out;
  }
};

/// H^2(G, M) as the torsion of C^2 / d1(C^1).
inline CocycleClassSet h2(const GroupPtr& group, const GLattice& m, std::size_t budget = kDefaultOracleBudget) {
  const FiniteGroup& g = *group;
  detail::check_budget(g, budget);
  const detail::CochainIndex ix(Subgroup::whole(group), m.rank);
  const auto act = detail::small_action(m);
  const IntegerSystem system(detail::bar_d1(g, ix, act), false);

  CocycleClassSet out;
  out.c1_dim = ix.c1_dim();
  out.c2_dim = ix.c2_dim();
  out.c3_dim = ix.k() * ix.c2_dim();
  out.structure.invariant_factors = system.torsion();
  out.structure.generator_lifts = IntMatrix::from_rows(system.torsion_generators(), ix.c2_dim());

  for (const auto& d : out.structure.invariant_factors)
    detail::ensure(BigInt(g.order()) % d == 0, "cohomology", "H^2 exponent does not divide |G|");
  for (const auto& z : out.cocycles())
    detail::ensure(detail::is_zero_vector(detail::bar_d2_apply(g, ix, act, z)), "cohomology",
                   "representative fails the cocycle condition");
  // d2 d1 = 0 on random cochains
  const SparseIntMatrix d1 = detail::bar_d1(g, ix, act);
  std::mt19937 rng(0x5eed);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int probe = 0; probe < 2; ++probe) {
    IntVector f(ix.c1_dim());
    for (auto& v : f) v = dist(rng);
    detail::ensure(detail::is_zero_vector(detail::bar_d2_apply(g, ix, act, d1.apply(f))), "cohomology",
                   "d2 d1 != 0");
  }
  return out;
}

/// Restriction of a 2-cochain on G to the subgroup c.
inline IntVector restrict_cochain(const IntVector& z, const Subgroup& c, std::size_t rank) {
  const detail::CochainIndex whole(Subgroup::whole(c.parent()), rank);
  const detail::CochainIndex sub(c, rank);
  IntVector out(sub.c2_dim());
  for (Element x : sub.elements)
    for (Element y : sub.elements)
      for (std::size_t a = 0; a < rank; ++a) out[sub.c2(x, y, a)] = z[whole.c2(x, y, a)];
  return out;
}

/// Cohomology of a subgroup c with coefficients in m restricted.
class SubgroupCohomology {
 public:
  SubgroupCohomology(const Subgroup& c, const GLattice& m)
      : subgroup_(c),
        rank_(m.rank),
        system_(detail::bar_d1(*c.parent(), detail::CochainIndex(c, m.rank), detail::small_action(m))) {}

  const IntVector& h2_factors() const { return system_.torsion(); }

  /// Coordinates in H^2(c, M) of the restriction of a cocycle on G.
  IntVector class_of_restriction(const IntVector& z) const {
    CokernelClass k = system_.classify(restrict_cochain(z, subgroup_, rank_));
    detail::ensure(detail::is_zero_vector(k.free), "cohomology", "restricted cocycle has a free component");
    return k.torsion;
  }

  bool restriction_is_coboundary(const IntVector& z) const {
    return system_.solve(restrict_cochain(z, subgroup_, rank_)).has_value();
  }

 private:
  Subgroup subgroup_;
  std::size_t rank_;
  IntegerSystem system_;
};

struct Sha2Result {
  CocycleClassSet h2;
  AbelianGroupStructure structure;  // generator_lifts: cocycles on G
  std::vector<Subgroup> tested_subgroups;
};

/// Classes of H^2(G, M) restricting to zero on every cyclic subgroup
/// (one per conjugacy class of cyclic subgroups).
inline Sha2Result sha2_cycl(const GroupPtr& group, const GLattice& m, std::size_t budget = kDefaultOracleBudget) {
  Sha2Result out;
  out.h2 = h2(group, m, budget);
  const auto& d = out.h2.structure.invariant_factors;
  const std::size_t s = d.size();
  const auto cocycles = out.h2.cocycles();
  out.structure.generator_lifts = IntMatrix(0, out.h2.c2_dim);
  if (s == 0) return out;

  // x in kernel iff sum_i x_i res(z_i) = 0 in every H^2(C, M)
  std::vector<IntVector> phi_rows;
  IntVector row_moduli;
  for (const auto& c : cyclic_subgroups_up_to_conjugacy(group)) {
    if (c.size() == 1) continue;
    out.tested_subgroups.push_back(c);
    const SubgroupCohomology sc(c, m);
    std::vector<IntVector> images;
    for (const auto& z : cocycles) images.push_back(sc.class_of_restriction(z));
    for (std::size_t k = 0; k < sc.h2_factors().size(); ++k) {
      IntVector row(s);
      for (std::size_t i = 0; i < s; ++i) row[i] = images[i][k];
      phi_rows.push_back(std::move(row));
      row_moduli.push_back(sc.h2_factors()[k]);
    }
  }
  const std::size_t t = phi_rows.size();
  IntMatrix a(t, s + t);
  for (std::size_t r = 0; r < t; ++r) {
    for (std::size_t i = 0; i < s; ++i) a(r, i) = phi_rows[r][i];
    a(r, s + r) = row_moduli[r];
  }
  const LatticeBasis kernel = kernel_lattice(a);
  std::vector<IntVector> xs;
  for (std::size_t r = 0; r < kernel.rank(); ++r) {
    IntVector v = kernel.basis().row(r);
    v.resize(s);
    xs.push_back(std::move(v));
  }
  const LatticeBasis sha_coords = LatticeBasis::span(xs, s);
  const AbelianGroupStructure q = quotient_structure(sha_coords, LatticeBasis::span(IntMatrix::diagonal(d)));
  out.structure.invariant_factors = q.invariant_factors;

  std::vector<IntVector> lifts;
  for (std::size_t k = 0; k < q.generator_lifts.rows(); ++k) {
    IntVector z(out.h2.c2_dim);
    for (std::size_t i = 0; i < s; ++i)
      if (q.generator_lifts(k, i) != 0)
        for (std::size_t j = 0; j < z.size(); ++j) z[j] += q.generator_lifts(k, i) * cocycles[i][j];
    lifts.push_back(std::move(z));
  }
  out.structure.generator_lifts = IntMatrix::from_rows(lifts, out.h2.c2_dim);

  for (const auto& c : out.tested_subgroups) {
    const SubgroupCohomology sc(c, m);
    for (const auto& z : lifts)
      detail::ensure(sc.restriction_is_coboundary(z), "cohomology", "generator restricts nontrivially");
  }
  detail::ensure(out.h2.structure.order() % out.structure.order() == 0, "cohomology", "|Sha| does not divide |H^2|");
  return out;
}

}  // namespace normtorus
