#pragma once

// Conjugacy-class sets Γ_i^m and the pairwise constraint levels m_ij.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "normtorus/error.hpp"
#include "normtorus/group.hpp"
#include "normtorus/tower.hpp"

namespace normtorus {

using ClassId = std::uint32_t;

struct GammaTable {
  TowerSetup setup;
  ConjugacyClassTable classes;
  // gamma[i][m] for m = 0..n; gamma[i][0] is always empty (undefined level).
  std::vector<std::vector<std::vector<ClassId>>> gamma;
  // levels[i][j] = max{ m : Γ_i^m ∩ Γ_j^m ≠ ∅ }, 0 if none.
  std::vector<std::vector<unsigned>> levels;

  bool contains(std::size_t i, unsigned m, ClassId c) const {
    const auto& v = gamma[i][m];
    return std::binary_search(v.begin(), v.end(), c);
  }
};

namespace detail {

inline bool sorted_intersect(const std::vector<ClassId>& a, const std::vector<ClassId>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib)
      ++ia;
    else
      ++ib;
  }
  return false;
}

// <g> meets upper \ lower
inline bool cyclic_meets_window(const FiniteGroup& g, Element x, const Subgroup& upper, const Subgroup& lower) {
  for (Element y : g.cyclic_elements(x))
    if (upper.contains(y) && !lower.contains(y)) return true;
  return false;
}

// A class belongs to the set when some member's cyclic group meets the
// window; for non-normal G_{K_i} the condition is not conjugation-stable
// element by element, only class by class.
inline std::vector<ClassId> classes_meeting_window(const FiniteGroup& g, const ConjugacyClassTable& classes,
                                                   const Subgroup& upper, const Subgroup& lower) {
  std::vector<ClassId> out;
  for (ClassId c = 0; c < classes.count(); ++c)
    for (Element x : classes.classes[c])
      if (cyclic_meets_window(g, x, upper, lower)) {
        out.push_back(c);
        break;
      }
  return out;
}

inline std::vector<std::vector<unsigned>> levels_from(const std::vector<std::vector<std::vector<ClassId>>>& gamma,
                                                      unsigned n) {
  const std::size_t size = gamma.size();
  std::vector<std::vector<unsigned>> levels(size, std::vector<unsigned>(size, 0));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      for (unsigned m = n; m >= 1; --m)
        if (sorted_intersect(gamma[i][m], gamma[j][m])) {
          levels[i][j] = m;
          break;
        }
  return levels;
}

}  // namespace detail

inline GammaTable compute_gamma(const TowerSetup& setup) {
  GammaTable t;
  t.setup = setup;
  t.classes = conjugacy_classes(*setup.group);
  const unsigned n = setup.n;
  t.gamma.assign(setup.size(), std::vector<std::vector<ClassId>>(n + 1));
  for (std::size_t i = 0; i < setup.size(); ++i)
    for (unsigned m = 1; m <= n; ++m)
      t.gamma[i][m] = detail::classes_meeting_window(*setup.group, t.classes, setup.e_subgroup(i, n - m),
                                                     setup.e_subgroup(i, n - m + 1));
  t.levels = detail::levels_from(t.gamma, n);

  for (std::size_t i = 0; i < setup.size(); ++i) {
    for (unsigned m = 1; m <= n; ++m)
      if (!t.gamma[i][m].empty())
        detail::ensure(setup.e_top(i) >= m && setup.e_top(i) - setup.e[i][n - m] == m, "gamma",
                       "nonempty Γ_i^m requires e_i(n) - e_i(n-m) = m");
    for (std::size_t j = 0; j < setup.size(); ++j) {
      const unsigned m = t.levels[i][j];
      detail::ensure(m <= setup.e_top(i) && m <= setup.e_top(j), "gamma", "constraint level exceeds e_i(n)");
    }
  }
  return t;
}

/// Degree-p construction: Γ_i = classes whose cyclic group meets
/// G_{K_i} \ (G_{K_i} ∩ G_K). Used as an independent path for n = 1.
inline GammaTable gamma_for_degree_p(const TowerSetup& setup) {
  if (setup.n != 1) throw Error(ErrorKind::precondition, "gamma", "degree-p construction needs [K:k] = p");
  for (const auto& f : setup.factors)
    if (f.subgroup.is_subset_of(setup.gk))
      throw Error(ErrorKind::precondition, "gamma", "K is contained in the factor " + f.label);
  GammaTable t;
  t.setup = setup;
  t.classes = conjugacy_classes(*setup.group);
  t.gamma.assign(setup.size(), std::vector<std::vector<ClassId>>(2));
  for (std::size_t i = 0; i < setup.size(); ++i) {
    const Subgroup& h = setup.factors[i].subgroup;
    t.gamma[i][1] = detail::classes_meeting_window(*setup.group, t.classes, h, h.intersect(setup.gk));
  }
  t.levels = detail::levels_from(t.gamma, 1);
  return t;
}

}  // namespace normtorus
