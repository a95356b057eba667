#pragma once

// Global-field layer: V-sets from decomposition groups, C_arith(L)/D, the
// G(K,K') cross-check, and the pairing with supplied local invariants.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "normtorus/brauer.hpp"
#include "normtorus/error.hpp"
#include "normtorus/gamma.hpp"
#include "normtorus/group.hpp"
#include "normtorus/tower.hpp"

namespace normtorus {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

struct RamifiedPlace {
  std::string label;
  Subgroup decomposition;
};

/// Order of the image of (x^-1 D x ∩ G_{K_i}) in G/G_K, maximized over x.
inline std::size_t local_image_order(const RamifiedPlace& v, std::size_t i, const TowerSetup& s) {
  const FiniteGroup& g = *s.group;
  const Subgroup& h = s.factors[i].subgroup;
  std::size_t best = 1;
  for (Element x = 0; x < g.order(); ++x) {
    const Subgroup j = v.decomposition.conjugate_by(g.inverse(x)).intersect(h);
    best = std::max(best, j.size() / j.intersect(s.gk).size());
  }
  return best;
}

inline bool v_membership(const RamifiedPlace& v, std::size_t i, unsigned m, const TowerSetup& s) {
  return BigInt(local_image_order(v, i, s)) >= s.p_power(m);
}

struct VTable {
  GammaTable gamma;
  std::vector<RamifiedPlace> ramified;
  // ramified_level[v][i] = max m with v in V_i^m (0 if none)
  std::vector<std::vector<unsigned>> ramified_level;

  bool ramified_contains(std::size_t v, std::size_t i, unsigned m) const { return ramified_level[v][i] >= m; }
};

inline VTable build_vtable(const GammaTable& gamma, const std::vector<RamifiedPlace>& ramified) {
  const TowerSetup& s = gamma.setup;
  VTable t;
  t.gamma = gamma;
  t.ramified = ramified;
  for (const auto& v : ramified) {
    if (v.decomposition.parent() != s.group)
      throw Error(ErrorKind::input, "global", "decomposition group of " + v.label + " lives in another group");
    std::vector<unsigned> row;
    for (std::size_t i = 0; i < s.size(); ++i) {
      unsigned level = 0;
      for (unsigned m = 1; m <= s.n; ++m) {
        const bool in = v_membership(v, i, m, s);
        if (in) {
          detail::ensure(level + 1 == m, "global", "V_i^m membership does not nest");
          level = m;
        }
      }
      row.push_back(level);
    }
    t.ramified_level.push_back(std::move(row));
  }
  return t;
}

/// Levels from V_i^m ∩ V_j^m ≠ ∅ with unramified places read off Γ.
inline std::vector<std::vector<unsigned>> arithmetic_levels(const VTable& vt) {
  const GammaTable& gamma = vt.gamma;
  auto levels = gamma.levels;
  for (std::size_t v = 0; v < vt.ramified.size(); ++v)
    for (std::size_t i = 0; i < levels.size(); ++i)
      for (std::size_t j = 0; j < levels.size(); ++j)
        levels[i][j] = std::max(levels[i][j], std::min(vt.ramified_level[v][i], vt.ramified_level[v][j]));
  return levels;
}

struct ArithResult {
  std::vector<std::vector<unsigned>> levels;
  BrauerGroupResult sha;        // C_arith(L)/D
  BrauerGroupResult sha_omega;  // C_ω(L)/D = C(L)/D
};

inline ArithResult c_arith(const GammaTable& gamma, const std::vector<RamifiedPlace>& ramified) {
  const VTable vt = build_vtable(gamma, ramified);
  ArithResult out;
  out.levels = arithmetic_levels(vt);
  out.sha = brauer_group_from_levels(gamma.setup, out.levels);
  out.sha_omega = brauer_group(gamma);
  detail::ensure(out.sha_omega.structure.order() % out.sha.structure.order() == 0, "global",
                 "|C_arith/D| does not divide |C(L)/D|");
  return out;
}

namespace detail {

// Per effective place: level_i = max m with the place in V_i^m.
inline std::vector<std::vector<unsigned>> effective_place_levels(const VTable& vt) {
  const GammaTable& gamma = vt.gamma;
  const TowerSetup& s = gamma.setup;
  std::vector<std::vector<unsigned>> places;
  for (ClassId c = 0; c < gamma.classes.count(); ++c) {
    std::vector<unsigned> row(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (unsigned m = 1; m <= s.n; ++m)
        if (gamma.contains(i, m, c)) row[i] = std::max(row[i], m);
    places.push_back(std::move(row));
  }
  for (const auto& row : vt.ramified_level) places.push_back(row);
  return places;
}

}  // namespace detail

struct GEquivalence {
  bool in_c_arith = false;
  bool intersection_empty = false;
  bool agree() const { return in_c_arith == intersection_empty; }
};

/// Evaluates f(a) ∈ C_arith(L) and
///   ∩_{r ∈ Z/p^ê} ∪_{i ∉ I_r(a)} V_i^{δ(r, a_i)+1} = ∅
/// over the effective places (one per conjugacy class plus the ramified ones).
inline GEquivalence g_equivalence_check(const CMap& a, const VTable& vt) {
  const TowerSetup& s = vt.gamma.setup;
  GEquivalence out;
  out.in_c_arith = satisfies_levels(a, s, arithmetic_levels(vt));

  const auto places = detail::effective_place_levels(vt);
  const BigInt top = s.p_power(s.e_hat);
  std::vector<bool> in_all(places.size(), true);
  for (BigInt r = 0; r < top; ++r) {
    for (std::size_t v = 0; v < places.size(); ++v) {
      if (!in_all[v]) continue;
      bool in_union = false;
      for (std::size_t i = 0; i < s.size() && !in_union; ++i) {
        const unsigned d = delta(r, s.e_hat, a.values[i], s.e_top(i), s.p);
        if (d == s.e_top(i)) continue;  // i in I_r(a)
        in_union = places[v][i] >= d + 1;
      }
      if (!in_union) in_all[v] = false;
    }
  }
  out.intersection_empty = true;
  for (bool b : in_all)
    if (b) out.intersection_empty = false;
  return out;
}

struct LocalInvariant {
  std::string place;
  std::size_t factor = 0;  // 1-based index into I
  BigInt numerator;
  BigInt denominator = 1;
};

namespace detail {

inline bool is_power_of(BigInt d, unsigned p) {
  if (d <= 0) return false;
  while (d % p == 0) d /= p;
  return d == 1;
}

inline Rational frac_part(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  return Rational(mod_floor(num, den), den);
}

}  // namespace detail

/// Validated table place -> (inv(v,1), ..., inv(v,|I|)).
inline std::map<std::string, std::vector<Rational>> invariant_table(const std::vector<LocalInvariant>& entries,
                                                                    std::size_t factor_count, unsigned p) {
  std::map<std::string, std::vector<std::optional<Rational>>> raw;
  for (const auto& e : entries) {
    if (!detail::is_power_of(e.denominator, p))
      throw Error(ErrorKind::malformed_invariant, "global",
                  "invariant at " + e.place + " has denominator " + e.denominator.str() + ", not a power of " +
                      std::to_string(p));
    if (e.factor < 1 || e.factor > factor_count)
      throw Error(ErrorKind::malformed_invariant, "global",
                  "factor index " + std::to_string(e.factor) + " at " + e.place + " is out of range");
    auto& row = raw[e.place];
    row.resize(factor_count);
    row[e.factor - 1] = detail::frac_part(Rational(e.numerator, e.denominator));
  }
  std::map<std::string, std::vector<Rational>> table;
  for (const auto& [place, row] : raw) {
    std::vector<Rational> values;
    for (std::size_t i = 0; i < factor_count; ++i) {
      if (!row[i])
        throw Error(ErrorKind::missing_entry, "global",
                    "no invariant for factor " + std::to_string(i + 1) + " at " + place);
      values.push_back(*row[i]);
    }
    table.emplace(place, std::move(values));
  }
  return table;
}

/// α(c) = Σ_v Σ_i c(i) inv(v, i) in Q/Z, as a representative in [0, 1).
inline Rational brauer_manin_pairing(const CMap& c, const std::vector<LocalInvariant>& entries) {
  const auto table = invariant_table(entries, c.size(), c.p);
  Rational sum = 0;
  for (const auto& [place, row] : table)
    for (std::size_t i = 0; i < c.size(); ++i) sum += Rational(c.values[i]) * row[i];
  return detail::frac_part(sum);
}

struct PairingVerdict {
  std::vector<Rational> values;  // one per generator of C_arith(L)/D
  bool obstruction = false;
};

inline PairingVerdict pairing_verdict(const BrauerGroupResult& arith, const std::vector<LocalInvariant>& entries) {
  PairingVerdict out;
  for (const auto& c : arith.generators) {
    out.values.push_back(brauer_manin_pairing(c, entries));
    if (out.values.back() != 0) out.obstruction = true;
  }
  return out;
}

}  // namespace normtorus
