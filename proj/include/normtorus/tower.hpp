#pragma once

// The Galois configuration L = K x prod K_i seen through G = Gal(cal K / k):
// the subgroup chain of the subfields K(m), the degrees e_i(m) and the
// blocks I_e, plus the reduction to prime-power degree.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "normtorus/error.hpp"
#include "normtorus/group.hpp"
#include "normtorus/zlinalg.hpp"

namespace normtorus {

struct Factor {
  std::string label;
  Subgroup subgroup;  // G_{K_i}
};

struct TowerOptions {
  std::optional<Element> chi_generator;    // element whose coset is sent to 1 by chi
  std::optional<unsigned> characteristic;  // of k, metadata only
};

struct TowerSetup {
  GroupPtr group;
  Subgroup gk;
  std::vector<Factor> factors;
  unsigned p = 0;
  unsigned n = 0;
  Element chi_generator = 0;
  std::vector<Subgroup> chain;             // chain[m] = G_{K(m)}, m = 0..n
  std::vector<std::vector<unsigned>> e;    // e[i][m] = e_i(m)
  std::map<unsigned, std::vector<std::size_t>> blocks;  // e -> I_e
  unsigned e_hat = 0;
  std::optional<unsigned> characteristic;

  std::size_t size() const noexcept { return factors.size(); }
  unsigned e_top(std::size_t i) const { return e[i][n]; }
  BigInt modulus(std::size_t i) const { return ipow(p, e_top(i)); }
  BigInt p_power(unsigned k) const { return ipow(p, k); }

  /// G_{E_i(m)} = G_{K_i} ∩ G_{K(m)}
  Subgroup e_subgroup(std::size_t i, unsigned m) const { return factors[i].subgroup.intersect(chain[m]); }

  /// First index of the top block I_ê.
  std::size_t top_index() const { return blocks.at(e_hat).front(); }

  bool characteristic_excludes_p() const { return !characteristic || *characteristic != p; }
};

namespace detail {

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::optional<unsigned> log_base(std::size_t value, unsigned p) {
  unsigned k = 0;
  while (value % p == 0) {
    value /= p;
    ++k;
  }
  if (value != 1) return std::nullopt;
  return k;
}

inline std::vector<std::pair<unsigned, unsigned>> factorize(std::size_t n) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned d = 2; static_cast<std::size_t>(d) * d <= n; ++d) {
    unsigned k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k) out.emplace_back(d, k);
  }
  if (n > 1) out.emplace_back(static_cast<unsigned>(n), 1);
  return out;
}

inline void check_tower_invariants(const TowerSetup& s) {
  const auto& g = *s.group;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Subgroup& h = s.factors[i].subgroup;
    ensure(s.e[i][0] == 0, "tower", "e_i(0) must vanish");
    for (unsigned m = 1; m <= s.n; ++m) {
      const unsigned step = s.e[i][m] - s.e[i][m - 1];
      ensure(s.e[i][m] >= s.e[i][m - 1] && step <= 1, "tower", "e_i(m) must grow by steps of 0 or 1");
    }
    // Every H_i-orbit on G/G_{K(m)} has stabilizer H_i ∩ G_{K(m)}, so the
    // choice of cyclic factor E_i is immaterial.
    for (unsigned m = 0; m <= s.n; ++m) {
      const Subgroup expected = s.e_subgroup(i, m);
      const LeftCosets cosets = left_cosets(s.chain[m]);
      std::vector<bool> visited(cosets.representatives.size(), false);
      for (std::size_t c = 0; c < cosets.representatives.size(); ++c) {
        if (visited[c]) continue;
        const Element x = cosets.representatives[c];
        std::vector<Element> stab;
        for (Element y : h.elements()) {
          const auto target = cosets.coset_of[g.mul(y, x)];
          visited[target] = true;
          if (target == c) stab.push_back(y);
        }
        ensure(Subgroup(s.group, stab) == expected, "tower", "orbit stabilizers differ from H_i ∩ G_{K(m)}");
      }
    }
    for (unsigned m = 1; m <= s.n; ++m) {
      if (s.e_subgroup(i, s.n - m).size() > s.e_subgroup(i, s.n - m + 1).size()) {
        ensure(s.e_top(i) >= m && s.e_top(i) - s.e[i][s.n - m] == m, "tower", "e_i(n) - e_i(n-m) = m violated");
      }
    }
    // p^{e_i(n)} [K ∩ K_i : k] = p^n
    const Subgroup compositum = join(h, s.gk);
    ensure(s.p_power(s.e_top(i)) * BigInt(compositum.index()) == s.p_power(s.n), "tower",
           "degree relation for K ∩ K_i failed");
  }
  for (const auto& [e, indices] : s.blocks)
    for (std::size_t i : indices) ensure(s.e[i] == s.e[indices.front()], "tower", "e-table differs inside a block");
}

}  // namespace detail

inline TowerSetup build_tower(const GroupPtr& group, const Subgroup& gk, const std::vector<Factor>& factors,
                              unsigned p, const TowerOptions& options = {}) {
  if (factors.empty()) throw Error(ErrorKind::empty_factors, "tower", "the algebra K' has no factors");
  if (!detail::is_prime(p)) throw Error(ErrorKind::input, "tower", std::to_string(p) + " is not prime");
  auto quotient = quotient_is_cyclic(gk);
  if (!quotient) throw Error(ErrorKind::not_cyclic, "tower", "G/G_K is not cyclic (or G_K is not normal)");
  if (quotient->order == 1) throw Error(ErrorKind::not_cyclic, "tower", "K = k: the cyclic degree must be >= 2");
  auto n = detail::log_base(quotient->order, p);
  if (!n)
    throw Error(ErrorKind::not_prime_power, "tower",
                "[G:G_K] = " + std::to_string(quotient->order) + " is not a power of " + std::to_string(p));

  TowerSetup s;
  s.group = group;
  s.gk = gk;
  s.factors = factors;
  s.p = p;
  s.n = *n;
  s.characteristic = options.characteristic;
  s.chi_generator = quotient->generator;
  if (options.chi_generator) {
    if (coset_order(gk, *options.chi_generator) != quotient->order)
      throw Error(ErrorKind::input, "tower", "chi generator does not generate G/G_K");
    s.chi_generator = *options.chi_generator;
  }
  const auto& g = *group;
  for (unsigned m = 0; m <= s.n; ++m) {
    std::vector<Element> gens = gk.elements();
    gens.push_back(g.power(s.chi_generator, static_cast<long long>(ipow(p, m))));
    s.chain.push_back(subgroup_closure(group, gens));
    detail::ensure(s.chain.back().index() == static_cast<std::size_t>(ipow(p, m)), "tower", "bad K(m) index");
  }
  for (const auto& f : factors) {
    if (f.subgroup.parent() != group) throw Error(ErrorKind::input, "tower", "factor subgroup of another group");
    std::vector<unsigned> row;
    for (unsigned m = 0; m <= s.n; ++m) {
      auto k = detail::log_base(f.subgroup.size() / f.subgroup.intersect(s.chain[m]).size(), p);
      detail::ensure(k.has_value(), "tower", "index [H_i : H_i ∩ G_K(m)] is not a power of p");
      row.push_back(*k);
    }
    s.e.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < s.size(); ++i) s.blocks[s.e_top(i)].push_back(i);
  s.e_hat = s.blocks.rbegin()->first;
  detail::check_tower_invariants(s);
  return s;
}

/// One tower per prime p dividing [G:G_K], built on G_{K[p]}.
inline std::vector<TowerSetup> prime_power_parts(const GroupPtr& group, const Subgroup& gk,
                                                 const std::vector<Factor>& factors, const TowerOptions& options = {}) {
  auto quotient = quotient_is_cyclic(gk);
  if (!quotient) throw Error(ErrorKind::not_cyclic, "tower", "G/G_K is not cyclic (or G_K is not normal)");
  if (quotient->order == 1) throw Error(ErrorKind::not_cyclic, "tower", "K = k: the cyclic degree must be >= 2");
  const Element t = options.chi_generator.value_or(quotient->generator);
  std::vector<TowerSetup> parts;
  for (auto [p, a] : detail::factorize(quotient->order)) {
    const auto p_part = static_cast<long long>(ipow(p, a));
    std::vector<Element> gens = gk.elements();
    gens.push_back(group->power(t, p_part));
    Subgroup gkp = subgroup_closure(group, gens);
    TowerOptions part_options = options;
    part_options.chi_generator = t;  // its image generates G/G_{K[p]} as well
    parts.push_back(build_tower(group, gkp, factors, p, part_options));
  }
  return parts;
}

}  // namespace normtorus
