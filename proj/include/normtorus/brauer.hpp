#pragma once

// C(L) as a congruence lattice over diag(p^{e_i(n)}), the constant image D,
// the quotient C(L)/D with generator lifts, and the c -> c' rewriting.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "normtorus/error.hpp"
#include "normtorus/gamma.hpp"
#include "normtorus/tower.hpp"
#include "normtorus/zlinalg.hpp"

namespace normtorus {

/// A map I -> ⊕ Z/p^{e_i(n)} with canonical representatives.
struct CMap {
  IntVector values;
  IntVector moduli;
  unsigned p = 0;

  static CMap reduce(const IntVector& raw, const IntVector& moduli, unsigned p) {
    detail::ensure(raw.size() == moduli.size(), "brauer", "CMap length mismatch");
    CMap c;
    c.moduli = moduli;
    c.p = p;
    for (std::size_t i = 0; i < raw.size(); ++i) c.values.push_back(detail::mod_floor(raw[i], moduli[i]));
    return c;
  }

  std::size_t size() const noexcept { return values.size(); }
  bool is_zero() const {
    for (const auto& v : values)
      if (v != 0) return false;
    return true;
  }
  /// |J(c)|: number of nonzero coordinates.
  std::size_t support_size() const {
    std::size_t k = 0;
    for (const auto& v : values)
      if (v != 0) ++k;
    return k;
  }
  CMap operator-(const CMap& o) const {
    IntVector raw(size());
    for (std::size_t i = 0; i < size(); ++i) raw[i] = values[i] - o.values[i];
    return reduce(raw, moduli, p);
  }
  friend bool operator==(const CMap&, const CMap&) = default;
};

struct GeneratorTerm {
  std::size_t index = 0;  // position in I (0-based)
  BigInt coefficient;
  BigInt order_bound;  // p^{e_i(n)}
  std::string label;   // "(N_<factor>, χ)"
  friend bool operator==(const GeneratorTerm&, const GeneratorTerm&) = default;
};

struct GeneratorExpression {
  std::vector<GeneratorTerm> terms;

  std::string to_string() const {
    if (terms.empty()) return "0";
    std::ostringstream out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (k) out << " + ";
      if (terms[k].coefficient != 1) out << terms[k].coefficient;
      out << terms[k].label;
    }
    return out.str();
  }
  friend bool operator==(const GeneratorExpression&, const GeneratorExpression&) = default;
};

enum class Provenance { combinatorial, oracle, both };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::combinatorial: return "combinatorial";
    case Provenance::oracle: return "oracle";
    case Provenance::both: return "both";
  }
  return "?";
}

struct BrauerGroupResult {
  AbelianGroupStructure structure;
  std::vector<CMap> generators;
  std::vector<GeneratorExpression> expressions;
  std::vector<unsigned> generator_primes;
  Provenance provenance = Provenance::combinatorial;
  BigInt cl_order = 1;  // |C(L)|
  BigInt d_order = 1;   // |D|
};

struct ClLattice {
  LatticeBasis numerator;  // K~
  IntVector moduli;        // p^{e_i(n)}
};

/// largest d <= min(m, r) with x = y mod p^d
inline unsigned delta(const BigInt& x, unsigned m, const BigInt& y, unsigned r, unsigned p) {
  const unsigned top = std::min(m, r);
  unsigned d = 0;
  while (d < top && detail::mod_floor(x - y, ipow(p, d + 1)) == 0) ++d;
  return d;
}

inline IntVector coordinate_moduli(const TowerSetup& s) {
  IntVector mods;
  for (std::size_t i = 0; i < s.size(); ++i) mods.push_back(s.modulus(i));
  return mods;
}

/// K~ = { x : x_i = x_j mod p^{levels[i][j]} }.
inline ClLattice build_cl_lattice(const TowerSetup& s, const std::vector<std::vector<unsigned>>& levels) {
  const std::size_t size = s.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      if (levels[i][j] >= 1) pairs.emplace_back(i, j);

  ClLattice out{LatticeBasis::full(size), coordinate_moduli(s)};
  if (pairs.empty()) return out;
  // x in K~ iff A x + diag(p^m) y = 0 for some y
  IntMatrix a(pairs.size(), size + pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    a(k, pairs[k].first) = 1;
    a(k, pairs[k].second) = -1;
    a(k, size + k) = s.p_power(levels[pairs[k].first][pairs[k].second]);
  }
  const LatticeBasis kernel = kernel_lattice(a);
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < kernel.rank(); ++r) {
    IntVector v = kernel.basis().row(r);
    v.resize(size);
    rows.push_back(std::move(v));
  }
  out.numerator = LatticeBasis::span(rows, size);
  return out;
}

inline ClLattice build_cl_lattice(const GammaTable& gamma) { return build_cl_lattice(gamma.setup, gamma.levels); }

inline LatticeBasis diagonal_lattice(const TowerSetup& s) {
  return LatticeBasis::span(IntMatrix::diagonal(coordinate_moduli(s)));
}

/// diag(p^{e_i(n)}) Z^I + Z (1,...,1)
inline LatticeBasis build_d(const TowerSetup& s) {
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < s.size(); ++i) {
    IntVector v(s.size(), 0);
    v[i] = s.modulus(i);
    rows.push_back(std::move(v));
  }
  rows.emplace_back(s.size(), BigInt(1));
  return LatticeBasis::span(rows, s.size());
}

/// Membership of a CMap in C(L) under given levels, by replaying the
/// congruences directly.
inline bool satisfies_levels(const CMap& c, const TowerSetup& s, const std::vector<std::vector<unsigned>>& levels) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (levels[i][j] >= 1 && detail::mod_floor(c.values[i] - c.values[j], s.p_power(levels[i][j])) != 0)
        return false;
  return true;
}

inline bool is_constant_image(const CMap& c, const TowerSetup& s) {
  const BigInt r = c.values[s.top_index()];
  for (std::size_t i = 0; i < c.size(); ++i)
    if (detail::mod_floor(c.values[i] - r, c.moduli[i]) != 0) return false;
  return true;
}

inline GeneratorExpression expression_for(const CMap& c, const TowerSetup& s) {
  // subtract the constant map through c(i0) so that i0 drops out
  const BigInt shift = c.values[s.top_index()];
  IntVector raw(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) raw[i] = c.values[i] - shift;
  const CMap normalized = CMap::reduce(raw, c.moduli, c.p);
  GeneratorExpression e;
  for (std::size_t i = 0; i < normalized.size(); ++i)
    if (normalized.values[i] != 0)
      e.terms.push_back({i, normalized.values[i], normalized.moduli[i], "(N_" + s.factors[i].label + ", χ)"});
  return e;
}

inline BrauerGroupResult brauer_group_from_levels(const TowerSetup& s,
                                                  const std::vector<std::vector<unsigned>>& levels) {
  const ClLattice cl = build_cl_lattice(s, levels);
  const LatticeBasis d = build_d(s);
  const LatticeBasis diag = diagonal_lattice(s);
  detail::ensure(cl.numerator.contains(d), "brauer", "constants violate a congruence");

  BrauerGroupResult out;
  out.structure = quotient_structure(cl.numerator, d);
  out.cl_order = quotient_structure(cl.numerator, diag).order();
  out.d_order = quotient_structure(d, diag).order();
  detail::ensure(out.d_order == s.p_power(s.e_hat), "brauer", "|D| differs from p^ê");
  detail::ensure(out.structure.order() * out.d_order == out.cl_order, "brauer", "|C(L)/D| != |C(L)|/|D|");
  for (std::size_t k = 0; k < out.structure.invariant_factors.size(); ++k) {
    CMap c = CMap::reduce(out.structure.generator_lifts.row(k), cl.moduli, s.p);
    detail::ensure(satisfies_levels(c, s, levels), "brauer", "generator lift leaves C(L)");
    out.expressions.push_back(expression_for(c, s));
    out.generators.push_back(std::move(c));
    out.generator_primes.push_back(s.p);
  }
  return out;
}

inline BrauerGroupResult brauer_group(const GammaTable& gamma) {
  return brauer_group_from_levels(gamma.setup, gamma.levels);
}

/// Direct sum of per-prime results.
inline BrauerGroupResult compose_prime_parts(const std::vector<BrauerGroupResult>& parts) {
  if (parts.size() == 1) return parts.front();
  BrauerGroupResult out;
  IntVector orders;
  for (const auto& part : parts) {
    for (const auto& d : part.structure.invariant_factors) orders.push_back(d);
    out.generators.insert(out.generators.end(), part.generators.begin(), part.generators.end());
    out.expressions.insert(out.expressions.end(), part.expressions.begin(), part.expressions.end());
    out.generator_primes.insert(out.generator_primes.end(), part.generator_primes.begin(),
                                part.generator_primes.end());
    out.cl_order *= part.cl_order;
    out.d_order *= part.d_order;
  }
  out.structure.invariant_factors = invariant_factors_of(orders);
  out.structure.generator_lifts = IntMatrix(0, 0);
  if (!parts.empty()) out.provenance = parts.front().provenance;
  return out;
}

/// The rewriting c -> c' towards a map with smaller support relative to the
/// constant through c(i0).
inline CMap normalize_c(const CMap& c, const TowerSetup& s, const std::vector<std::vector<unsigned>>& levels) {
  if (!satisfies_levels(c, s, levels)) throw Error(ErrorKind::precondition, "brauer", "c is not in C(L)");
  if (is_constant_image(c, s)) throw Error(ErrorKind::precondition, "brauer", "c lies in D");
  const std::size_t i0 = s.top_index();
  const unsigned e_hat = s.e_hat;
  const BigInt& base = c.values[i0];

  unsigned m = 0;
  for (unsigned level = 1; level <= e_hat; ++level) {
    bool agree = true;
    for (std::size_t i = 0; i < c.size() && agree; ++i)
      agree = detail::mod_floor(c.values[i] - base, s.p_power(std::min(level, s.e_top(i)))) == 0;
    if (!agree) break;
    m = level;
  }
  detail::ensure(m < e_hat, "brauer", "c agrees with a constant at every level");

  auto at_depth_m = [&](std::size_t i) {
    return s.e_top(i) > m && delta(c.values[i], s.e_top(i), base, e_hat, s.p) == m;
  };
  std::optional<BigInt> r;
  for (std::size_t j = 0; j < c.size() && !r; ++j)
    if (at_depth_m(j)) r = c.values[j];
  detail::ensure(r.has_value(), "brauer", "no coordinate splits off at the agreement depth");

  IntVector raw(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) raw[i] = at_depth_m(i) ? *r : base;
  CMap out = CMap::reduce(raw, c.moduli, c.p);

  IntVector hat(c.size(), base);
  const CMap c_hat = CMap::reduce(hat, c.moduli, c.p);
  detail::ensure(satisfies_levels(out, s, levels), "brauer", "c' left C(L)");
  detail::ensure(!is_constant_image(out, s), "brauer", "c' fell into D");
  detail::ensure((c - out).support_size() < (c - c_hat).support_size(), "brauer", "support did not shrink");
  return out;
}

inline CMap normalize_c(const CMap& c, const GammaTable& gamma) { return normalize_c(c, gamma.setup, gamma.levels); }

}  // namespace normtorus
