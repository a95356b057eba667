#pragma once

// End-to-end job: group -> subgroups -> per-prime towers -> C(L)/D, with the
// optional cohomological cross-check and global layer.

#include <algorithm>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "normtorus/brauer.hpp"
#include "normtorus/cohomology.hpp"
#include "normtorus/config.hpp"
#include "normtorus/gamma.hpp"
#include "normtorus/global.hpp"
#include "normtorus/report.hpp"
#include "normtorus/tower.hpp"

namespace normtorus {

inline constexpr std::size_t kExhaustiveGCheckLimit = 4096;

struct Job {
  NamedGroup group;
  Subgroup gk;
  std::vector<Factor> factors;
  TowerOptions options;
  std::vector<TowerSetup> parts;
};

inline Job prepare_job(const JobConfig& c) {
  NamedGroup group = build_group(c);
  Subgroup gk = group.subgroup(c.k_generators);
  Job job{std::move(group), std::move(gk), {}, {}, {}};
  if (c.factors.empty()) throw Error(ErrorKind::empty_factors, "tower", "no factors K_i given");
  for (const auto& f : c.factors) job.factors.push_back({f.label, job.group.subgroup(f.generators)});
  if (c.chi_generator) job.options.chi_generator = job.group.resolve_word(*c.chi_generator);
  job.options.characteristic = c.characteristic;

  auto quotient = quotient_is_cyclic(job.gk);
  if (!quotient) throw Error(ErrorKind::not_cyclic, "tower", "G/G_K is not cyclic (or G_K is not normal)");
  if (c.prime) {
    job.parts.push_back(build_tower(job.group.group, job.gk, job.factors, *c.prime, job.options));
  } else {
    job.parts = prime_power_parts(job.group.group, job.gk, job.factors, job.options);
  }
  return job;
}

namespace detail {

inline PartReport part_report(const GammaTable& gamma, const BrauerGroupResult& result) {
  const TowerSetup& s = gamma.setup;
  const FiniteGroup& g = *s.group;
  PartReport r;
  r.p = s.p;
  r.n = s.n;
  r.e_hat = s.e_hat;
  r.e_table = s.e;
  for (const auto& [e, idx] : s.blocks) {
    std::vector<std::size_t> one_based;
    for (auto i : idx) one_based.push_back(i + 1);
    r.blocks.emplace_back(e, one_based);
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<std::vector<std::string>> per_m;
    for (unsigned m = 1; m <= s.n; ++m) {
      std::vector<std::string> labels;
      for (ClassId c : gamma.gamma[i][m]) labels.push_back(g.label(gamma.classes.representative[c]));
      per_m.push_back(std::move(labels));
    }
    r.gamma.push_back(std::move(per_m));
  }
  r.levels = gamma.levels;
  r.invariant_factors = to_int64(result.structure.invariant_factors);
  for (const auto& c : result.generators) r.generators.push_back(to_int64(c.values));
  for (const auto& e : result.expressions) r.expressions.push_back(e.to_string());
  r.cl_order = to_int64(result.cl_order);
  r.d_order = to_int64(result.d_order);
  return r;
}

inline std::vector<RamifiedPlace> resolve_places(const NamedGroup& g, const std::vector<SubgroupSpec>& specs) {
  std::vector<RamifiedPlace> out;
  for (const auto& s : specs) out.push_back({s.label, g.subgroup(s.generators)});
  return out;
}

// Runs the exhaustive agreement check when the coefficient space is small.
inline std::pair<std::string, std::size_t> run_g_equivalence(const VTable& vt) {
  const TowerSetup& s = vt.gamma.setup;
  BigInt total = 1;
  for (std::size_t i = 0; i < s.size(); ++i) total *= s.modulus(i);
  if (total > kExhaustiveGCheckLimit) return {"skipped", 0};
  const IntVector moduli = coordinate_moduli(s);
  IntVector a(s.size(), 0);
  std::size_t checked = 0;
  bool agree = true;
  while (true) {
    agree = agree && g_equivalence_check(CMap::reduce(a, moduli, s.p), vt).agree();
    ++checked;
    std::size_t k = 0;
    while (k < a.size() && ++a[k] == moduli[k]) a[k++] = 0;
    if (k == a.size()) break;
  }
  return {agree ? "agree" : "disagree", checked};
}

}  // namespace detail

struct RunOverrides {
  std::optional<bool> oracle;
  std::optional<std::size_t> oracle_budget;
  std::optional<std::vector<SubgroupSpec>> ramified;
  std::optional<std::vector<InvariantSpec>> invariants;
};

inline Report run(JobConfig c, const RunOverrides& o = {}) {
  if (o.oracle) c.oracle = *o.oracle;
  if (o.oracle_budget) c.oracle_budget = *o.oracle_budget;
  if (o.ramified) c.ramified = o.ramified;
  if (o.invariants) c.invariants = o.invariants;

  const Job job = prepare_job(c);
  Report report;
  report.name = c.name;
  report.group_order = job.group.group->order();
  report.degree = static_cast<std::int64_t>(job.gk.index());
  report.a_label = c.a_label;
  report.characteristic = c.characteristic;
  for (const auto& f : job.factors) report.factor_labels.push_back(f.label);

  std::vector<GammaTable> gammas;
  std::vector<BrauerGroupResult> results;
  for (const auto& s : job.parts) {
    gammas.push_back(compute_gamma(s));
    if (s.n == 1 && std::all_of(s.factors.begin(), s.factors.end(),
                                [&](const Factor& f) { return !f.subgroup.is_subset_of(s.gk); })) {
      const GammaTable alt = gamma_for_degree_p(s);
      detail::ensure(alt.levels == gammas.back().levels, "gamma", "degree-p construction disagrees");
    }
    results.push_back(brauer_group(gammas.back()));
    report.parts.push_back(detail::part_report(gammas.back(), results.back()));
  }
  const BrauerGroupResult composed = compose_prime_parts(results);
  report.invariant_factors = to_int64(composed.structure.invariant_factors);

  if (c.oracle) {
    std::vector<Subgroup> blocks{job.gk};
    for (const auto& f : job.factors) blocks.push_back(f.subgroup);
    const Sha2Result sha = sha2_cycl(job.group.group, character_lattice(job.group.group, blocks), c.oracle_budget);
    OracleReport orep;
    orep.budget = c.oracle_budget;
    orep.h2_factors = to_int64(sha.h2.structure.invariant_factors);
    orep.sha_factors = to_int64(sha.structure.invariant_factors);
    orep.cyclic_subgroups_tested = sha.tested_subgroups.size();
    orep.verdict = orep.sha_factors == report.invariant_factors ? "MATCH" : "MISMATCH";
    report.oracle = orep;
  }

  if (c.ramified || c.invariants) {
    if (job.parts.size() != 1)
      throw Error(ErrorKind::input, "global", "global data is supported for prime-power [K:k] only");
    const GammaTable& gamma = gammas.front();
    const auto places = detail::resolve_places(job.group, c.ramified.value_or(std::vector<SubgroupSpec>{}));
    const ArithResult arith = c_arith(gamma, places);
    const VTable vt = build_vtable(gamma, places);
    GlobalReport g;
    for (const auto& v : places) g.ramified.push_back(v.label);
    g.ramified_levels = vt.ramified_level;
    g.levels = arith.levels;
    g.arith_factors = to_int64(arith.sha.structure.invariant_factors);
    for (const auto& gen : arith.sha.generators) g.arith_generators.push_back(to_int64(gen.values));
    for (const auto& e : arith.sha.expressions) g.arith_expressions.push_back(e.to_string());
    g.omega_factors = to_int64(arith.sha_omega.structure.invariant_factors);
    std::tie(g.g_equivalence, g.g_checked) = detail::run_g_equivalence(vt);
    if (c.invariants) {
      const PairingVerdict pv = pairing_verdict(arith.sha, to_local_invariants(*c.invariants));
      PairingReport p;
      for (const auto& v : pv.values) p.values.push_back(v.str());
      p.obstruction = pv.obstruction;
      g.pairing = p;
    }
    report.global = g;
  }
  return report;
}

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitInput = 2, kExitMismatch = 3, kExitBudget = 4 };

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::budget_exceeded: return kExitBudget;
    case ErrorKind::internal: return kExitInternal;
    default: return kExitInput;
  }
}

}  // namespace normtorus
