#pragma once

// Report model, its versioned JSON form, and the human-readable rendering.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "normtorus/error.hpp"
#include "normtorus/zlinalg.hpp"

namespace normtorus {

inline constexpr const char* kReportSchema = "normtorus-report/1";

struct PartReport {
  unsigned p = 0;
  unsigned n = 0;
  unsigned e_hat = 0;
  std::vector<std::vector<unsigned>> e_table;  // [i][m], m = 0..n
  std::vector<std::pair<unsigned, std::vector<std::size_t>>> blocks;  // e -> 1-based indices
  std::vector<std::vector<std::vector<std::string>>> gamma;  // [i][m-1] -> class representatives
  std::vector<std::vector<unsigned>> levels;
  std::vector<std::int64_t> invariant_factors;
  std::vector<std::vector<std::int64_t>> generators;
  std::vector<std::string> expressions;
  std::int64_t cl_order = 1;
  std::int64_t d_order = 1;
  friend bool operator==(const PartReport&, const PartReport&) = default;
};

struct OracleReport {
  std::size_t budget = 0;
  std::vector<std::int64_t> h2_factors;
  std::vector<std::int64_t> sha_factors;
  std::size_t cyclic_subgroups_tested = 0;
  std::string verdict;  // MATCH | MISMATCH
  friend bool operator==(const OracleReport&, const OracleReport&) = default;
};

struct PairingReport {
  std::vector<std::string> values;  // one per generator of C_arith(L)/D, in [0,1)
  bool obstruction = false;
  friend bool operator==(const PairingReport&, const PairingReport&) = default;
};

struct GlobalReport {
  std::vector<std::string> ramified;
  std::vector<std::vector<unsigned>> ramified_levels;  // [v][i]
  std::vector<std::vector<unsigned>> levels;
  std::vector<std::int64_t> arith_factors;
  std::vector<std::vector<std::int64_t>> arith_generators;
  std::vector<std::string> arith_expressions;
  std::vector<std::int64_t> omega_factors;
  std::string g_equivalence;  // agree | disagree | skipped
  std::size_t g_checked = 0;
  std::optional<PairingReport> pairing;
  friend bool operator==(const GlobalReport&, const GlobalReport&) = default;
};

struct Report {
  std::string schema = kReportSchema;
  std::string name;
  std::size_t group_order = 0;
  std::int64_t degree = 0;  // [K:k]
  std::optional<std::string> a_label;
  std::optional<unsigned> characteristic;
  std::vector<std::string> factor_labels;
  std::vector<PartReport> parts;
  std::vector<std::int64_t> invariant_factors;  // composed
  std::optional<OracleReport> oracle;
  std::optional<GlobalReport> global;
  friend bool operator==(const Report&, const Report&) = default;
};

inline std::int64_t to_int64(const BigInt& x) {
  if (x > BigInt(INT64_MAX) || x < BigInt(INT64_MIN))
    throw Error(ErrorKind::internal, "cli", "value " + x.str() + " does not fit the report schema");
  return static_cast<std::int64_t>(x);
}

inline std::vector<std::int64_t> to_int64(const IntVector& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(to_int64(x));
  return out;
}

// ---------------------------------------------------------------------------
// JSON

using ReportJson = nlohmann::ordered_json;

inline void to_json(ReportJson& j, const PartReport& r) {
  j = ReportJson{{"p", r.p}, {"n", r.n}, {"e_hat", r.e_hat}, {"e_table", r.e_table}};
  ReportJson blocks = ReportJson::array();
  for (const auto& [e, idx] : r.blocks) blocks.push_back({{"e", e}, {"indices", idx}});
  j["blocks"] = blocks;
  j["gamma"] = r.gamma;
  j["levels"] = r.levels;
  j["invariant_factors"] = r.invariant_factors;
  j["generators"] = r.generators;
  j["expressions"] = r.expressions;
  j["cl_order"] = r.cl_order;
  j["d_order"] = r.d_order;
}

inline void from_json(const ReportJson& j, PartReport& r) {
  j.at("p").get_to(r.p);
  j.at("n").get_to(r.n);
  j.at("e_hat").get_to(r.e_hat);
  j.at("e_table").get_to(r.e_table);
  r.blocks.clear();
  for (const auto& b : j.at("blocks"))
    r.blocks.emplace_back(b.at("e").get<unsigned>(), b.at("indices").get<std::vector<std::size_t>>());
  j.at("gamma").get_to(r.gamma);
  j.at("levels").get_to(r.levels);
  j.at("invariant_factors").get_to(r.invariant_factors);
  j.at("generators").get_to(r.generators);
  j.at("expressions").get_to(r.expressions);
  j.at("cl_order").get_to(r.cl_order);
  j.at("d_order").get_to(r.d_order);
}

inline void to_json(ReportJson& j, const OracleReport& r) {
  j = ReportJson{{"budget", r.budget},
                 {"h2_factors", r.h2_factors},
                 {"sha_factors", r.sha_factors},
                 {"cyclic_subgroups_tested", r.cyclic_subgroups_tested},
                 {"verdict", r.verdict}};
}

inline void from_json(const ReportJson& j, OracleReport& r) {
  j.at("budget").get_to(r.budget);
  j.at("h2_factors").get_to(r.h2_factors);
  j.at("sha_factors").get_to(r.sha_factors);
  j.at("cyclic_subgroups_tested").get_to(r.cyclic_subgroups_tested);
  j.at("verdict").get_to(r.verdict);
}

inline void to_json(ReportJson& j, const GlobalReport& r) {
  j = ReportJson{{"ramified", r.ramified},
                 {"ramified_levels", r.ramified_levels},
                 {"levels", r.levels},
                 {"arith_factors", r.arith_factors},
                 {"arith_generators", r.arith_generators},
                 {"arith_expressions", r.arith_expressions},
                 {"omega_factors", r.omega_factors},
                 {"g_equivalence", r.g_equivalence},
                 {"g_checked", r.g_checked}};
  if (r.pairing) j["pairing"] = ReportJson{{"values", r.pairing->values}, {"obstruction", r.pairing->obstruction}};
}

inline void from_json(const ReportJson& j, GlobalReport& r) {
  j.at("ramified").get_to(r.ramified);
  j.at("ramified_levels").get_to(r.ramified_levels);
  j.at("levels").get_to(r.levels);
  j.at("arith_factors").get_to(r.arith_factors);
  j.at("arith_generators").get_to(r.arith_generators);
  j.at("arith_expressions").get_to(r.arith_expressions);
  j.at("omega_factors").get_to(r.omega_factors);
  j.at("g_equivalence").get_to(r.g_equivalence);
  j.at("g_checked").get_to(r.g_checked);
  r.pairing.reset();
  if (j.contains("pairing")) {
    PairingReport p;
    j["pairing"].at("values").get_to(p.values);
    j["pairing"].at("obstruction").get_to(p.obstruction);
    r.pairing = p;
  }
}

inline void to_json(ReportJson& j, const Report& r) {
  j = ReportJson{{"schema", r.schema}, {"name", r.name}, {"group_order", r.group_order}, {"degree", r.degree}};
  if (r.a_label) j["a"] = *r.a_label;
  if (r.characteristic) j["characteristic"] = *r.characteristic;
  j["factor_labels"] = r.factor_labels;
  j["parts"] = r.parts;
  j["invariant_factors"] = r.invariant_factors;
  if (r.oracle) j["oracle"] = *r.oracle;
  if (r.global) j["global"] = *r.global;
}

inline void from_json(const ReportJson& j, Report& r) {
  j.at("schema").get_to(r.schema);
  if (r.schema != kReportSchema) throw Error(ErrorKind::input, "cli", "unsupported report schema " + r.schema);
  j.at("name").get_to(r.name);
  j.at("group_order").get_to(r.group_order);
  j.at("degree").get_to(r.degree);
  r.a_label = j.contains("a") ? std::optional<std::string>(j["a"].get<std::string>()) : std::nullopt;
  r.characteristic =
      j.contains("characteristic") ? std::optional<unsigned>(j["characteristic"].get<unsigned>()) : std::nullopt;
  j.at("factor_labels").get_to(r.factor_labels);
  j.at("parts").get_to(r.parts);
  j.at("invariant_factors").get_to(r.invariant_factors);
  r.oracle = j.contains("oracle") ? std::optional<OracleReport>(j["oracle"].get<OracleReport>()) : std::nullopt;
  r.global = j.contains("global") ? std::optional<GlobalReport>(j["global"].get<GlobalReport>()) : std::nullopt;
}

inline std::string emit_machine(const Report& r) { return ReportJson(r).dump(2) + "\n"; }

inline Report parse_machine(const std::string& text) {
  try {
    return ReportJson::parse(text).get<Report>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::input, "cli", std::string("malformed report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Text

namespace detail {

template <class T>
std::string join_list(const std::vector<T>& v, const char* sep = ", ") {
  std::ostringstream out;
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? sep : "") << v[k];
  return out.str();
}

inline std::string group_string(const std::vector<std::int64_t>& factors) {
  if (factors.empty()) return "0";
  std::vector<std::string> parts;
  for (auto d : factors) parts.push_back("Z/" + std::to_string(d));
  return join_list(parts, " x ");
}

}  // namespace detail

inline std::string emit_text(const Report& r) {
  std::ostringstream out;
  out << "job: " << r.name << "\n";
  out << "|G| = " << r.group_order << ", [K:k] = " << r.degree;
  if (r.characteristic) out << ", char k = " << *r.characteristic;
  out << "\n";
  out << "factors: " << detail::join_list(r.factor_labels) << "\n";
  for (const auto& part : r.parts) {
    out << "\n== p = " << part.p << " (n = " << part.n << ", ê = " << part.e_hat << ")\n";
    for (std::size_t i = 0; i < part.e_table.size(); ++i)
      out << "  e_" << r.factor_labels[i] << "(m), m=0.." << part.n << ": " << detail::join_list(part.e_table[i])
          << "\n";
    for (const auto& [e, idx] : part.blocks) out << "  I_" << e << " = {" << detail::join_list(idx) << "}\n";
    for (std::size_t i = 0; i < part.gamma.size(); ++i)
      for (std::size_t m = 0; m < part.gamma[i].size(); ++m)
        out << "  Γ_" << r.factor_labels[i] << "^" << m + 1 << " = {" << detail::join_list(part.gamma[i][m], "; ")
            << "}\n";
    out << "  levels m_ij:\n";
    for (const auto& row : part.levels) out << "    " << detail::join_list(row, " ") << "\n";
    out << "  |C(L)| = " << part.cl_order << ", |D| = " << part.d_order << "\n";
    out << "  C(L)/D ≅ " << detail::group_string(part.invariant_factors) << "\n";
    for (std::size_t k = 0; k < part.expressions.size(); ++k)
      out << "    generator " << k + 1 << ": c = (" << detail::join_list(part.generators[k]) << ")  ->  "
          << part.expressions[k] << "\n";
  }
  out << "\nBr(X_a^c)/Br(k) ≅ Ш²_cycl(G, T̂) ≅ ⊕_p C(L[p])/D ≅ " << detail::group_string(r.invariant_factors) << "\n";
  out << "  (unramified Brauer group of a smooth compactification of N(t) = a modulo constants;"
         " independent of a";
  if (r.a_label) out << ", here a = " << *r.a_label;
  out << ")\n";
  if (r.oracle) {
    out << "\noracle (bar complex, |G| <= " << r.oracle->budget << "):\n";
    out << "  H²(G, T̂) ≅ " << detail::group_string(r.oracle->h2_factors) << "\n";
    out << "  Ш²_cycl(G, T̂) ≅ " << detail::group_string(r.oracle->sha_factors) << " over "
        << r.oracle->cyclic_subgroups_tested << " cyclic subgroups\n";
    out << "  verdict: " << r.oracle->verdict << "\n";
  }
  if (r.global) {
    const auto& g = *r.global;
    out << "\nglobal field data (ramified places: " << detail::join_list(g.ramified) << "):\n";
    out << "  Ш²_ω(k, T̂) ≅ C_ω(L)/D = C(L)/D ≅ " << detail::group_string(g.omega_factors) << "\n";
    out << "  Ш²(k, T̂) ≅ C_arith(L)/D ≅ " << detail::group_string(g.arith_factors) << "\n";
    for (std::size_t k = 0; k < g.arith_expressions.size(); ++k)
      out << "    generator " << k + 1 << ": " << g.arith_expressions[k] << "\n";
    out << "  G(K,K') cross-check: " << g.g_equivalence << " (" << g.g_checked << " coefficient vectors)\n";
    if (g.pairing) {
      out << "  Brauer-Manin pairing on generators: " << detail::join_list(g.pairing->values) << "\n";
      out << "  obstruction: " << (g.pairing->obstruction ? "present" : "none")
          << " (conditional on the supplied local invariants)\n";
    }
  }
  return out.str();
}

}  // namespace normtorus
