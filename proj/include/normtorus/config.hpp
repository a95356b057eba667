#pragma once

// Job configuration: a JSON document naming the group, K, the factors and
// optional global data. Subgroups are given by generator words.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "normtorus/error.hpp"
#include "normtorus/global.hpp"
#include "normtorus/group.hpp"

namespace normtorus {

using Json = nlohmann::ordered_json;

inline constexpr std::size_t kDefaultMaxGroupOrder = 512;

struct SubgroupSpec {
  std::string label;
  std::vector<std::string> generators;  // words
};

struct InvariantSpec {
  std::string place;
  std::size_t factor = 0;
  std::string numerator;
  std::string denominator;
};

struct JobConfig {
  std::string name;
  Json group;  // one of {"cyclic_product": [...]}, {"permutations": {...}}, {"table": [[...]]}
  std::vector<std::string> generator_names;
  std::vector<std::string> k_generators;
  std::vector<SubgroupSpec> factors;
  std::optional<unsigned> prime;
  std::optional<std::string> a_label;
  std::optional<std::string> chi_generator;
  std::optional<unsigned> characteristic;
  bool oracle = false;
  std::size_t oracle_budget = 16;
  std::size_t max_group_order = kDefaultMaxGroupOrder;
  std::optional<std::vector<SubgroupSpec>> ramified;
  std::optional<std::vector<InvariantSpec>> invariants;
};

namespace detail {

inline Error input_error(const std::string& what) { return Error(ErrorKind::input, "cli", what); }

template <class T>
T get_or_throw(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("bad or missing key '") + key + "': " + e.what());
  }
}

inline std::vector<SubgroupSpec> parse_subgroup_list(const Json& j, const char* what) {
  if (!j.is_array()) throw input_error(std::string(what) + " must be a list");
  std::vector<SubgroupSpec> out;
  for (const auto& item : j) {
    SubgroupSpec s;
    s.label = get_or_throw<std::string>(item, "label");
    s.generators = get_or_throw<std::vector<std::string>>(item, "generators");
    out.push_back(std::move(s));
  }
  return out;
}

inline std::string number_text(const Json& j) {
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_string()) return j.get<std::string>();
  throw input_error("invariant numerator/denominator must be an integer or a decimal string");
}

}  // namespace detail

inline std::vector<SubgroupSpec> parse_ramified(const Json& j) { return detail::parse_subgroup_list(j, "ramified"); }

inline std::vector<InvariantSpec> parse_invariants(const Json& j) {
  if (!j.is_array()) throw detail::input_error("invariants must be a list");
  std::vector<InvariantSpec> out;
  for (const auto& item : j) {
    InvariantSpec s;
    s.place = detail::get_or_throw<std::string>(item, "place");
    s.factor = detail::get_or_throw<std::size_t>(item, "factor");
    if (!item.contains("num") || !item.contains("den")) throw detail::input_error("invariant needs num and den");
    s.numerator = detail::number_text(item["num"]);
    s.denominator = detail::number_text(item["den"]);
    out.push_back(std::move(s));
  }
  return out;
}

inline JobConfig parse_config(const Json& j) {
  if (!j.is_object()) throw detail::input_error("configuration must be a JSON object");
  JobConfig c;
  c.name = j.value("name", std::string("job"));
  if (!j.contains("group")) throw detail::input_error("missing 'group'");
  c.group = j["group"];
  if (j.contains("generator_names")) c.generator_names = detail::get_or_throw<std::vector<std::string>>(j, "generator_names");
  c.k_generators = detail::get_or_throw<std::vector<std::string>>(j, "K");
  if (!j.contains("factors")) throw detail::input_error("missing 'factors'");
  c.factors = detail::parse_subgroup_list(j["factors"], "factors");
  if (j.contains("prime")) c.prime = detail::get_or_throw<unsigned>(j, "prime");
  if (j.contains("a")) c.a_label = detail::get_or_throw<std::string>(j, "a");
  if (j.contains("chi_generator")) c.chi_generator = detail::get_or_throw<std::string>(j, "chi_generator");
  if (j.contains("characteristic")) c.characteristic = detail::get_or_throw<unsigned>(j, "characteristic");
  c.oracle = j.value("oracle", false);
  c.oracle_budget = j.value("oracle_budget", std::size_t{16});
  c.max_group_order = j.value("max_group_order", kDefaultMaxGroupOrder);
  if (j.contains("ramified")) c.ramified = parse_ramified(j["ramified"]);
  if (j.contains("invariants")) c.invariants = parse_invariants(j["invariants"]);
  return c;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw detail::input_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw detail::input_error(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Groups and words

namespace detail {

inline Permutation parse_cycles(const std::string& text, std::size_t degree) {
  Permutation p(degree);
  for (std::size_t x = 0; x < degree; ++x) p[x] = static_cast<std::uint32_t>(x);
  std::size_t k = 0;
  while (k < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[k]))) {
      ++k;
      continue;
    }
    if (text[k] != '(') throw input_error("bad cycle notation: " + text);
    const std::size_t close = text.find(')', k);
    if (close == std::string::npos) throw input_error("unclosed cycle: " + text);
    std::istringstream in(text.substr(k + 1, close - k - 1));
    std::vector<std::size_t> cycle;
    for (std::string tok; in >> tok;) {
      for (char& ch : tok)
        if (ch == ',') ch = ' ';
      std::istringstream inner(tok);
      for (std::size_t v; inner >> v;) {
        if (v < 1 || v > degree) throw input_error("point out of range in " + text);
        cycle.push_back(v - 1);
      }
    }
    Permutation q(degree);
    for (std::size_t x = 0; x < degree; ++x) q[x] = static_cast<std::uint32_t>(x);
    for (std::size_t i = 0; i < cycle.size(); ++i) q[cycle[i]] = static_cast<std::uint32_t>(cycle[(i + 1) % cycle.size()]);
    // apply p first, then q
    Permutation r(degree);
    for (std::size_t x = 0; x < degree; ++x) r[x] = q[p[x]];
    p = r;
    k = close + 1;
  }
  return p;
}

// Splits on '*' and whitespace; a run of parenthesized groups is one token.
inline std::vector<std::string> tokenize_word(const std::string& word) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t k = 0; k < word.size(); ++k) {
    const char ch = word[k];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw input_error("unbalanced parentheses in word: " + word);
    const bool sep = depth == 0 && (ch == '*' || std::isspace(static_cast<unsigned char>(ch)));
    if (sep) {
      // a cycle token may continue after spaces only inside parentheses
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += ch;
    if (depth == 0 && ch == ')' && k + 1 < word.size() && word[k + 1] != '(' && word[k + 1] != '^') {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (depth != 0) throw input_error("unbalanced parentheses in word: " + word);
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace detail

/// A group together with the names usable in words.
struct NamedGroup {
  GroupPtr group;
  std::map<std::string, Element> names;
  std::optional<std::size_t> degree;  // for permutation groups

  Element resolve_token(const std::string& token) const {
    std::string base = token;
    long long exponent = 1;
    const auto caret = token.rfind('^');
    if (caret != std::string::npos && caret + 1 < token.size() && token.back() != ')') {
      base = token.substr(0, caret);
      try {
        exponent = std::stoll(token.substr(caret + 1));
      } catch (const std::exception&) {
        throw detail::input_error("bad exponent in " + token);
      }
    }
    Element x;
    if (base == "e") {
      x = group->identity();
    } else if (auto it = names.find(base); it != names.end()) {
      x = it->second;
    } else if (!base.empty() && std::all_of(base.begin(), base.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const auto idx = std::stoull(base);
      if (idx >= group->order()) throw detail::input_error("element index out of range: " + base);
      x = static_cast<Element>(idx);
    } else if (auto label = find_label(base)) {
      x = *label;
    } else if (!base.empty() && base.front() == '(') {
      std::optional<Element> found;
      std::string key = base;
      if (degree) key = FiniteGroup::cycle_string(detail::parse_cycles(base, *degree));
      for (Element y = 0; y < group->order() && !found; ++y)
        if (group->label(y) == key) found = y;
      if (!found) throw detail::input_error("no group element matches " + base);
      x = *found;
    } else {
      throw detail::input_error("unknown generator name: " + base);
    }
    return group->power(x, exponent);
  }

  std::optional<Element> find_label(const std::string& text) const {
    for (Element y = 0; y < group->order(); ++y)
      if (group->label(y) == text) return y;
    return std::nullopt;
  }

  /// Words multiply left to right.
  Element resolve_word(const std::string& word) const {
    Element acc = group->identity();
    const auto tokens = detail::tokenize_word(word);
    if (tokens.empty()) throw detail::input_error("empty word");
    for (const auto& t : tokens) acc = group->mul(acc, resolve_token(t));
    return acc;
  }

  Subgroup subgroup(const std::vector<std::string>& words) const {
    std::vector<Element> gens;
    for (const auto& w : words) gens.push_back(resolve_word(w));
    return subgroup_closure(group, gens);
  }
};

inline NamedGroup build_group(const JobConfig& c) {
  const Json& g = c.group;
  NamedGroup out;
  if (!g.is_object() || g.contains("cyclic_product") + g.contains("permutations") + g.contains("table") != 1)
    throw detail::input_error("'group' must have exactly one of cyclic_product, permutations, table");
  if (g.contains("cyclic_product")) {
    const auto orders = detail::get_or_throw<std::vector<std::uint32_t>>(g, "cyclic_product");
    std::size_t n = 1;
    for (auto o : orders) {
      if (o == 0) throw detail::input_error("cyclic factor of order 0");
      n *= o;
      if (n > c.max_group_order) throw detail::input_error("group order exceeds max_group_order");
    }
    out.group = FiniteGroup::cyclic_product(orders);
  } else if (g.contains("permutations")) {
    const Json& p = g["permutations"];
    const auto degree = detail::get_or_throw<std::size_t>(p, "degree");
    std::vector<Permutation> gens;
    for (const auto& text : detail::get_or_throw<std::vector<std::string>>(p, "generators"))
      gens.push_back(detail::parse_cycles(text, degree));
    try {
      out.group = FiniteGroup::from_permutations(degree, gens, c.max_group_order);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::closure_too_large) throw Error(ErrorKind::input, "group-core", e.what());
      throw;
    }
    out.degree = degree;
  } else if (g.contains("table")) {
    const auto table = detail::get_or_throw<std::vector<std::vector<Element>>>(g, "table");
    if (table.size() > c.max_group_order) throw detail::input_error("group order exceeds max_group_order");
    std::vector<std::string> labels;
    if (c.group.contains("labels")) labels = detail::get_or_throw<std::vector<std::string>>(g, "labels");
    out.group = FiniteGroup::from_table(table, labels);
  } else {
    throw detail::input_error("unknown group kind");
  }
  const auto& gens = out.group->generators();
  if (!c.generator_names.empty()) {
    if (c.generator_names.size() > gens.size())
      throw detail::input_error("more generator_names than group generators");
    for (std::size_t k = 0; k < c.generator_names.size(); ++k) out.names[c.generator_names[k]] = gens[k];
  } else {
    char next = 'a';
    for (std::size_t k = 0; k < gens.size() && next <= 'z'; ++k, ++next) {
      if (next == 'e') ++next;  // reserved for the identity
      out.names[std::string(1, next)] = gens[k];
    }
  }
  return out;
}

inline std::vector<LocalInvariant> to_local_invariants(const std::vector<InvariantSpec>& specs) {
  std::vector<LocalInvariant> out;
  for (const auto& s : specs) {
    LocalInvariant v;
    v.place = s.place;
    v.factor = s.factor;
    try {
      v.numerator = BigInt(s.numerator);
      v.denominator = BigInt(s.denominator);
    } catch (const std::exception&) {
      throw detail::input_error("invariant at " + s.place + " is not an integer fraction");
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace normtorus
