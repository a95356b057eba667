#pragma once

// Finite groups as explicit multiplication tables.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "normtorus/error.hpp"

namespace normtorus {

using Element = std::uint32_t;
using Permutation = std::vector<std::uint32_t>;  // images of 0..degree-1

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline constexpr std::size_t kDefaultClosureBound = 1'000'000;

class FiniteGroup {
 public:
  /// Validates a Cayley table: latin square, two-sided identity, associativity.
  static GroupPtr from_table(std::vector<std::vector<Element>> table, std::vector<std::string> labels = {},
                             std::vector<Element> generators = {}) {
    const std::size_t n = table.size();
    if (n == 0) throw Error(ErrorKind::not_a_group, "group-core", "empty table");
    for (const auto& row : table) {
      if (row.size() != n) throw Error(ErrorKind::not_a_group, "group-core", "table is not square");
      for (Element x : row)
        if (x >= n) throw Error(ErrorKind::not_a_group, "group-core", "table entry out of range");
    }
    FiniteGroup g;
    g.order_ = n;
    g.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g.table_[a * n + b] = table[a][b];
    g.finish(labels, generators, /*check_associativity=*/true);
    return std::make_shared<const FiniteGroup>(std::move(g));
  }

  /// Breadth-first closure of permutation generators. Elements appear in
  /// discovery order; the product a*b applies a first, then b.
  static GroupPtr from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                    std::size_t bound = kDefaultClosureBound) {
    for (const auto& p : generators) {
      if (p.size() != degree) throw Error(ErrorKind::input, "group-core", "permutation has wrong degree");
      std::vector<bool> seen(degree, false);
      for (auto x : p) {
        if (x >= degree || seen[x]) throw Error(ErrorKind::input, "group-core", "not a permutation");
        seen[x] = true;
      }
    }
    Permutation id(degree);
    std::iota(id.begin(), id.end(), 0u);
    auto compose = [](const Permutation& a, const Permutation& b) {
      Permutation c(a.size());
      for (std::size_t x = 0; x < a.size(); ++x) c[x] = b[a[x]];
      return c;
    };
    std::vector<Permutation> elements{id};
    std::map<Permutation, Element> index{{id, 0}};
    for (std::size_t k = 0; k < elements.size(); ++k) {
      for (const auto& gen : generators) {
        Permutation next = compose(elements[k], gen);
        if (index.count(next)) continue;
        if (elements.size() >= bound)
          throw Error(ErrorKind::closure_too_large, "group-core",
                      "permutation closure exceeds " + std::to_string(bound) + " elements");
        index.emplace(next, static_cast<Element>(elements.size()));
        elements.push_back(std::move(next));
      }
    }
    FiniteGroup g;
    g.order_ = elements.size();
    g.table_.resize(g.order_ * g.order_);
    for (std::size_t a = 0; a < g.order_; ++a)
      for (std::size_t b = 0; b < g.order_; ++b) g.table_[a * g.order_ + b] = index.at(compose(elements[a], elements[b]));
    std::vector<std::string> labels;
    for (const auto& p : elements) labels.push_back(cycle_string(p));
    std::vector<Element> gens;
    for (const auto& p : generators) gens.push_back(index.at(p));
    g.finish(labels, gens, false);
    return std::make_shared<const FiniteGroup>(std::move(g));
  }

  /// Z/n_1 x ... x Z/n_k; element index is mixed radix with the last
  /// coordinate varying fastest.
  static GroupPtr cyclic_product(const std::vector<std::uint32_t>& orders) {
    std::size_t n = 1;
    for (auto o : orders) {
      if (o == 0) throw Error(ErrorKind::input, "group-core", "cyclic factor of order 0");
      n *= o;
    }
    auto decode = [&](std::size_t x) {
      std::vector<std::uint32_t> c(orders.size());
      for (std::size_t k = orders.size(); k-- > 0;) {
        c[k] = static_cast<std::uint32_t>(x % orders[k]);
        x /= orders[k];
      }
      return c;
    };
    auto encode = [&](const std::vector<std::uint32_t>& c) {
      std::size_t x = 0;
      for (std::size_t k = 0; k < orders.size(); ++k) x = x * orders[k] + c[k];
      return static_cast<Element>(x);
    };
    FiniteGroup g;
    g.order_ = n;
    g.table_.resize(n * n);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < n; ++a) {
      auto ca = decode(a);
      std::ostringstream os;
      os << '(';
      for (std::size_t k = 0; k < ca.size(); ++k) os << (k ? "," : "") << ca[k];
      os << ')';
      labels.push_back(os.str());
      for (std::size_t b = 0; b < n; ++b) {
        auto cb = decode(b);
        for (std::size_t k = 0; k < ca.size(); ++k) cb[k] = (ca[k] + cb[k]) % orders[k];
        g.table_[a * n + b] = encode(cb);
      }
    }
    std::vector<Element> gens;
    for (std::size_t k = 0; k < orders.size(); ++k) {
      std::vector<std::uint32_t> c(orders.size(), 0);
      c[k] = 1 % orders[k];
      gens.push_back(encode(c));
    }
    g.finish(labels, gens, false);
    return std::make_shared<const FiniteGroup>(std::move(g));
  }

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  Element conjugate(Element g, Element h) const { return mul(mul(h, g), inverse(h)); }  // h g h^-1
  const std::string& label(Element a) const { return labels_[a]; }
  const std::vector<Element>& generators() const noexcept { return generators_; }

  Element power(Element a, long long k) const {
    Element base = k < 0 ? inverse(a) : a;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Element r = identity_;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  std::size_t element_order(Element a) const { return element_order_[a]; }

  /// Elements of the cyclic group generated by a, as e, a, a^2, ...
  std::vector<Element> cyclic_elements(Element a) const {
    std::vector<Element> out{identity_};
    for (Element x = a; x != identity_; x = mul(x, a)) out.push_back(x);
    return out;
  }

  static std::string cycle_string(const Permutation& p) {
    std::string s;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (seen[x] || p[x] == x) continue;
      s += '(';
      for (std::size_t y = x; !seen[y]; y = p[y]) {
        seen[y] = true;
        if (s.back() != '(') s += ' ';
        s += std::to_string(y + 1);
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }

 private:
  FiniteGroup() = default;

  void finish(const std::vector<std::string>& labels, const std::vector<Element>& generators, bool check_associativity) {
    const std::size_t n = order_;
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<bool> row(n, false), col(n, false);
      for (std::size_t b = 0; b < n; ++b) {
        row[table_[a * n + b]] = true;
        col[table_[b * n + a]] = true;
      }
      if (std::count(row.begin(), row.end(), false) || std::count(col.begin(), col.end(), false))
        throw Error(ErrorKind::not_a_group, "group-core", "table is not a latin square");
    }
    std::optional<Element> id;
    for (std::size_t e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a) ok = table_[e * n + a] == a && table_[a * n + e] == a;
      if (ok) id = static_cast<Element>(e);
    }
    if (!id) throw Error(ErrorKind::not_a_group, "group-core", "no identity element");
    identity_ = *id;
    if (check_associativity)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const Element ab = table_[a * n + b];
          for (std::size_t c = 0; c < n; ++c)
            if (table_[ab * n + c] != table_[a * n + table_[b * n + c]])
              throw Error(ErrorKind::not_a_group, "group-core",
                          "non-associative triple (" + std::to_string(a) + "," + std::to_string(b) + "," +
                              std::to_string(c) + ")");
        }
    inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a * n + b] == identity_) inverse_[a] = static_cast<Element>(b);
    element_order_.assign(n, 1);
    for (std::size_t a = 0; a < n; ++a) {
      Element x = static_cast<Element>(a);
      while (x != identity_) {
        x = table_[x * n + a];
        ++element_order_[a];
      }
    }
    labels_ = labels;
    if (labels_.size() != n) {
      labels_.clear();
      for (std::size_t a = 0; a < n; ++a) labels_.push_back("#" + std::to_string(a));
    }
    for (Element gen : generators)
      if (gen >= n) throw Error(ErrorKind::input, "group-core", "generator index out of range");
    generators_ = generators;
  }

  std::size_t order_ = 0;
  Element identity_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::size_t> element_order_;
  std::vector<std::string> labels_;
  std::vector<Element> generators_;
};

class Subgroup {
 public:
  Subgroup() = default;

  /// Wraps a set already known to be closed; prefer subgroup_closure.
  Subgroup(GroupPtr parent, std::vector<Element> elements) : parent_(std::move(parent)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    mask_.assign(parent_->order(), false);
    for (Element x : elements_) mask_[x] = true;
  }

  static Subgroup whole(const GroupPtr& g) {
    std::vector<Element> all(g->order());
    std::iota(all.begin(), all.end(), Element{0});
    return Subgroup(g, std::move(all));
  }
  static Subgroup trivial(const GroupPtr& g) { return Subgroup(g, {g->identity()}); }

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t index() const { return parent_->order() / size(); }
  bool contains(Element x) const { return mask_[x]; }

  bool is_subset_of(const Subgroup& other) const {
    return std::all_of(elements_.begin(), elements_.end(), [&](Element x) { return other.contains(x); });
  }

  Subgroup intersect(const Subgroup& other) const {
    std::vector<Element> common;
    for (Element x : elements_)
      if (other.contains(x)) common.push_back(x);
    return Subgroup(parent_, std::move(common));
  }

  /// h S h^-1
  Subgroup conjugate_by(Element h) const {
    std::vector<Element> out;
    for (Element x : elements_) out.push_back(parent_->conjugate(x, h));
    return Subgroup(parent_, std::move(out));
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }

 private:
  GroupPtr parent_;
  std::vector<Element> elements_;
  std::vector<bool> mask_;
};

inline Subgroup subgroup_closure(const GroupPtr& g, const std::vector<Element>& gens) {
  std::vector<bool> in(g->order(), false);
  std::vector<Element> elems{g->identity()};
  in[g->identity()] = true;
  for (Element x : gens)
    if (x >= g->order()) throw Error(ErrorKind::input, "group-core", "element index out of range");
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (Element s : gens) {
      Element y = g->mul(elems[k], s);
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  return Subgroup(g, std::move(elems));
}

/// Subgroup generated by two subgroups.
inline Subgroup join(const Subgroup& a, const Subgroup& b) {
  std::vector<Element> gens = a.elements();
  gens.insert(gens.end(), b.elements().begin(), b.elements().end());
  return subgroup_closure(a.parent(), gens);
}

struct ConjugacyClassTable {
  std::vector<std::uint32_t> class_of;
  std::vector<std::vector<Element>> classes;
  std::vector<Element> representative;
  std::vector<Element> witness;  // witness[x] conjugates representative[class_of[x]] to x

  std::size_t count() const noexcept { return classes.size(); }
};

inline ConjugacyClassTable conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  ConjugacyClassTable t;
  constexpr std::uint32_t unassigned = ~std::uint32_t{0};
  t.class_of.assign(n, unassigned);
  t.witness.assign(n, g.identity());
  for (Element x = 0; x < n; ++x) {
    if (t.class_of[x] != unassigned) continue;
    const auto id = static_cast<std::uint32_t>(t.classes.size());
    std::vector<Element> members;
    for (Element h = 0; h < n; ++h) {
      Element y = g.conjugate(x, h);
      if (t.class_of[y] == unassigned) {
        t.class_of[y] = id;
        t.witness[y] = h;
        members.push_back(y);
      }
    }
    std::sort(members.begin(), members.end());
    t.classes.push_back(std::move(members));
    t.representative.push_back(x);
  }
  return t;
}

/// One cyclic subgroup per conjugacy class of cyclic subgroups, ordered by
/// size and then by the sorted element list of the listed representative.
inline std::vector<Subgroup> cyclic_subgroups_up_to_conjugacy(const GroupPtr& g) {
  std::set<std::vector<Element>> seen;
  std::map<std::pair<std::size_t, std::vector<Element>>, Subgroup> canonical;
  for (Element x = 0; x < g->order(); ++x) {
    Subgroup c(g, g->cyclic_elements(x));
    if (!seen.insert(c.elements()).second) continue;
    std::vector<Element> key = c.elements();
    for (Element h = 0; h < g->order(); ++h) {
      Subgroup conj = c.conjugate_by(h);
      seen.insert(conj.elements());
      key = std::min(key, conj.elements());
    }
    canonical.emplace(std::make_pair(key.size(), key), Subgroup(g, key));
  }
  std::vector<Subgroup> out;
  for (auto& [key, s] : canonical) out.push_back(s);
  return out;
}

inline bool is_normal(const Subgroup& h) {
  const auto& g = *h.parent();
  for (Element x : h.elements())
    for (Element y = 0; y < g.order(); ++y)
      if (!h.contains(g.conjugate(x, y))) return false;
  return true;
}

struct CyclicQuotient {
  std::size_t order;
  Element generator;  // its coset generates G/H
};

/// If h is normal and G/h is cyclic, its order and a generating coset
/// (the lowest-index element whose coset has full order).
inline std::optional<CyclicQuotient> quotient_is_cyclic(const Subgroup& h) {
  if (!is_normal(h)) return std::nullopt;
  const auto& g = *h.parent();
  const std::size_t q = h.index();
  for (Element t = 0; t < g.order(); ++t) {
    std::size_t k = 1;
    for (Element x = t; !h.contains(x); x = g.mul(x, t)) ++k;
    if (k == q) return CyclicQuotient{q, t};
  }
  return std::nullopt;
}

/// Order of the coset xH in G/H for normal H.
inline std::size_t coset_order(const Subgroup& h, Element x) {
  const auto& g = *h.parent();
  std::size_t k = 1;
  for (Element y = x; !h.contains(y); y = g.mul(y, x)) ++k;
  return k;
}

/// Left coset representatives of h (lowest index per coset) and the coset
/// index of every element.
struct LeftCosets {
  std::vector<Element> representatives;
  std::vector<std::uint32_t> coset_of;
};

inline LeftCosets left_cosets(const Subgroup& h) {
  const auto& g = *h.parent();
  LeftCosets c;
  constexpr std::uint32_t unassigned = ~std::uint32_t{0};
  c.coset_of.assign(g.order(), unassigned);
  for (Element x = 0; x < g.order(); ++x) {
    if (c.coset_of[x] != unassigned) continue;
    const auto id = static_cast<std::uint32_t>(c.representatives.size());
    c.representatives.push_back(x);
    for (Element y : h.elements()) c.coset_of[g.mul(x, y)] = id;
  }
  return c;
}

}  // namespace normtorus
