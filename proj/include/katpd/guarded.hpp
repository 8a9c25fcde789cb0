#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "katpd/assumption_set.hpp"

namespace katpd {

/// α1 p1 α2 ... p(n-1) αn.
struct GuardedString {
  std::vector<Atom> atoms;
  std::vector<ActionId> actions;

  GuardedString() = default;
  explicit GuardedString(Atom alpha) : atoms{alpha} {}
  GuardedString(std::vector<Atom> a, std::vector<ActionId> p) : atoms(std::move(a)), actions(std::move(p)) {
    if (atoms.size() != actions.size() + 1) throw Error("guarded string needs one more atom than actions");
  }

  /// Number of actions.
  std::size_t length() const { return actions.size(); }
  Atom first() const { return atoms.front(); }
  Atom last() const { return atoms.back(); }

  friend bool operator==(const GuardedString&, const GuardedString&) = default;
  friend auto operator<=>(const GuardedString&, const GuardedString&) = default;
};

inline std::string to_string(const GuardedString& x, const SymbolTable& table) {
  std::string out = table.format_atom(x.atoms.front());
  for (std::size_t i = 0; i < x.actions.size(); ++i) {
    out += ' ';
    out += table.action_name(x.actions[i]);
    out += ' ';
    out += table.format_atom(x.atoms[i + 1]);
  }
  return out;
}

/// The members of some GS(e) with at most `bound` actions.
struct GsSet {
  std::set<GuardedString> strings;
  std::size_t bound = 0;

  bool contains(const GuardedString& x) const { return strings.count(x) != 0; }
  std::size_t size() const { return strings.size(); }

  /// The members with at most `b` actions.
  GsSet truncate(std::size_t b) const {
    GsSet out{{}, b};
    for (const auto& x : strings) {
      if (x.length() <= b) out.strings.insert(x);
    }
    return out;
  }

  friend bool operator==(const GsSet&, const GsSet&) = default;
};

/// X ◇ Y restricted to strings of at most `bound` actions.
inline GsSet fusion_product(const GsSet& x, const GsSet& y, std::size_t bound) {
  std::map<Atom, std::vector<const GuardedString*>> by_first;
  for (const auto& s : y.strings) by_first[s.first()].push_back(&s);
  GsSet out{{}, bound};
  for (const auto& s : x.strings) {
    auto it = by_first.find(s.last());
    if (it == by_first.end()) continue;
    for (const GuardedString* t : it->second) {
      if (s.length() + t->length() > bound) continue;
      GuardedString z = s;
      z.atoms.insert(z.atoms.end(), t->atoms.begin() + 1, t->atoms.end());
      z.actions.insert(z.actions.end(), t->actions.begin(), t->actions.end());
      out.strings.insert(std::move(z));
    }
  }
  return out;
}

/// D_{αp}(X): the suffixes y with α p y ∈ X.
inline GsSet left_quotient(const GsSet& x, Atom alpha, ActionId p) {
  GsSet out{{}, x.bound == 0 ? 0 : x.bound - 1};
  for (const auto& s : x.strings) {
    if (s.length() == 0 || s.first() != alpha || s.actions.front() != p) continue;
    out.strings.emplace(std::vector<Atom>(s.atoms.begin() + 1, s.atoms.end()),
                        std::vector<ActionId>(s.actions.begin() + 1, s.actions.end()));
  }
  return out;
}

namespace detail {

// Enumerates GS(e) (or GS^Γ(e) when `gamma` is given) up to a bound, by
// structural recursion over the defining clauses.
class GsEnumerator {
 public:
  GsEnumerator(const SymbolTable& table, const AssumptionSet* gamma) : table_(table), gamma_(gamma) {
    for (Atom a : table.atoms()) {
      if (!gamma_ || atom_admitted(*gamma_, a)) atoms_.push_back(a);
    }
  }

  GsSet run(const KatExpr& e, std::size_t bound) const {
    switch (e.kind()) {
      case KatExpr::Kind::Bool: {
        GsSet out{{}, bound};
        for (Atom a : atoms_) {
          if (atom_satisfies(a, e.bool_expr())) out.strings.emplace(a);
        }
        return out;
      }
      case KatExpr::Kind::Action: {
        GsSet out{{}, bound};
        if (bound == 0) return out;
        for (Atom a : atoms_) {
          for (Atom b : atoms_) {
            if (gamma_ && !step_admitted(*gamma_, a, e.action_id(), b)) continue;
            out.strings.emplace(std::vector<Atom>{a, b}, std::vector<ActionId>{e.action_id()});
          }
        }
        return out;
      }
      case KatExpr::Kind::Plus: {
        GsSet out{{}, bound};
        for (const auto& c : e.children()) {
          auto part = run(c, bound);
          out.strings.merge(part.strings);
        }
        return out;
      }
      case KatExpr::Kind::Dot: {
        GsSet acc = run(e.children().front(), bound);
        for (std::size_t i = 1; i < e.children().size() && !acc.strings.empty(); ++i) {
          acc = fusion_product(acc, run(e.children()[i], bound), bound);
        }
        acc.bound = bound;
        return acc;
      }
      case KatExpr::Kind::Star: {
        // X^0 = atoms; X^(n+1) = X ◇ X^n.  Only new strings are fused again.
        const GsSet body = run(e.body(), bound);
        GsSet out{{}, bound};
        for (Atom a : atoms_) out.strings.emplace(a);
        GsSet frontier = out;
        while (!frontier.strings.empty()) {
          GsSet next = fusion_product(body, frontier, bound);
          frontier = GsSet{{}, bound};
          for (auto& s : next.strings) {
            if (out.strings.insert(s).second) frontier.strings.insert(s);
          }
        }
        return out;
      }
    }
    return GsSet{{}, bound};
  }

 private:
  const SymbolTable& table_;
  const AssumptionSet* gamma_;
  std::vector<Atom> atoms_;
};

// Decides x ∈ GS(e) (or GS^Γ(e)) for one string by dynamic programming over
// its segments, following the same clauses as GsEnumerator.
class GsMembership {
 public:
  GsMembership(const GuardedString& x, const AssumptionSet* gamma) : x_(x), gamma_(gamma) {}

  bool contains(const KatExpr& e) { return segment(e, 0, x_.atoms.size() - 1); }

 private:
  bool atom_ok(std::size_t i) const { return !gamma_ || atom_admitted(*gamma_, x_.atoms[i]); }

  bool segment(const KatExpr& e, std::size_t i, std::size_t j) {
    switch (e.kind()) {
      case KatExpr::Kind::Bool: return i == j && atom_ok(i) && atom_satisfies(x_.atoms[i], e.bool_expr());
      case KatExpr::Kind::Action:
        return j == i + 1 && x_.actions[i] == e.action_id() && atom_ok(i) && atom_ok(j) &&
               (!gamma_ || step_admitted(*gamma_, x_.atoms[i], x_.actions[i], x_.atoms[j]));
      case KatExpr::Kind::Plus:
        for (const auto& c : e.children()) {
          if (segment(c, i, j)) return true;
        }
        return false;
      case KatExpr::Kind::Dot: return sequence(e, 0, i, j);
      case KatExpr::Kind::Star: return star(e, i, j);
    }
    return false;
  }

  // children[k..] of the product `e` cover atoms i..j.
  bool sequence(const KatExpr& e, std::size_t k, std::size_t i, std::size_t j) {
    const auto kids = e.children();
    if (k + 1 == kids.size()) return segment(kids[k], i, j);
    const auto key = Key{e.identity(), k, i, j, 1};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = false;
    for (std::size_t m = i; m <= j && !result; ++m) {
      result = segment(kids[k], i, m) && sequence(e, k + 1, m, j);
    }
    memo_[key] = result;
    return result;
  }

  bool star(const KatExpr& e, std::size_t i, std::size_t j) {
    if (i == j) return atom_ok(i);
    const auto key = Key{e.identity(), 0, i, j, 2};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = false;
    // Atom-only iterations fuse to the identity, so each round must consume
    // at least one action.
    for (std::size_t m = i + 1; m <= j && !result; ++m) {
      result = segment(e.body(), i, m) && star(e, m, j);
    }
    memo_[key] = result;
    return result;
  }

  struct Key {
    const void* node;
    std::size_t k, i, j;
    int tag;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const {
      std::size_t h = std::hash<const void*>{}(key.node);
      for (std::size_t v : {key.k, key.i, key.j, static_cast<std::size_t>(key.tag)}) h = hash_mix(h, v);
      return h;
    }
  };

  const GuardedString& x_;
  const AssumptionSet* gamma_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

}  // namespace detail

/// { x ∈ GS(e) : x has at most `bound` actions }.
inline GsSet gs_bounded(const KatExpr& e, const SymbolTable& table, std::size_t bound) {
  return detail::GsEnumerator(table, nullptr).run(e, bound);
}

/// { x ∈ GS^Γ(e) : x has at most `bound` actions }.
inline GsSet gs_gamma_bounded(const KatExpr& e, const AssumptionSet& gamma, const SymbolTable& table,
                              std::size_t bound) {
  return detail::GsEnumerator(table, &gamma).run(e, bound);
}

/// x ∈ GS(e), without enumerating GS(e).
inline bool gs_contains(const KatExpr& e, const GuardedString& x) {
  return detail::GsMembership(x, nullptr).contains(e);
}

/// x ∈ GS^Γ(e), without enumerating GS^Γ(e).
inline bool gs_gamma_contains(const KatExpr& e, const AssumptionSet& gamma, const GuardedString& x) {
  return detail::GsMembership(x, &gamma).contains(e);
}

}  // namespace katpd
