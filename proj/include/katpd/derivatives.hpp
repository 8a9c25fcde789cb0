#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "katpd/syntax.hpp"

namespace katpd {

using ExprSet = std::set<KatExpr>;

/// One letter αp of (At·Σ).
struct Head {
  Atom atom;
  ActionId action = 0;

  friend bool operator==(const Head&, const Head&) = default;
  friend auto operator<=>(const Head&, const Head&) = default;
};

using Word = std::vector<Head>;

/// The linear form f(e): for every head αp, the set of e' with (αp, e') in
/// f(e).  Heads without derivatives are absent.
using LinForm = std::map<Head, ExprSet>;

/// E_α(e): 1 iff α ∈ GS(e).
inline bool eps_alpha(Atom alpha, const KatExpr& e) {
  switch (e.kind()) {
    case KatExpr::Kind::Action: return false;
    case KatExpr::Kind::Bool: return atom_satisfies(alpha, e.bool_expr());
    case KatExpr::Kind::Plus:
      for (const auto& c : e.children()) {
        if (eps_alpha(alpha, c)) return true;
      }
      return false;
    case KatExpr::Kind::Dot:
      for (const auto& c : e.children()) {
        if (!eps_alpha(alpha, c)) return false;
      }
      return true;
    case KatExpr::Kind::Star: return true;
  }
  return false;
}

/// E_α lifted to a set: the Boolean sum over its members.
inline bool eps_set(Atom alpha, const ExprSet& set) {
  for (const auto& e : set) {
    if (eps_alpha(alpha, e)) return true;
  }
  return false;
}

/// Γ·e with the absorptions Γ·0 = ∅ and Γ·1 = Γ.
inline ExprSet concat(const ExprSet& set, const KatExpr& tail) {
  if (tail.is_zero()) return {};
  if (tail.is_one()) return set;
  ExprSet out;
  for (const auto& e : set) out.insert(KatExpr::product(e, tail));
  return out;
}

namespace detail {

inline void insert_nonzero(ExprSet& out, const KatExpr& e) {
  if (!e.is_zero()) out.insert(e);
}

inline KatExpr product_of(std::span<const KatExpr> parts) {
  return KatExpr::product(std::vector<KatExpr>(parts.begin(), parts.end()));
}

/// Leaf rule of the ordinary derivative: Δ_{αp}(p') = {1} if p = p'.
struct PlainActionRule {
  std::optional<KatExpr> derive(Atom, ActionId p, ActionId leaf) const {
    if (p == leaf) return KatExpr::one();
    return std::nullopt;
  }
};

template <class Rule>
void pd_into(Atom alpha, ActionId p, const KatExpr& e, const Rule& rule, ExprSet& out);

// Δ_{αp}(c_k ... c_n) with c_k ... c_n read as c_k·(c_{k+1} ... c_n).
template <class Rule>
void pd_sequence(Atom alpha, ActionId p, std::span<const KatExpr> kids, const Rule& rule, ExprSet& out) {
  if (kids.size() == 1) {
    pd_into(alpha, p, kids.front(), rule, out);
    return;
  }
  ExprSet head;
  pd_into(alpha, p, kids.front(), rule, head);
  if (!head.empty()) {
    for (const auto& e : concat(head, product_of(kids.subspan(1)))) insert_nonzero(out, e);
  }
  if (eps_alpha(alpha, kids.front())) pd_sequence(alpha, p, kids.subspan(1), rule, out);
}

template <class Rule>
void pd_into(Atom alpha, ActionId p, const KatExpr& e, const Rule& rule, ExprSet& out) {
  switch (e.kind()) {
    case KatExpr::Kind::Action:
      if (auto d = rule.derive(alpha, p, e.action_id())) insert_nonzero(out, *d);
      break;
    case KatExpr::Kind::Bool: break;
    case KatExpr::Kind::Plus:
      for (const auto& c : e.children()) pd_into(alpha, p, c, rule, out);
      break;
    case KatExpr::Kind::Dot: pd_sequence(alpha, p, e.children(), rule, out); break;
    case KatExpr::Kind::Star: {
      ExprSet inner;
      pd_into(alpha, p, e.body(), rule, inner);
      for (const auto& d : concat(inner, e)) insert_nonzero(out, d);
      break;
    }
  }
}

inline void lin_append(LinForm& out, const LinForm& src, const KatExpr& tail) {
  for (const auto& [head, set] : src) {
    auto tails = concat(set, tail);
    ExprSet& slot = out[head];
    for (const auto& e : tails) insert_nonzero(slot, e);
    if (slot.empty()) out.erase(head);
  }
}

inline void lin_union(LinForm& out, const LinForm& src) {
  for (const auto& [head, set] : src) {
    ExprSet& slot = out[head];
    slot.insert(set.begin(), set.end());
  }
}

/// Linear form with a pluggable action clause: `leaf(p)` returns f(p).
template <class LeafFn>
LinForm lin_with(const KatExpr& e, const LeafFn& leaf) {
  switch (e.kind()) {
    case KatExpr::Kind::Action: return leaf(e.action_id());
    case KatExpr::Kind::Bool: return {};
    case KatExpr::Kind::Plus: {
      LinForm out;
      for (const auto& c : e.children()) lin_union(out, lin_with(c, leaf));
      return out;
    }
    case KatExpr::Kind::Dot: {
      // f(c_1 ... c_n) built from the right: f(c_k)·rest ∪ {(αp,e) ∈ f(rest) | E_α(c_k)}.
      const auto kids = e.children();
      LinForm acc = lin_with(kids.back(), leaf);
      for (std::size_t k = kids.size() - 1; k-- > 0;) {
        const KatExpr rest = product_of(kids.subspan(k + 1));
        LinForm step;
        lin_append(step, lin_with(kids[k], leaf), rest);
        std::map<Atom, bool> nullable;
        for (const auto& [head, set] : acc) {
          auto [it, fresh] = nullable.try_emplace(head.atom, false);
          if (fresh) it->second = eps_alpha(head.atom, kids[k]);
          if (it->second) step[head].insert(set.begin(), set.end());
        }
        acc = std::move(step);
      }
      return acc;
    }
    case KatExpr::Kind::Star: {
      LinForm out;
      lin_append(out, lin_with(e.body(), leaf), e);
      return out;
    }
  }
  return {};
}

}  // namespace detail

/// Δ_{αp}(e), the partial derivatives of `e` by the letter αp.
inline ExprSet pd(Atom alpha, ActionId p, const KatExpr& e) {
  ExprSet out;
  detail::pd_into(alpha, p, e, detail::PlainActionRule{}, out);
  return out;
}

/// Δ_{αp} lifted to sets by union.
inline ExprSet pd(Atom alpha, ActionId p, const ExprSet& set) {
  ExprSet out;
  for (const auto& e : set) detail::pd_into(alpha, p, e, detail::PlainActionRule{}, out);
  return out;
}

/// Δ̂_x(e): left fold of Δ over the letters of `word`, starting from {e}.
inline ExprSet pd_word(const Word& word, const KatExpr& e) {
  ExprSet current{e};
  for (const auto& letter : word) current = pd(letter.atom, letter.action, current);
  return current;
}

/// f(e), enumerating every atom of `table` for each action leaf.
inline LinForm lin(const KatExpr& e, const SymbolTable& table) {
  const auto& atoms = table.atoms();
  return detail::lin_with(e, [&atoms](ActionId p) {
    LinForm out;
    for (Atom alpha : atoms) out[Head{alpha, p}].insert(KatExpr::one());
    return out;
  });
}

/// der_{αp}: the tails recorded for one head.
inline ExprSet der(Atom alpha, ActionId p, const LinForm& source) {
  auto it = source.find(Head{alpha, p});
  return it == source.end() ? ExprSet{} : it->second;
}

/// hd: the heads of a linear form.
inline std::set<Head> heads(const LinForm& source) {
  std::set<Head> out;
  for (const auto& [head, set] : source) {
    if (!set.empty()) out.insert(head);
  }
  return out;
}

/// PD(e): a finite set containing every iterated partial derivative of e.
inline ExprSet closure(const KatExpr& e) {
  switch (e.kind()) {
    case KatExpr::Kind::Bool: return {e};
    case KatExpr::Kind::Action: return {e, KatExpr::one()};
    case KatExpr::Kind::Plus: {
      ExprSet out{e};
      for (const auto& c : e.children()) {
        auto part = closure(c);
        out.insert(part.begin(), part.end());
      }
      return out;
    }
    case KatExpr::Kind::Dot: {
      // PD(c_1 · rest) = {e} ∪ PD(c_1)·rest ∪ PD(rest)
      const auto kids = e.children();
      ExprSet out{e};
      auto head = concat(closure(kids.front()), detail::product_of(kids.subspan(1)));
      out.insert(head.begin(), head.end());
      auto rest = closure(detail::product_of(kids.subspan(1)));
      out.insert(rest.begin(), rest.end());
      return out;
    }
    case KatExpr::Kind::Star: {
      ExprSet out{e};
      auto inner = concat(closure(e.body()), e);
      out.insert(inner.begin(), inner.end());
      return out;
    }
  }
  return {e};
}

inline std::string to_string(const ExprSet& set, const SymbolTable& table) {
  std::string out = "{";
  for (const auto& e : set) out += (out.size() > 1 ? ", " : "") + to_string(e, table);
  return out + "}";
}

}  // namespace katpd
