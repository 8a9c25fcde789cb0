#pragma once

#include <set>
#include <string>
#include <vector>

#include "katpd/syntax.hpp"

namespace katpd {

/// Hypothesis `pre . action . !post = 0`, i.e. the atomic triple
/// {pre} action {post}.
struct ActionHypothesis {
  BoolExpr pre;
  ActionId action = 0;
  BoolExpr post;

  friend bool operator==(const ActionHypothesis&, const ActionHypothesis&) = default;
  friend auto operator<=>(const ActionHypothesis&, const ActionHypothesis&) = default;
};

/// Hypothesis `premise <= conclusion` between tests.
struct BoolHypothesis {
  BoolExpr premise;
  BoolExpr conclusion;

  friend bool operator==(const BoolHypothesis&, const BoolHypothesis&) = default;
  friend auto operator<=>(const BoolHypothesis&, const BoolHypothesis&) = default;
};

struct AssumptionSet {
  std::set<ActionHypothesis> action_hyps;
  std::set<BoolHypothesis> bool_hyps;

  bool empty() const { return action_hyps.empty() && bool_hyps.empty(); }

  AssumptionSet& add(ActionHypothesis h) {
    action_hyps.insert(std::move(h));
    return *this;
  }
  AssumptionSet& add(BoolHypothesis h) {
    bool_hyps.insert(std::move(h));
    return *this;
  }
  AssumptionSet& merge(const AssumptionSet& other) {
    action_hyps.insert(other.action_hyps.begin(), other.action_hyps.end());
    bool_hyps.insert(other.bool_hyps.begin(), other.bool_hyps.end());
    return *this;
  }

  friend bool operator==(const AssumptionSet&, const AssumptionSet&) = default;
};

/// α ∈ At^Γ: every Boolean hypothesis c <= c' holds at α.
inline bool atom_admitted(const AssumptionSet& gamma, Atom alpha) {
  for (const auto& h : gamma.bool_hyps) {
    if (atom_satisfies(alpha, h.premise) && !atom_satisfies(alpha, h.conclusion)) return false;
  }
  return true;
}

/// At^Γ in canonical order.
inline std::vector<Atom> atoms_gamma(const AssumptionSet& gamma, const SymbolTable& table) {
  std::vector<Atom> out;
  for (Atom alpha : table.atoms()) {
    if (atom_admitted(gamma, alpha)) out.push_back(alpha);
  }
  return out;
}

/// Conjunction of the postconditions of every hypothesis on `p` whose
/// precondition holds at `alpha`; 1 when none applies.
inline BoolExpr hypothesis_product(const AssumptionSet& gamma, Atom alpha, ActionId p) {
  std::set<BoolExpr> posts;
  for (const auto& h : gamma.action_hyps) {
    if (h.action == p && atom_satisfies(alpha, h.pre)) posts.insert(h.post);
  }
  return BoolExpr::conjunction(std::vector<BoolExpr>(posts.begin(), posts.end()));
}

/// Whether the step `alpha p beta` respects every action hypothesis.
inline bool step_admitted(const AssumptionSet& gamma, Atom alpha, ActionId p, Atom beta) {
  for (const auto& h : gamma.action_hyps) {
    if (h.action == p && atom_satisfies(alpha, h.pre) && !atom_satisfies(beta, h.post)) return false;
  }
  return true;
}

inline std::string to_string(const ActionHypothesis& h, const SymbolTable& table) {
  return to_string(h.pre, table) + " -> [" + table.action_name(h.action) + "] " + to_string(h.post, table);
}

inline std::string to_string(const BoolHypothesis& h, const SymbolTable& table) {
  return to_string(h.premise, table) + " -> " + to_string(h.conclusion, table);
}

}  // namespace katpd
