#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "katpd/guarded.hpp"

namespace katpd {

/// Thompson-style automaton over guarded strings, built directly from the
/// syntax of an expression.  Test edges are taken without consuming input
/// when the current atom satisfies their guard; action edges consume one
/// action and move on to the next atom.  It shares no code with the
/// derivative machinery and serves as a second semantic oracle for
/// bounded comparisons that are too large to enumerate.
class GuardedAutomaton {
 public:
  using StateSet = std::vector<int>;  // sorted, duplicate-free

  explicit GuardedAutomaton(const KatExpr& e) {
    start_ = fresh();
    final_ = fresh();
    build(e, start_, final_);
  }

  StateSet initial() const { return {start_}; }

  /// States reachable from `from` through test edges enabled at `alpha`.
  StateSet closure(const StateSet& from, Atom alpha) const {
    std::vector<char> seen(guards_.size(), 0);
    std::vector<int> stack(from.begin(), from.end());
    for (int s : from) seen[s] = 1;
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      for (const auto& [guard, to] : guards_[s]) {
        if (!seen[to] && atom_satisfies(alpha, guard)) {
          seen[to] = 1;
          stack.push_back(to);
        }
      }
    }
    StateSet out;
    for (int s = 0; s < static_cast<int>(seen.size()); ++s) {
      if (seen[s]) out.push_back(s);
    }
    return out;
  }

  bool accepting(const StateSet& closed) const { return std::binary_search(closed.begin(), closed.end(), final_); }

  /// Targets of `p`-edges leaving an already closed set.
  StateSet step(const StateSet& closed, ActionId p) const {
    std::set<int> out;
    for (int s : closed) {
      for (const auto& [action, to] : actions_[s]) {
        if (action == p) out.insert(to);
      }
    }
    return StateSet(out.begin(), out.end());
  }

  bool accepts(const GuardedString& x) const {
    StateSet current = initial();
    for (std::size_t i = 0; i < x.actions.size(); ++i) {
      current = step(closure(current, x.atoms[i]), x.actions[i]);
      if (current.empty()) return false;
    }
    return accepting(closure(current, x.last()));
  }

  std::size_t num_states() const { return guards_.size(); }

 private:
  int fresh() {
    guards_.emplace_back();
    actions_.emplace_back();
    return static_cast<int>(guards_.size()) - 1;
  }

  // Invariant: build(e, s, f) adds no edge into `s` and none out of `f`, so
  // siblings may share their entry and exit states.
  void build(const KatExpr& e, int s, int f) {
    switch (e.kind()) {
      case KatExpr::Kind::Bool: guards_[s].emplace_back(e.bool_expr(), f); break;
      case KatExpr::Kind::Action: actions_[s].emplace_back(e.action_id(), f); break;
      case KatExpr::Kind::Plus:
        for (const auto& c : e.children()) build(c, s, f);
        break;
      case KatExpr::Kind::Dot: {
        int from = s;
        const auto kids = e.children();
        for (std::size_t i = 0; i < kids.size(); ++i) {
          const int to = i + 1 == kids.size() ? f : fresh();
          build(kids[i], from, to);
          from = to;
        }
        break;
      }
      case KatExpr::Kind::Star: {
        const int in = fresh();
        const int out = fresh();
        guards_[s].emplace_back(BoolExpr::one(), f);
        guards_[s].emplace_back(BoolExpr::one(), in);
        guards_[out].emplace_back(BoolExpr::one(), in);
        guards_[out].emplace_back(BoolExpr::one(), f);
        build(e.body(), in, out);
        break;
      }
    }
  }

  int start_ = 0;
  int final_ = 0;
  std::vector<std::vector<std::pair<BoolExpr, int>>> guards_;
  std::vector<std::vector<std::pair<ActionId, int>>> actions_;
};

/// Searches breadth-first for a guarded string with at most `bound` actions
/// that belongs to exactly one of GS(e1), GS(e2) (GS^Γ when `gamma` is
/// given).  Returns a shortest such string, or nullopt when the two sets
/// agree up to the bound.
inline std::optional<GuardedString> bounded_difference(const KatExpr& e1, const KatExpr& e2,
                                                       const SymbolTable& table, std::size_t bound,
                                                       const AssumptionSet* gamma = nullptr) {
  const GuardedAutomaton a1(e1);
  const GuardedAutomaton a2(e2);
  std::vector<Atom> atoms;
  for (Atom alpha : table.atoms()) {
    if (!gamma || atom_admitted(*gamma, alpha)) atoms.push_back(alpha);
  }

  // Under Γ the admissible next atoms depend on the previous (atom, action).
  struct Config {
    GuardedAutomaton::StateSet left, right;
    std::optional<std::pair<Atom, ActionId>> previous;
    auto operator<=>(const Config&) const = default;
  };
  struct Entry {
    Config config;
    std::size_t depth;
    GuardedString prefix;  // atoms/actions consumed so far; atoms.size() == actions.size()
  };

  std::set<Config> seen;
  std::deque<Entry> queue;
  Config start{a1.initial(), a2.initial(), std::nullopt};
  seen.insert(start);
  queue.push_back(Entry{start, 0, {}});
  while (!queue.empty()) {
    Entry entry = std::move(queue.front());
    queue.pop_front();
    for (Atom alpha : atoms) {
      if (gamma && entry.config.previous &&
          !step_admitted(*gamma, entry.config.previous->first, entry.config.previous->second, alpha)) {
        continue;
      }
      const auto left = a1.closure(entry.config.left, alpha);
      const auto right = a2.closure(entry.config.right, alpha);
      if (a1.accepting(left) != a2.accepting(right)) {
        GuardedString witness = entry.prefix;
        witness.atoms.push_back(alpha);
        return witness;
      }
      if (entry.depth == bound) continue;
      for (ActionId p = 0; p < table.num_actions(); ++p) {
        Config next{a1.step(left, p), a2.step(right, p), std::nullopt};
        if (next.left.empty() && next.right.empty()) continue;
        if (gamma) next.previous = std::make_pair(alpha, p);
        if (!seen.insert(next).second) continue;
        GuardedString prefix = entry.prefix;
        prefix.atoms.push_back(alpha);
        prefix.actions.push_back(p);
        queue.push_back(Entry{std::move(next), entry.depth + 1, std::move(prefix)});
      }
    }
  }
  return std::nullopt;
}

}  // namespace katpd
