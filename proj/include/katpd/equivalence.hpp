#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "katpd/derivatives.hpp"
#include "katpd/guarded.hpp"

namespace katpd {

/// A pending pair of the worklist together with the word that led to it.
struct PairOfSets {
  ExprSet left;
  ExprSet right;
  Word trace;
};

struct Verdict {
  bool equivalent = true;
  std::optional<GuardedString> counterexample;
  /// |H| on success; number of pairs processed before refutation otherwise.
  std::size_t h_size = 0;
  /// The processed pairs in processing order (filled on request).
  std::vector<std::pair<ExprSet, ExprSet>> history;
};

struct CheckOptions {
  bool record_history = false;
};

/// Worklist bisimulation over pairs of derivative sets.
///
/// `Linearizer` maps a KatExpr to its LinForm; it is called at most once per
/// distinct expression.  `atoms` is the set over which E_α is compared.
template <class Linearizer>
class BisimulationChecker {
 public:
  BisimulationChecker(std::vector<Atom> atoms, Linearizer linearizer, CheckOptions options = {})
      : atoms_(std::move(atoms)), linearizer_(std::move(linearizer)), options_(options) {}

  Verdict run(ExprSet e1, ExprSet e2) {
    Verdict verdict;
    std::deque<PairOfSets> queue;
    std::set<std::pair<ExprSet, ExprSet>> seen;  // H together with every queued pair
    seen.emplace(e1, e2);
    queue.push_back(PairOfSets{std::move(e1), std::move(e2), {}});

    while (!queue.empty()) {
      PairOfSets pair = std::move(queue.front());
      queue.pop_front();
      for (Atom alpha : atoms_) {
        if (eps_set(alpha, pair.left) != eps_set(alpha, pair.right)) {
          verdict.equivalent = false;
          verdict.counterexample = witness(pair.trace, alpha);
          return verdict;
        }
      }
      ++verdict.h_size;
      if (options_.record_history) verdict.history.emplace_back(pair.left, pair.right);
      for (auto& child : derivatives(pair)) {
        if (seen.emplace(child.left, child.right).second) queue.push_back(std::move(child));
      }
    }
    return verdict;
  }

  /// derivatives(E1, E2): one child per head of E1 ∪ E2.
  std::vector<PairOfSets> derivatives(const PairOfSets& pair) {
    const LinForm left = lin_of(pair.left);
    const LinForm right = lin_of(pair.right);
    std::set<Head> hd = heads(left);
    hd.merge(heads(right));
    std::vector<PairOfSets> out;
    out.reserve(hd.size());
    for (const Head& h : hd) {
      Word trace = pair.trace;
      trace.push_back(h);
      out.push_back(PairOfSets{der(h.atom, h.action, left), der(h.atom, h.action, right), std::move(trace)});
    }
    return out;
  }

 private:
  const LinForm& lin_of(const KatExpr& e) {
    auto it = memo_.find(e);
    if (it == memo_.end()) it = memo_.emplace(e, linearizer_(e)).first;
    return it->second;
  }

  LinForm lin_of(const ExprSet& set) {
    LinForm out;
    for (const auto& e : set) {
      for (const auto& [head, tails] : lin_of(e)) out[head].insert(tails.begin(), tails.end());
    }
    return out;
  }

  static GuardedString witness(const Word& trace, Atom alpha) {
    std::vector<Atom> atoms;
    std::vector<ActionId> actions;
    for (const auto& h : trace) {
      atoms.push_back(h.atom);
      actions.push_back(h.action);
    }
    atoms.push_back(alpha);
    return GuardedString(std::move(atoms), std::move(actions));
  }

  std::vector<Atom> atoms_;
  Linearizer linearizer_;
  CheckOptions options_;
  std::unordered_map<KatExpr, LinForm> memo_;
};

/// Ordinary linearizer over the full atom set of a table.
struct PlainLinearizer {
  const SymbolTable* table;
  LinForm operator()(const KatExpr& e) const { return lin(e, *table); }
};

inline std::vector<PairOfSets> derivatives_pair(const PairOfSets& pair, const SymbolTable& table) {
  BisimulationChecker checker(table.atoms(), PlainLinearizer{&table});
  return checker.derivatives(pair);
}

inline Verdict equiv_sets(ExprSet e1, ExprSet e2, const SymbolTable& table, CheckOptions options = {}) {
  BisimulationChecker checker(table.atoms(), PlainLinearizer{&table}, options);
  return checker.run(std::move(e1), std::move(e2));
}

/// Decides GS(e1) = GS(e2), starting from ({e1}, {e2}).
inline Verdict equiv(const KatExpr& e1, const KatExpr& e2, const SymbolTable& table, CheckOptions options = {}) {
  return equiv_sets(ExprSet{e1}, ExprSet{e2}, table, options);
}

}  // namespace katpd
