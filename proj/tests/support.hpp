#pragma once

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "katpd/katpd.hpp"

namespace katpd::testing {

/// Step function of a determinized derivative system: the successor of a
/// state (a set of expressions) under one letter.
using StepFn = std::function<ExprSet(Atom, ActionId, const ExprSet&)>;

inline StepFn plain_step() {
  return [](Atom alpha, ActionId p, const ExprSet& s) { return pd(alpha, p, s); };
}

inline StepFn gamma_step(const AssumptionSet& gamma) {
  return [gamma](Atom alpha, ActionId p, const ExprSet& s) { return pd_gamma(alpha, p, s, gamma); };
}

/// Language equality of two determinized partial-derivative systems,
/// explored letter by letter with no linear forms.  Every reachable pair
/// of states must agree on acceptance at each atom of `atoms`.
inline bool pd_product_equivalent(const KatExpr& e1, const KatExpr& e2, const std::vector<Atom>& atoms,
                                  std::size_t num_actions, const StepFn& step) {
  using State = std::pair<ExprSet, ExprSet>;
  std::set<State> seen;
  std::deque<State> todo;
  seen.insert({ExprSet{e1}, ExprSet{e2}});
  todo.push_back({ExprSet{e1}, ExprSet{e2}});
  while (!todo.empty()) {
    State s = std::move(todo.front());
    todo.pop_front();
    for (Atom alpha : atoms) {
      if (eps_set(alpha, s.first) != eps_set(alpha, s.second)) return false;
    }
    for (Atom alpha : atoms) {
      for (ActionId p = 0; p < num_actions; ++p) {
        State next{step(alpha, p, s.first), step(alpha, p, s.second)};
        if (next.first.empty() && next.second.empty()) continue;
        if (seen.insert(next).second) todo.push_back(std::move(next));
      }
    }
  }
  return true;
}

inline bool pd_product_equivalent(const KatExpr& e1, const KatExpr& e2, const SymbolTable& table) {
  return pd_product_equivalent(e1, e2, table.atoms(), table.num_actions(), plain_step());
}

/// GS(E) of a set of expressions up to a bound.
inline GsSet gs_of_set(const ExprSet& set, const SymbolTable& table, std::size_t bound) {
  GsSet out{{}, bound};
  for (const auto& e : set) out.strings.merge(gs_bounded(e, table, bound).strings);
  return out;
}

inline GsSet gs_gamma_of_set(const ExprSet& set, const AssumptionSet& gamma, const SymbolTable& table,
                             std::size_t bound) {
  GsSet out{{}, bound};
  for (const auto& e : set) out.strings.merge(gs_gamma_bounded(e, gamma, table, bound).strings);
  return out;
}

/// Every guarded string over `table` with at most `bound` actions.
inline GsSet all_strings(const SymbolTable& table, std::size_t bound) {
  std::vector<KatExpr> actions;
  for (ActionId p = 0; p < table.num_actions(); ++p) actions.push_back(KatExpr::action(p));
  return gs_bounded(KatExpr::star(KatExpr::sum(std::move(actions))), table, bound);
}

inline bool subset(const GsSet& a, const GsSet& b) {
  return std::includes(b.strings.begin(), b.strings.end(), a.strings.begin(), a.strings.end());
}

inline GsSet difference(const GsSet& a, const GsSet& b) {
  GsSet out{{}, a.bound};
  std::set_difference(a.strings.begin(), a.strings.end(), b.strings.begin(), b.strings.end(),
                      std::inserter(out.strings, out.strings.end()));
  return out;
}

/// Applies one rewrite that preserves GS somewhere inside `e`.
inline KatExpr rewrite_once(Rng& rng, const KatExpr& e, const SymbolTable& table) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  // Descend into a child half of the time.
  if ((e.kind() == KatExpr::Kind::Plus || e.kind() == KatExpr::Kind::Dot || e.kind() == KatExpr::Kind::Star) &&
      pick(2) == 0) {
    std::vector<KatExpr> kids(e.children().begin(), e.children().end());
    const std::size_t i = pick(kids.size());
    kids[i] = rewrite_once(rng, kids[i], table);
    switch (e.kind()) {
      case KatExpr::Kind::Plus: return KatExpr::sum(std::move(kids));
      case KatExpr::Kind::Dot: return KatExpr::product(std::move(kids));
      default: return KatExpr::star(kids.front());
    }
  }
  switch (e.kind()) {
    case KatExpr::Kind::Star: {
      const KatExpr& f = e.body();
      switch (pick(5)) {
        case 0: return KatExpr::sum(KatExpr::one(), KatExpr::product(f, e));
        case 1: return KatExpr::star(e);
        case 2: return KatExpr::star(KatExpr::sum(KatExpr::one(), f));
        case 3: return KatExpr::product(e, e);
        default: return KatExpr::sum(e, f);
      }
    }
    case KatExpr::Kind::Dot: {
      const auto kids = e.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (kids[i].kind() != KatExpr::Kind::Plus) continue;
        // a (b + c) d = a b d + a c d
        std::vector<KatExpr> terms;
        for (const auto& alt : kids[i].children()) {
          std::vector<KatExpr> parts(kids.begin(), kids.end());
          parts[i] = alt;
          terms.push_back(KatExpr::product(std::move(parts)));
        }
        return KatExpr::sum(std::move(terms));
      }
      return KatExpr::sum(e, e);
    }
    case KatExpr::Kind::Bool: {
      const BoolExpr& b = e.bool_expr();
      const BoolExpr c = random_bool(rng, table, 1 + pick(2));
      switch (pick(3)) {
        case 0: return KatExpr::boolean(BoolExpr::disjunction(b, BoolExpr::conjunction(b, c)));
        case 1: return KatExpr::boolean(BoolExpr::negation(BoolExpr::negation(b)));
        default: return KatExpr::product(e, KatExpr::boolean(BoolExpr::disjunction(c, BoolExpr::negation(c))));
      }
    }
    case KatExpr::Kind::Action:
      return pick(2) ? KatExpr::product(KatExpr::boolean(BoolExpr::disjunction(BoolExpr::test(0), BoolExpr::negation(BoolExpr::test(0)))), e)
                     : KatExpr::sum(e, KatExpr::product(e, KatExpr::zero()));
    case KatExpr::Kind::Plus: return KatExpr::sum(e, e.children()[pick(e.children().size())]);
  }
  return e;
}

/// A random pair of small expressions; about half are rewrites of each
/// other and therefore equivalent.
inline std::pair<KatExpr, KatExpr> random_pair(Rng& rng, const SymbolTable& table, std::size_t max_size) {
  auto size = [&] { return std::uniform_int_distribution<std::size_t>(1, max_size)(rng); };
  GeneratorOptions rich{true};
  KatExpr a = random_kat(rng, table, size(), rich);
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) return {a, random_kat(rng, table, size(), rich)};
  KatExpr b = a;
  const int steps = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < steps; ++i) b = rewrite_once(rng, b, table);
  return {a, b};
}

/// Every word over (At · Σ) with at most `length` letters.
inline std::vector<Word> all_words(const SymbolTable& table, std::size_t length) {
  std::vector<Word> out{{}};
  std::vector<Word> frontier{{}};
  for (std::size_t n = 0; n < length; ++n) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (Atom alpha : table.atoms()) {
        for (ActionId p = 0; p < table.num_actions(); ++p) {
          Word v = w;
          v.push_back(Head{alpha, p});
          next.push_back(std::move(v));
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

/// Every expression with exactly `size` binary-grammar nodes over the
/// leaves p_i, t_i, !t_i, 0, 1 (before normalization).
inline std::vector<KatExpr> all_expressions(const SymbolTable& table, std::size_t size) {
  static std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<KatExpr>> cache;
  const auto key = std::make_tuple(table.num_actions(), table.num_tests(), size);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<KatExpr> out;
  if (size == 1) {
    for (ActionId p = 0; p < table.num_actions(); ++p) out.push_back(KatExpr::action(p));
    for (TestId t = 0; t < table.num_tests(); ++t) {
      out.push_back(KatExpr::test(t));
      out.push_back(KatExpr::boolean(BoolExpr::negation(BoolExpr::test(t))));
    }
    out.push_back(KatExpr::zero());
    out.push_back(KatExpr::one());
  } else {
    for (const auto& e : all_expressions(table, size - 1)) out.push_back(KatExpr::star(e));
    for (std::size_t left = 1; left + 1 < size; ++left) {
      const auto as = all_expressions(table, left);
      const auto bs = all_expressions(table, size - 1 - left);
      for (const auto& a : as) {
        for (const auto& b : bs) {
          out.push_back(KatExpr::sum(a, b));
          out.push_back(KatExpr::product(a, b));
        }
      }
    }
  }
  cache[key] = out;
  return out;
}

}  // namespace katpd::testing
