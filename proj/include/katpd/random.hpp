#pragma once

#include <random>
#include <vector>

#include "katpd/hoare.hpp"

namespace katpd {

using Rng = std::mt19937_64;

struct GeneratorOptions {
  /// Allow `!` over tests and the constants 0 and 1 at the leaves.
  bool rich_leaves = false;
};

namespace detail {

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline BoolExpr random_literal(Rng& rng, const SymbolTable& table) {
  const auto t = static_cast<TestId>(uniform(rng, 0, table.num_tests() - 1));
  return uniform(rng, 0, 1) ? BoolExpr::test(t) : BoolExpr::negation(BoolExpr::test(t));
}

inline KatExpr random_leaf(Rng& rng, const SymbolTable& table, const GeneratorOptions& options) {
  const std::size_t k = table.num_actions();
  const std::size_t l = table.num_tests();
  if (options.rich_leaves) {
    switch (uniform(rng, 0, 9)) {
      case 0: return KatExpr::zero();
      case 1: return KatExpr::one();
      case 2:
      case 3: return KatExpr::boolean(BoolExpr::negation(BoolExpr::test(static_cast<TestId>(uniform(rng, 0, l - 1)))));
      default: break;
    }
  }
  const std::size_t pick = uniform(rng, 0, k + l - 1);
  if (pick < k) return KatExpr::action(static_cast<ActionId>(pick));
  return KatExpr::test(static_cast<TestId>(pick - k));
}

}  // namespace detail

/// Random expression built top-down with `size` grammar nodes before
/// normalization: a single node is a symbol, two nodes a starred symbol,
/// and larger budgets pick `+`, `.` or `*` uniformly and split the rest.
inline KatExpr random_kat(Rng& rng, const SymbolTable& table, std::size_t size, GeneratorOptions options = {}) {
  if (size <= 1) return detail::random_leaf(rng, table, options);
  if (size == 2) return KatExpr::star(detail::random_leaf(rng, table, options));
  const std::size_t op = detail::uniform(rng, 0, 2);
  if (op == 2) return KatExpr::star(random_kat(rng, table, size - 1, options));
  const std::size_t left = detail::uniform(rng, 1, size - 2);
  KatExpr a = random_kat(rng, table, left, options);
  KatExpr b = random_kat(rng, table, size - 1 - left, options);
  return op == 0 ? KatExpr::sum(std::move(a), std::move(b)) : KatExpr::product(std::move(a), std::move(b));
}

/// Random Boolean expression over the tests of `table`.
inline BoolExpr random_bool(Rng& rng, const SymbolTable& table, std::size_t size) {
  if (size <= 1) {
    switch (detail::uniform(rng, 0, 7)) {
      case 0: return BoolExpr::zero();
      case 1: return BoolExpr::one();
      default: return detail::random_literal(rng, table);
    }
  }
  switch (detail::uniform(rng, 0, 2)) {
    case 0: return BoolExpr::negation(random_bool(rng, table, size - 1));
    case 1: {
      const std::size_t left = detail::uniform(rng, 1, size - 1);
      return BoolExpr::disjunction(random_bool(rng, table, left), random_bool(rng, table, std::max<std::size_t>(1, size - 1 - left)));
    }
    default: {
      const std::size_t left = detail::uniform(rng, 1, size - 1);
      return BoolExpr::conjunction(random_bool(rng, table, left), random_bool(rng, table, std::max<std::size_t>(1, size - 1 - left)));
    }
  }
}

/// Random assumption set with up to `action_hyps` atomic triples and up to
/// `bool_hyps` implications between tests.
inline AssumptionSet random_assumptions(Rng& rng, const SymbolTable& table, std::size_t action_hyps,
                                        std::size_t bool_hyps) {
  AssumptionSet gamma;
  for (std::size_t i = 0; i < action_hyps; ++i) {
    gamma.add(ActionHypothesis{random_bool(rng, table, detail::uniform(rng, 1, 2)),
                               static_cast<ActionId>(detail::uniform(rng, 0, table.num_actions() - 1)),
                               random_bool(rng, table, detail::uniform(rng, 1, 2))});
  }
  for (std::size_t i = 0; i < bool_hyps; ++i) {
    gamma.add(BoolHypothesis{random_bool(rng, table, detail::uniform(rng, 1, 2)),
                             random_bool(rng, table, detail::uniform(rng, 1, 2))});
  }
  return gamma;
}

/// Random annotated program of nesting depth at most `depth`.  When
/// `allow_skip` is set the table must declare `p_skip`, which is never used
/// as a primitive.
inline Program random_program(Rng& rng, const SymbolTable& table, std::size_t depth, bool allow_skip) {
  const auto skip = table.find_action(kSkipAction);
  auto random_prim = [&] {
    for (;;) {
      const auto p = static_cast<ActionId>(detail::uniform(rng, 0, table.num_actions() - 1));
      if (p != skip) return Program::prim(p);
    }
  };
  auto assertion = [&] { return detail::random_literal(rng, table); };
  if (depth == 0) return allow_skip && detail::uniform(rng, 0, 4) == 0 ? Program::skip() : random_prim();
  switch (detail::uniform(rng, 0, 3)) {
    case 0: return random_program(rng, table, 0, allow_skip);
    case 1: {
      Program a = random_program(rng, table, depth - 1, allow_skip);
      BoolExpr c = assertion();
      return Program::seq(std::move(a), std::move(c), random_program(rng, table, depth - 1, allow_skip));
    }
    case 2: {
      BoolExpr c = assertion();
      Program a = random_program(rng, table, depth - 1, allow_skip);
      return Program::if_then_else(std::move(c), std::move(a), random_program(rng, table, depth - 1, allow_skip));
    }
    default: {
      BoolExpr c = assertion();
      BoolExpr i = assertion();
      return Program::while_loop(std::move(c), std::move(i), random_program(rng, table, depth - 1, allow_skip));
    }
  }
}

/// A table with actions p1..pk and tests t1..tl.
inline SymbolTable numbered_table(std::size_t k, std::size_t l) {
  std::vector<std::string> actions;
  std::vector<std::string> tests;
  for (std::size_t i = 1; i <= k; ++i) actions.push_back("p" + std::to_string(i));
  for (std::size_t i = 1; i <= l; ++i) tests.push_back("t" + std::to_string(i));
  return SymbolTable(std::move(actions), std::move(tests));
}

}  // namespace katpd
