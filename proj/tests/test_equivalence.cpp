#include <gtest/gtest.h>

#include "support.hpp"

namespace katpd {
namespace {

using testing::all_expressions;
using testing::pd_product_equivalent;

SymbolTable two_by_two() { return SymbolTable({"p", "q"}, {"t1", "t2"}); }

bool same_at(const KatExpr& a, const KatExpr& b, const SymbolTable& table, std::size_t bound) {
  return !bounded_difference(a, b, table, bound, nullptr).has_value();
}

void expect_equiv(const char* lhs, const char* rhs, const SymbolTable& table) {
  const Verdict v = equiv(parse_kat(lhs, table), parse_kat(rhs, table), table);
  EXPECT_TRUE(v.equivalent) << lhs << " = " << rhs;
  EXPECT_FALSE(v.counterexample.has_value());
}

TEST(Equiv, KleeneLaws) {
  SymbolTable table = two_by_two();
  expect_equiv("p*", "1 + p p*", table);
  expect_equiv("p*", "1 + p* p", table);
  expect_equiv("(p + q)*", "(p* q)* p*", table);
  expect_equiv("(p q)* p", "p (q p)*", table);
  expect_equiv("p* p*", "p*", table);
  expect_equiv("(p*)*", "p*", table);
  expect_equiv("p (q + t1)", "p q + p t1", table);
}

TEST(Equiv, BooleanLaws) {
  SymbolTable table = two_by_two();
  expect_equiv("t1 + !t1", "1", table);
  expect_equiv("t1 !t1", "0", table);
  expect_equiv("t1 t2", "t2 t1", table);
  expect_equiv("!(t1 + t2)", "!t1 !t2", table);
  expect_equiv("t1 + t1 t2", "t1", table);
  expect_equiv("t1*", "1", table);
  expect_equiv("(t1 p)* !t1", "(t1 p)* !t1 + 0", table);
}

TEST(Equiv, GuardedLaws) {
  SymbolTable table = two_by_two();
  expect_equiv("t1 p + !t1 p", "p", table);
  expect_equiv("(t1 p)* t1", "t1 (p t1)*", table);
  expect_equiv("t1 (t1 p + q)", "t1 p + t1 q", table);
}

TEST(Equiv, Refutations) {
  SymbolTable table = two_by_two();
  const Verdict v = equiv(parse_kat("t1 p", table), parse_kat("p", table), table);
  ASSERT_FALSE(v.equivalent);
  ASSERT_TRUE(v.counterexample.has_value());
  EXPECT_FALSE(v.counterexample->first().holds(0));
  EXPECT_EQ(v.counterexample->length(), 1u);
  EXPECT_FALSE(equiv(parse_kat("p q", table), parse_kat("q p", table), table).equivalent);
  EXPECT_FALSE(equiv(parse_kat("p*", table), parse_kat("1 + p", table), table).equivalent);
  EXPECT_FALSE(equiv(parse_kat("t1", table), parse_kat("t2", table), table).equivalent);
}

TEST(Equiv, CounterexampleIsInExactlyOneSide) {
  SymbolTable table = two_by_two();
  Rng rng(41);
  int refuted = 0;
  for (int i = 0; i < 300; ++i) {
    const auto [a, b] = testing::random_pair(rng, table, 10);
    const Verdict v = equiv(a, b, table);
    if (v.equivalent) continue;
    ++refuted;
    ASSERT_TRUE(v.counterexample.has_value());
    const GuardedString& x = *v.counterexample;
    const bool in_a = gs_bounded(a, table, x.length()).contains(x);
    const bool in_b = gs_bounded(b, table, x.length()).contains(x);
    EXPECT_NE(in_a, in_b) << to_string(a, table) << " vs " << to_string(b, table) << ": " << to_string(x, table);
  }
  EXPECT_GT(refuted, 50);
}

TEST(Equiv, RefutationIsShortest) {
  SymbolTable table = two_by_two();
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto [a, b] = testing::random_pair(rng, table, 10);
    const Verdict v = equiv(a, b, table);
    if (v.equivalent) continue;
    const std::size_t n = v.counterexample->length();
    EXPECT_TRUE(n == 0 || same_at(a, b, table, n - 1)) << to_string(a, table) << " vs " << to_string(b, table);
  }
}

TEST(Equiv, AgreesWithOraclesExhaustively) {
  SymbolTable table = two_by_two();
  std::vector<KatExpr> pool;
  for (std::size_t size = 1; size <= 4; ++size) {
    const auto batch = all_expressions(table, size);
    pool.insert(pool.end(), batch.begin(), batch.end());
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::size_t compared = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i; j < pool.size(); ++j) {
      const KatExpr& a = pool[i];
      const KatExpr& b = pool[j];
      const bool verdict = equiv(a, b, table).equivalent;
      const std::size_t bound = closure(a).size() + closure(b).size();
      ASSERT_EQ(verdict, same_at(a, b, table, bound)) << to_string(a, table) << " vs " << to_string(b, table);
      ASSERT_EQ(verdict, pd_product_equivalent(a, b, table)) << to_string(a, table) << " vs " << to_string(b, table);
      ++compared;
    }
  }
  EXPECT_GT(compared, 5000u);
}

TEST(Equiv, AgreesWithOraclesOnRewrites) {
  SymbolTable table = two_by_two();
  Rng rng(43);
  int equal = 0;
  for (int i = 0; i < 300; ++i) {
    const auto [a, b] = testing::random_pair(rng, table, 10);
    const bool verdict = equiv(a, b, table).equivalent;
    equal += verdict ? 1 : 0;
    const std::size_t bound = closure(a).size() + closure(b).size();
    ASSERT_EQ(verdict, same_at(a, b, table, bound)) << to_string(a, table) << " vs " << to_string(b, table);
    ASSERT_EQ(verdict, pd_product_equivalent(a, b, table)) << to_string(a, table) << " vs " << to_string(b, table);
  }
  EXPECT_GT(equal, 100);
}

TEST(Equiv, SelfComparisonIsEquivalent) {
  SymbolTable table = numbered_table(3, 3);
  Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    const KatExpr e = random_kat(rng, table, 1 + i % 30);
    EXPECT_TRUE(equiv(e, e, table).equivalent);
  }
}

TEST(Equiv, Symmetric) {
  SymbolTable table = two_by_two();
  Rng rng(45);
  for (int i = 0; i < 200; ++i) {
    const auto [a, b] = testing::random_pair(rng, table, 10);
    const Verdict ab = equiv(a, b, table);
    const Verdict ba = equiv(b, a, table);
    EXPECT_EQ(ab.equivalent, ba.equivalent);
    EXPECT_EQ(ab.h_size, ba.h_size);
  }
}

TEST(Equiv, Deterministic) {
  SymbolTable table = two_by_two();
  Rng rng(46);
  for (int i = 0; i < 100; ++i) {
    const auto [a, b] = testing::random_pair(rng, table, 10);
    const Verdict first = equiv(a, b, table, CheckOptions{true});
    const Verdict second = equiv(a, b, table, CheckOptions{true});
    EXPECT_EQ(first.equivalent, second.equivalent);
    EXPECT_EQ(first.h_size, second.h_size);
    EXPECT_EQ(first.counterexample, second.counterexample);
    EXPECT_EQ(first.history, second.history);
  }
}

TEST(Equiv, HistoryMatchesCount) {
  SymbolTable table = two_by_two();
  const Verdict v = equiv(parse_kat("(p + q)*", table), parse_kat("(p* q)* p*", table), table, CheckOptions{true});
  ASSERT_TRUE(v.equivalent);
  EXPECT_EQ(v.history.size(), v.h_size);
  EXPECT_EQ(v.history.front(), std::make_pair(ExprSet{parse_kat("(p + q)*", table)},
                                              ExprSet{parse_kat("(p* q)* p*", table)}));
}

TEST(Equiv, NestedStarStress) {
  SymbolTable table = two_by_two();
  KatExpr left = KatExpr::action(0);
  KatExpr right = KatExpr::action(0);
  for (int depth = 1; depth <= 6; ++depth) {
    const KatExpr extra = KatExpr::action(depth % 2);
    left = KatExpr::star(KatExpr::product(KatExpr::star(left), extra));
    right = KatExpr::sum(KatExpr::one(), KatExpr::product(KatExpr::product(KatExpr::star(right), extra), KatExpr::star(
                                                              KatExpr::product(KatExpr::star(right), extra))));
    const Verdict v = equiv(left, right, table);
    EXPECT_LE(v.h_size, closure(left).size() * closure(right).size()) << depth;
  }
}

TEST(Equiv, NestedStarsEquivalentForms) {
  SymbolTable table = two_by_two();
  KatExpr e = KatExpr::action(0);
  for (int depth = 1; depth <= 6; ++depth) {
    e = KatExpr::star(KatExpr::product(KatExpr::star(e), KatExpr::action(depth % 2)));
    const KatExpr unfolded = KatExpr::sum(KatExpr::one(), KatExpr::product(e.body(), e));
    const Verdict v = equiv(e, unfolded, table);
    EXPECT_TRUE(v.equivalent) << depth;
    EXPECT_LE(v.h_size, closure(e).size() * closure(unfolded).size()) << depth;
  }
}

TEST(Equiv, SetsVersion) {
  SymbolTable table = two_by_two();
  const ExprSet left{parse_kat("p", table), parse_kat("q", table)};
  const ExprSet right{parse_kat("p + q", table)};
  EXPECT_TRUE(equiv_sets(left, right, table).equivalent);
  EXPECT_TRUE(equiv_sets({}, {KatExpr::zero()}, table).equivalent);
  EXPECT_FALSE(equiv_sets({}, {KatExpr::one()}, table).equivalent);
}

TEST(Equiv, DerivativesPairOneChildPerHead) {
  SymbolTable table = two_by_two();
  const PairOfSets start{{parse_kat("t1 p", table)}, {parse_kat("q", table)}, {}};
  const auto children = derivatives_pair(start, table);
  EXPECT_EQ(children.size(), 2u + 4u);
  for (const auto& child : children) EXPECT_EQ(child.trace.size(), 1u);
}

}  // namespace
}  // namespace katpd
