#include <gtest/gtest.h>

#include "support.hpp"

namespace katpd {
namespace {

TEST(Headers, SplitKeepsOffsets) {
  static constexpr std::string_view keys[] = {"lhs", "tests"};
  const std::string text = "# note\ntests: a b\n  lhs : a.b\nbody\n";
  const SplitText split = split_headers(text, keys);
  ASSERT_EQ(split.headers.size(), 2u);
  EXPECT_EQ(split.find("lhs")->value, " a.b");
  EXPECT_EQ(text.substr(split.find("lhs")->offset, 4), " a.b");
  EXPECT_EQ(split.body.size(), text.size());
  EXPECT_EQ(split.body.find("tests"), std::string::npos);
  EXPECT_EQ(split.body.find("body"), text.find("body"));
}

TEST(Headers, NameList) {
  static constexpr std::string_view keys[] = {"actions"};
  const SplitText split = split_headers("actions: p1  q_2\tr\n", keys);
  EXPECT_EQ(parse_name_list(*split.find("actions")), (std::vector<std::string>{"p1", "q_2", "r"}));
}

TEST(Problem, ParsesAssumptions) {
  const Problem problem = parse_problem(
      "tests: a b\n"
      "actions: p\n"
      "lhs: a p\n"
      "rhs: a p b\n"
      "assume: a -> [p] b\n"
      "assume: b -> a + b\n");
  EXPECT_EQ(problem.gamma.action_hyps.size(), 1u);
  EXPECT_EQ(problem.gamma.bool_hyps.size(), 1u);
  EXPECT_EQ(to_string(*problem.gamma.action_hyps.begin(), problem.table), "a -> [p] b");
  EXPECT_TRUE(check_implication(problem.gamma, problem.lhs, problem.rhs, Method::GammaDirect, problem.table)
                  .equivalent);
  EXPECT_FALSE(equiv(problem.lhs, problem.rhs, problem.table).equivalent);
}

TEST(Problem, CommentsAndBlankLines) {
  const Problem problem = parse_problem("# c\n\ntests: a\n# d\nactions: p\nlhs: p*\nrhs: 1 + p p*\n\n");
  EXPECT_TRUE(problem.gamma.empty());
  EXPECT_TRUE(equiv(problem.lhs, problem.rhs, problem.table).equivalent);
}

TEST(Problem, Errors) {
  const std::string head = "tests: a\nactions: p\n";
  EXPECT_THROW(parse_problem(head + "lhs: p\n"), ParseError);
  EXPECT_THROW(parse_problem(head + "rhs: p\n"), ParseError);
  EXPECT_THROW(parse_problem("actions: p\nlhs: p\nrhs: p\n"), ParseError);
  EXPECT_THROW(parse_problem(head + "lhs: p\nrhs: p\nstray\n"), ParseError);
  EXPECT_THROW(parse_problem(head + "lhs: p\nrhs: p\nlhs: a\n"), ParseError);
  EXPECT_THROW(parse_problem(head + "lhs: p\nrhs: p\nassume: a -> [q] a\n"), ParseError);
  EXPECT_THROW(parse_problem(head + "lhs: p\nrhs: p\nassume: a [p] a\n"), ParseError);
  EXPECT_THROW(parse_problem(head + "lhs: p\nrhs: p\nassume: a -> p\n"), ParseError);
  EXPECT_THROW(parse_problem(head + "lhs: p\nrhs: p\nassume: a -> a a p\n"), ParseError);
  EXPECT_THROW(parse_problem("tests: a a\nactions: p\nlhs: p\nrhs: p\n"), Error);
}

TEST(Problem, ErrorOffsetIsAbsolute) {
  const std::string text = "tests: a\nactions: p\nlhs: p + q\nrhs: p\n";
  try {
    parse_problem(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), text.find("q"));
  }
}

}  // namespace
}  // namespace katpd
