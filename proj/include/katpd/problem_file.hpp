#pragma once

#include <string>
#include <string_view>

#include "katpd/assumption_set.hpp"
#include "katpd/headers.hpp"

namespace katpd {

/// An equivalence problem: two expressions and optional assumptions.
struct Problem {
  SymbolTable table;
  KatExpr lhs;
  KatExpr rhs;
  AssumptionSet gamma;
};

namespace detail {

// `b -> [p] b'` or `c -> c'`.
inline void parse_assumption(const HeaderLine& line, const SymbolTable& table, AssumptionSet& gamma) {
  Lexer lex(line.value, line.offset);
  ExprParser parser(lex, table);
  BoolExpr lhs = parser.parse_bool();
  lex.expect(Tok::Arrow, "'->'");
  if (lex.at(Tok::LBracket)) {
    lex.next();
    const Token name = lex.expect(Tok::Ident, "an action name");
    auto p = table.find_action(name.text);
    if (!p) {
      throw ParseError("undeclared action '" + std::string(name.text) + "' at offset " + std::to_string(name.offset),
                       name.offset);
    }
    lex.expect(Tok::RBracket, "']'");
    BoolExpr rhs = parser.parse_bool();
    gamma.add(ActionHypothesis{std::move(lhs), *p, std::move(rhs)});
  } else {
    gamma.add(BoolHypothesis{std::move(lhs), parser.parse_bool()});
  }
  if (!lex.at(Tok::End)) lex.fail("unexpected trailing input");
}

}  // namespace detail

/// Parses `tests:`, `actions:`, `lhs:`, `rhs:` and any number of `assume:`
/// lines.  Blank lines and `#` comments are ignored.
inline Problem parse_problem(std::string_view text) {
  static constexpr std::string_view keys[] = {"tests", "actions", "lhs", "rhs", "assume"};
  const SplitText split = split_headers(text, keys);
  Lexer rest(split.body);
  if (!rest.at(Tok::End)) rest.fail("unexpected line");
  const HeaderLine* lhs = split.find("lhs");
  const HeaderLine* rhs = split.find("rhs");
  if (!lhs) throw ParseError("missing 'lhs:' line", 0);
  if (!rhs) throw ParseError("missing 'rhs:' line", 0);
  Problem problem{parse_symbol_header(split), KatExpr::zero(), KatExpr::zero(), {}};
  problem.lhs = parse_kat_at(*lhs, problem.table);
  problem.rhs = parse_kat_at(*rhs, problem.table);
  for (const auto& h : split.headers) {
    if (h.key == "assume") detail::parse_assumption(h, problem.table, problem.gamma);
  }
  return problem;
}

}  // namespace katpd
