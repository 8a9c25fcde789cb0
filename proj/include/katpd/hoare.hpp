#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "katpd/assumptions.hpp"
#include "katpd/headers.hpp"

namespace katpd {

/// Name of the action that stands for `skip`.
inline constexpr std::string_view kSkipAction = "p_skip";

/// Annotated while program.  Every sequence carries its intermediate
/// assertion and every loop its invariant.
class Program {
 public:
  enum class Kind : std::uint8_t { Skip, Prim, Seq, If, While };

  static Program skip() { return Program(std::make_shared<const Node>(node(Kind::Skip))); }
  static Program prim(ActionId p, std::string label = {}) {
    Node n = node(Kind::Prim);
    n.action = p;
    n.label = std::move(label);
    return Program(std::make_shared<const Node>(std::move(n)));
  }
  static Program seq(Program first, BoolExpr mid, Program second) {
    Node n = node(Kind::Seq);
    n.assertion = std::move(mid);
    n.parts = {std::move(first), std::move(second)};
    return Program(std::make_shared<const Node>(std::move(n)));
  }
  static Program if_then_else(BoolExpr cond, Program then_branch, Program else_branch) {
    Node n = node(Kind::If);
    n.condition = std::move(cond);
    n.parts = {std::move(then_branch), std::move(else_branch)};
    return Program(std::make_shared<const Node>(std::move(n)));
  }
  static Program while_loop(BoolExpr cond, BoolExpr invariant, Program body) {
    Node n = node(Kind::While);
    n.condition = std::move(cond);
    n.assertion = std::move(invariant);
    n.parts = {std::move(body)};
    return Program(std::make_shared<const Node>(std::move(n)));
  }

  Kind kind() const { return node_->kind; }
  ActionId action() const { return node_->action; }
  const std::string& label() const { return node_->label; }
  const BoolExpr& condition() const { return node_->condition; }
  /// Intermediate assertion of a sequence, invariant of a loop.
  const BoolExpr& assertion() const { return node_->assertion; }
  /// First part of a sequence, then-branch, or loop body.
  const Program& first() const { return node_->parts.at(0); }
  /// Second part of a sequence or else-branch.
  const Program& second() const { return node_->parts.at(1); }

  bool contains_skip() const {
    if (kind() == Kind::Skip) return true;
    for (const auto& p : node_->parts) {
      if (p.contains_skip()) return true;
    }
    return false;
  }

 private:
  struct Node {
    Kind kind = Kind::Skip;
    ActionId action = 0;
    std::string label;
    BoolExpr condition;
    BoolExpr assertion;
    std::vector<Program> parts;
  };

  static Node node(Kind k) {
    Node n;
    n.kind = k;
    return n;
  }

  explicit Program(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Partial correctness assertion {pre} program {post}.
struct Pca {
  BoolExpr pre;
  Program program = Program::skip();
  BoolExpr post;
};

namespace detail {

inline ActionId skip_action(const SymbolTable& table) {
  auto p = table.find_action(kSkipAction);
  if (!p) throw StructureError("program uses skip but the symbol table has no '" + std::string(kSkipAction) + "'");
  return *p;
}

inline KatExpr kb(const BoolExpr& b) { return KatExpr::boolean(b); }

}  // namespace detail

inline KatExpr encode(const Program& prog, const SymbolTable& table) {
  using detail::kb;
  switch (prog.kind()) {
    case Program::Kind::Skip: return KatExpr::action(detail::skip_action(table));
    case Program::Kind::Prim: return KatExpr::action(prog.action());
    case Program::Kind::Seq:
      return KatExpr::product({encode(prog.first(), table), kb(prog.assertion()), encode(prog.second(), table)});
    case Program::Kind::If:
      return KatExpr::sum(KatExpr::product(kb(prog.condition()), encode(prog.first(), table)),
                          KatExpr::product(kb(BoolExpr::negation(prog.condition())), encode(prog.second(), table)));
    case Program::Kind::While: {
      const KatExpr body = KatExpr::product({kb(prog.condition()), kb(prog.assertion()), encode(prog.first(), table)});
      return KatExpr::product(KatExpr::star(body), kb(BoolExpr::negation(prog.condition())));
    }
  }
  return KatExpr::zero();
}

/// pre · encode(program) · !post; the assertion holds iff this equals 0.
inline KatExpr encode_pca(const Pca& pca, const SymbolTable& table) {
  return KatExpr::product({detail::kb(pca.pre), encode(pca.program, table), detail::kb(BoolExpr::negation(pca.post))});
}

namespace detail {

inline void gen_into(AssumptionSet& out, const BoolExpr& b, const Program& prog, const BoolExpr& c,
                     const SymbolTable& table, bool frame_skip) {
  const auto skip = table.find_action(kSkipAction);
  const bool is_skip = prog.kind() == Program::Kind::Skip ||
                       (prog.kind() == Program::Kind::Prim && skip == prog.action());
  switch (prog.kind()) {
    case Program::Kind::Skip:
    case Program::Kind::Prim:
      if (is_skip) {
        out.add(BoolHypothesis{b, c});
        if (frame_skip) out.add(ActionHypothesis{b, skip_action(table), c});
      } else {
        out.add(ActionHypothesis{b, prog.action(), c});
      }
      break;
    case Program::Kind::Seq:
      gen_into(out, b, prog.first(), prog.assertion(), table, frame_skip);
      gen_into(out, prog.assertion(), prog.second(), c, table, frame_skip);
      break;
    case Program::Kind::If:
      gen_into(out, BoolExpr::conjunction(b, prog.condition()), prog.first(), c, table, frame_skip);
      gen_into(out, BoolExpr::conjunction(b, BoolExpr::negation(prog.condition())), prog.second(), c, table,
               frame_skip);
      break;
    case Program::Kind::While: {
      const BoolExpr& i = prog.assertion();
      gen_into(out, BoolExpr::conjunction(i, prog.condition()), prog.first(), i, table, frame_skip);
      out.add(BoolHypothesis{b, i});
      out.add(BoolHypothesis{BoolExpr::conjunction(i, BoolExpr::negation(prog.condition())), c});
      break;
    }
  }
}

}  // namespace detail

/// Gen(b · encode(prog) · !c) computed over the program structure.
inline AssumptionSet gen(const BoolExpr& b, const Program& prog, const BoolExpr& c, const SymbolTable& table) {
  AssumptionSet out;
  detail::gen_into(out, b, prog, c, table, false);
  return out;
}

/// The assumptions check_pca decides under: gen plus, for every skip
/// position with pre b and post c, the action hypothesis b p_skip !c = 0.
/// p_skip is otherwise uninterpreted, so without it b ≤ c alone never
/// discharges a skip.
inline AssumptionSet gen_with_skip_frames(const BoolExpr& b, const Program& prog, const BoolExpr& c,
                                          const SymbolTable& table) {
  AssumptionSet out;
  detail::gen_into(out, b, prog, c, table, true);
  return out;
}

namespace detail {

// Reads a flattened encoding back into program chunks: an action, a
// two-way sum `c e1 + !c e2`, or a loop `(c i e)*` followed by `!c`.
// Tests between chunks are intermediate assertions.
class GenMatcher {
 public:
  explicit GenMatcher(const SymbolTable& table) : table_(table), skip_(table.find_action(kSkipAction)) {}

  AssumptionSet run(const BoolExpr& b, const KatExpr& e, const BoolExpr& d) {
    sequence(b, elements(e), d);
    return std::move(out_);
  }

 private:
  static std::vector<KatExpr> elements(const KatExpr& e) {
    if (e.kind() == KatExpr::Kind::Dot) return {e.children().begin(), e.children().end()};
    return {e};
  }

  [[noreturn]] void reject(const KatExpr& e, const std::string& why) const {
    throw StructureError("'" + to_string(e, table_) + "' is not a program encoding: " + why);
  }

  void sequence(const BoolExpr& b, std::span<const KatExpr> elems, const BoolExpr& d) {
    if (elems.empty()) throw StructureError("empty program encoding");
    const std::size_t used = elems.front().kind() == KatExpr::Kind::Star ? 2 : 1;
    if (elems.front().kind() == KatExpr::Kind::Bool) reject(elems.front(), "a test cannot start a statement");
    if (used > elems.size()) reject(elems.front(), "a loop must be followed by its negated condition");
    auto rest = elems.subspan(used);
    if (rest.empty()) {
      chunk(b, elems.first(used), d);
      return;
    }
    BoolExpr mid = BoolExpr::one();
    if (rest.front().kind() == KatExpr::Kind::Bool) {
      mid = rest.front().bool_expr();
      rest = rest.subspan(1);
      if (rest.empty()) reject(elems.back(), "an assertion must be followed by a statement");
    }
    chunk(b, elems.first(used), mid);
    sequence(mid, rest, d);
  }

  void chunk(const BoolExpr& b, std::span<const KatExpr> parts, const BoolExpr& d) {
    const KatExpr& e = parts.front();
    switch (e.kind()) {
      case KatExpr::Kind::Action:
        if (skip_ == e.action_id()) {
          out_.add(BoolHypothesis{b, d});
        } else {
          out_.add(ActionHypothesis{b, e.action_id(), d});
        }
        return;
      case KatExpr::Kind::Plus: conditional(b, e, d); return;
      case KatExpr::Kind::Star: loop(b, e, parts[1], d); return;
      default: reject(e, "unexpected subterm");
    }
  }

  // Splits `g e` into the guard g and the elements of e.
  bool guarded(const KatExpr& e, BoolExpr& guard, std::vector<KatExpr>& rest) const {
    auto elems = elements(e);
    if (elems.size() < 2 || elems.front().kind() != KatExpr::Kind::Bool) return false;
    guard = elems.front().bool_expr();
    rest.assign(elems.begin() + 1, elems.end());
    return true;
  }

  void conditional(const BoolExpr& b, const KatExpr& e, const BoolExpr& d) {
    const auto kids = e.children();
    if (kids.size() != 2) reject(e, "a conditional has exactly two branches");
    BoolExpr g0, g1;
    std::vector<KatExpr> r0, r1;
    if (!guarded(kids[0], g0, r0) || !guarded(kids[1], g1, r1)) reject(e, "each branch must start with its guard");
    if (g0 == BoolExpr::negation(g1)) {
      std::swap(g0, g1);
      std::swap(r0, r1);
    } else if (g1 != BoolExpr::negation(g0)) {
      reject(e, "branch guards must be a test and its negation");
    }
    sequence(BoolExpr::conjunction(b, g0), r0, d);
    sequence(BoolExpr::conjunction(b, g1), r1, d);
  }

  void loop(const BoolExpr& b, const KatExpr& star, const KatExpr& exit, const BoolExpr& d) {
    BoolExpr cond;
    std::vector<KatExpr> body;
    if (!guarded(star.body(), cond, body)) reject(star, "a loop body must start with its condition");
    if (exit.kind() != KatExpr::Kind::Bool || exit.bool_expr() != BoolExpr::negation(cond)) {
      reject(exit, "a loop must be followed by its negated condition");
    }
    BoolExpr inv = BoolExpr::one();
    std::span<const KatExpr> stmts = body;
    if (body.front().kind() == KatExpr::Kind::Bool) {
      inv = body.front().bool_expr();
      stmts = stmts.subspan(1);
    }
    sequence(BoolExpr::conjunction(inv, cond), stmts, inv);
    out_.add(BoolHypothesis{b, inv});
    out_.add(BoolHypothesis{BoolExpr::conjunction(inv, BoolExpr::negation(cond)), d});
  }

  const SymbolTable& table_;
  std::optional<ActionId> skip_;
  AssumptionSet out_;
};

}  // namespace detail

/// Gen(b · e · !c) by pattern matching on a flattened encoding `e`.
/// Throws StructureError when `e` does not have the shape of an encoded
/// program.
inline AssumptionSet gen_encoded(const BoolExpr& b, const KatExpr& e, const BoolExpr& c, const SymbolTable& table) {
  return detail::GenMatcher(table).run(b, e, c);
}

struct PcaResult {
  AssumptionSet gamma;
  Verdict verdict;
};

/// Generates Γ for the assertion and decides pre·e·!post = 0 under it.
inline PcaResult check_pca(const Pca& pca, Method method, const SymbolTable& table, CheckOptions options = {}) {
  PcaResult result;
  result.gamma = gen_with_skip_frames(pca.pre, pca.program, pca.post, table);
  result.verdict = check_implication(result.gamma, encode_pca(pca, table), KatExpr::zero(), method, table, options);
  return result;
}

/// A parsed program file.
struct ProgramFile {
  SymbolTable table;
  Pca pca;
  /// Tests that name assertions at more than one program point, with the
  /// points that share them.
  std::map<std::string, std::vector<std::string>> shared_tests;
};

namespace detail {

inline constexpr std::string_view kKeywords[] = {"skip", "do", "seq", "if", "else", "while", "inv"};

class ProgramParser {
 public:
  ProgramParser(Lexer& lex, const SymbolTable& table) : lex_(lex), table_(table), expr_(lex, table, kKeywords) {}

  Program program() {
    Program p = statement();
    while (lex_.at(Tok::Semi)) {
      lex_.next();
      lex_.expect(Tok::LBrace, "'{' opening an intermediate assertion");
      BoolExpr mid = expr_.parse_bool();
      lex_.expect(Tok::RBrace, "'}'");
      lex_.expect(Tok::Semi, "';' after an intermediate assertion");
      note("assertion", mid);
      p = Program::seq(std::move(p), std::move(mid), statement());
    }
    return p;
  }

  void note(const std::string& point, const BoolExpr& b) {
    std::vector<TestId> ids;
    collect(b, ids);
    const std::string where = point + " " + std::to_string(++points_);
    for (TestId t : ids) uses_[table_.test_name(t)].push_back(where);
  }

  std::map<std::string, std::vector<std::string>> shared() const {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& [name, where] : uses_) {
      if (where.size() > 1) out.emplace(name, where);
    }
    return out;
  }

 private:
  static void collect(const BoolExpr& b, std::vector<TestId>& ids) {
    if (b.kind() == BoolExpr::Kind::Test) {
      if (std::find(ids.begin(), ids.end(), b.test_id()) == ids.end()) ids.push_back(b.test_id());
    } else if (b.kind() == BoolExpr::Kind::Not) {
      collect(b.operand(), ids);
    } else {
      for (const auto& c : b.children()) collect(c, ids);
    }
  }

  Program block() {
    lex_.expect(Tok::LBrace, "'{'");
    Program p = program();
    lex_.expect(Tok::RBrace, "'}'");
    return p;
  }

  BoolExpr braced_bool() {
    lex_.expect(Tok::LBrace, "'{'");
    BoolExpr b = expr_.parse_bool();
    lex_.expect(Tok::RBrace, "'}'");
    return b;
  }

  void keyword(std::string_view word) {
    if (!lex_.at(Tok::Ident) || lex_.peek().text != word) lex_.fail("expected '" + std::string(word) + "'");
    lex_.next();
  }

  Program statement() {
    if (!lex_.at(Tok::Ident)) lex_.fail("expected a statement");
    const std::string_view word = lex_.peek().text;
    if (word == "skip") {
      lex_.next();
      return Program::skip();
    }
    if (word == "do") {
      lex_.next();
      const Token name = lex_.expect(Tok::Ident, "an action name");
      auto p = table_.find_action(name.text);
      if (!p) throw ParseError("undeclared action '" + std::string(name.text) + "' at offset " +
                               std::to_string(name.offset), name.offset);
      std::string label;
      if (lex_.at(Tok::String)) label = std::string(lex_.next().text);
      return Program::prim(*p, std::move(label));
    }
    if (word == "seq") {
      lex_.next();
      Program first = block();
      BoolExpr mid = braced_bool();
      note("assertion", mid);
      Program second = block();
      return Program::seq(std::move(first), std::move(mid), std::move(second));
    }
    if (word == "if") {
      lex_.next();
      BoolExpr cond = expr_.parse_bool();
      Program then_branch = block();
      keyword("else");
      Program else_branch = block();
      return Program::if_then_else(std::move(cond), std::move(then_branch), std::move(else_branch));
    }
    if (word == "while") {
      lex_.next();
      BoolExpr cond = expr_.parse_bool();
      keyword("inv");
      BoolExpr inv = braced_bool();
      note("invariant", inv);
      Program body = block();
      return Program::while_loop(std::move(cond), std::move(inv), std::move(body));
    }
    lex_.fail("expected a statement");
  }

  Lexer& lex_;
  const SymbolTable& table_;
  ExprParser expr_;
  std::size_t points_ = 0;
  std::map<std::string, std::vector<std::string>> uses_;
};

}  // namespace detail

/// Parses a program file: `tests:`, `actions:`, `pre:` and `post:` lines
/// followed by the annotated program.  `p_skip` is added to the actions
/// when the program uses `skip`.
inline ProgramFile parse_program_file(std::string_view text) {
  static constexpr std::string_view keys[] = {"tests", "actions", "pre", "post"};
  const SplitText split = split_headers(text, keys);
  SymbolTable table = parse_symbol_header(split);
  const HeaderLine* pre = split.find("pre");
  const HeaderLine* post = split.find("post");
  if (!pre) throw ParseError("missing 'pre:' line", 0);
  if (!post) throw ParseError("missing 'post:' line", 0);

  Lexer lex(split.body);
  detail::ProgramParser parser(lex, table);
  BoolExpr pre_b = parse_bool_at(*pre, table);
  parser.note("precondition", pre_b);
  Program prog = parser.program();
  if (!lex.at(Tok::End)) lex.fail("unexpected trailing input");
  BoolExpr post_b = parse_bool_at(*post, table);
  parser.note("postcondition", post_b);

  if (prog.contains_skip() && !table.find_action(kSkipAction)) table = table.with_action(std::string(kSkipAction));
  return ProgramFile{table, Pca{pre_b, prog, post_b}, parser.shared()};
}

}  // namespace katpd
