#pragma once

#include <algorithm>
#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "katpd/kat_expr.hpp"

namespace katpd {

enum class Tok {
  End, Ident, Zero, One, Plus, Dot, Star, Bang, LParen, RParen,
  LBrace, RBrace, LBracket, RBracket, Semi, Arrow, Colon, String
};

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t offset = 0;
};

/// Tokenizer shared by the expression, problem-file and program parsers.
/// `#` starts a comment that runs to the end of the line.
class Lexer {
 public:
  explicit Lexer(std::string_view src, std::size_t base_offset = 0) : src_(src), base_(base_offset) { advance(); }

  const Token& peek() const { return current_; }
  Token next() {
    Token t = current_;
    advance();
    return t;
  }
  bool at(Tok k) const { return current_.kind == k; }

  Token expect(Tok k, const char* what) {
    if (current_.kind != k) fail(std::string("expected ") + what);
    return next();
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::string found = current_.kind == Tok::End ? "end of input" : "'" + std::string(current_.text) + "'";
    throw ParseError(message + " at offset " + std::to_string(current_.offset) + ", found " + found,
                     current_.offset);
  }

 private:
  void advance() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    current_.offset = base_ + pos_;
    if (pos_ >= src_.size()) {
      current_ = Token{Tok::End, {}, base_ + pos_};
      return;
    }
    const std::size_t start = pos_;
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      current_ = Token{k, src_.substr(start, 1), base_ + start};
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      current_ = Token{Tok::Ident, src_.substr(start, pos_ - start), base_ + start};
      return;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      pos_ += 2;
      current_ = Token{Tok::Arrow, src_.substr(start, 2), base_ + start};
      return;
    }
    if (c == '"') {
      const auto close = src_.find('"', pos_ + 1);
      if (close == std::string_view::npos) {
        throw ParseError("unterminated string at offset " + std::to_string(base_ + start), base_ + start);
      }
      pos_ = close + 1;
      current_ = Token{Tok::String, src_.substr(start + 1, close - start - 1), base_ + start};
      return;
    }
    switch (c) {
      case '0': single(Tok::Zero); break;
      case '1': single(Tok::One); break;
      case '+': single(Tok::Plus); break;
      case '.': single(Tok::Dot); break;
      case '*': single(Tok::Star); break;
      case '!': single(Tok::Bang); break;
      case '(': single(Tok::LParen); break;
      case ')': single(Tok::RParen); break;
      case '{': single(Tok::LBrace); break;
      case '}': single(Tok::RBrace); break;
      case '[': single(Tok::LBracket); break;
      case ']': single(Tok::RBracket); break;
      case ';': single(Tok::Semi); break;
      case ':': single(Tok::Colon); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "' at offset " + std::to_string(base_ + start),
                         base_ + start);
    }
  }

  std::string_view src_;
  std::size_t base_;
  std::size_t pos_ = 0;
  Token current_;
};

/// Recursive-descent parser for
///
///     expr   := term {"+" term}
///     term   := factor {("." factor) | factor}
///     factor := base {"*"}
///     base   := "0" | "1" | ident | "!" base | "(" expr ")"
///
/// Identifiers listed in `stop_words` end an expression instead of being
/// read as symbols (the program parser uses this for its keywords).
class ExprParser {
 public:
  ExprParser(Lexer& lex, const SymbolTable& table, std::span<const std::string_view> stop_words = {})
      : lex_(lex), table_(table), stop_words_(stop_words) {}

  KatExpr parse_expr() {
    std::vector<KatExpr> terms{parse_term()};
    while (lex_.at(Tok::Plus)) {
      lex_.next();
      terms.push_back(parse_term());
    }
    return KatExpr::sum(std::move(terms));
  }

  BoolExpr parse_bool() {
    const std::size_t offset = lex_.peek().offset;
    auto e = parse_expr();
    auto b = as_bool(e);
    if (!b) throw ParseError("expected a Boolean expression at offset " + std::to_string(offset), offset);
    return *b;
  }

 private:
  bool starts_base() const {
    switch (lex_.peek().kind) {
      case Tok::Zero: case Tok::One: case Tok::Bang: case Tok::LParen: return true;
      case Tok::Ident: return !is_stop_word(lex_.peek().text);
      default: return false;
    }
  }

  bool is_stop_word(std::string_view w) const {
    return std::find(stop_words_.begin(), stop_words_.end(), w) != stop_words_.end();
  }

  KatExpr parse_term() {
    std::vector<KatExpr> factors{parse_factor()};
    for (;;) {
      if (lex_.at(Tok::Dot)) {
        lex_.next();
        factors.push_back(parse_factor());
      } else if (starts_base()) {
        factors.push_back(parse_factor());
      } else {
        break;
      }
    }
    return KatExpr::product(std::move(factors));
  }

  KatExpr parse_factor() {
    KatExpr e = parse_base();
    while (lex_.at(Tok::Star)) {
      lex_.next();
      e = KatExpr::star(std::move(e));
    }
    return e;
  }

  KatExpr parse_base() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Tok::Zero: lex_.next(); return KatExpr::zero();
      case Tok::One: lex_.next(); return KatExpr::one();
      case Tok::Bang: {
        lex_.next();
        auto operand = parse_base();
        auto b = as_bool(operand);
        if (!b) {
          throw ParseError("negation applied to a non-Boolean expression at offset " + std::to_string(t.offset),
                           t.offset);
        }
        return KatExpr::boolean(BoolExpr::negation(*b));
      }
      case Tok::LParen: {
        lex_.next();
        auto e = parse_expr();
        lex_.expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        if (is_stop_word(t.text)) lex_.fail("expected an expression");
        lex_.next();
        if (auto p = table_.find_action(t.text)) return KatExpr::action(*p);
        if (auto v = table_.find_test(t.text)) return KatExpr::test(*v);
        throw ParseError("undeclared identifier '" + std::string(t.text) + "' at offset " + std::to_string(t.offset),
                         t.offset);
      }
      default: lex_.fail("expected an expression");
    }
  }

  Lexer& lex_;
  const SymbolTable& table_;
  std::span<const std::string_view> stop_words_;
};

inline KatExpr parse_kat(std::string_view text, const SymbolTable& table) {
  Lexer lex(text);
  ExprParser parser(lex, table);
  auto e = parser.parse_expr();
  if (!lex.at(Tok::End)) lex.fail("unexpected trailing input");
  return e;
}

inline BoolExpr parse_bool(std::string_view text, const SymbolTable& table) {
  Lexer lex(text);
  ExprParser parser(lex, table);
  auto b = parser.parse_bool();
  if (!lex.at(Tok::End)) lex.fail("unexpected trailing input");
  return b;
}

namespace detail {

// Printing contexts, loosest first.
enum Level { kSum = 0, kProduct = 1, kFactor = 2, kBase = 3 };

inline std::string paren_if(bool wrap, std::string s) { return wrap ? "(" + s + ")" : s; }

inline std::string print(const BoolExpr& b, const SymbolTable& table, Level ctx) {
  switch (b.kind()) {
    case BoolExpr::Kind::Zero: return "0";
    case BoolExpr::Kind::One: return "1";
    case BoolExpr::Kind::Test: return table.test_name(b.test_id());
    case BoolExpr::Kind::Not: return "!" + print(b.operand(), table, kBase);
    case BoolExpr::Kind::Or: {
      std::string s;
      for (const auto& c : b.children()) s += (s.empty() ? "" : " + ") + print(c, table, kProduct);
      return paren_if(ctx > kSum, s);
    }
    case BoolExpr::Kind::And: {
      std::string s;
      for (const auto& c : b.children()) s += (s.empty() ? "" : ".") + print(c, table, kFactor);
      return paren_if(ctx > kProduct, s);
    }
  }
  return {};
}

inline std::string print(const KatExpr& e, const SymbolTable& table, Level ctx) {
  switch (e.kind()) {
    case KatExpr::Kind::Bool: return print(e.bool_expr(), table, ctx);
    case KatExpr::Kind::Action: return table.action_name(e.action_id());
    case KatExpr::Kind::Plus: {
      std::string s;
      for (const auto& c : e.children()) s += (s.empty() ? "" : " + ") + print(c, table, kProduct);
      return paren_if(ctx > kSum, s);
    }
    case KatExpr::Kind::Dot: {
      std::string s;
      for (const auto& c : e.children()) s += (s.empty() ? "" : ".") + print(c, table, kFactor);
      return paren_if(ctx > kProduct, s);
    }
    case KatExpr::Kind::Star: return paren_if(ctx > kFactor, print(e.body(), table, kFactor) + "*");
  }
  return {};
}

}  // namespace detail

inline std::string to_string(const BoolExpr& b, const SymbolTable& table) { return detail::print(b, table, detail::kSum); }
inline std::string to_string(const KatExpr& e, const SymbolTable& table) { return detail::print(e, table, detail::kSum); }

}  // namespace katpd
