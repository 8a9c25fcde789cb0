#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "katpd/syntax.hpp"

namespace katpd {

/// A `key: value` line of an input file.
struct HeaderLine {
  std::string key;
  std::string_view value;
  std::size_t offset = 0;  // offset of `value` in the original text
};

struct SplitText {
  std::vector<HeaderLine> headers;
  /// The input with every header line blanked out, so offsets into it are
  /// offsets into the original text.
  std::string body;

  /// The line for a key that may occur at most once.
  const HeaderLine* find(std::string_view key) const {
    const HeaderLine* found = nullptr;
    for (const auto& h : headers) {
      if (h.key != key) continue;
      if (found) throw ParseError("duplicate '" + h.key + ":' line at offset " + std::to_string(h.offset), h.offset);
      found = &h;
    }
    return found;
  }
};

/// Separates lines of the form `key: value`, for the given keys, from the
/// rest of `text`.
inline SplitText split_headers(std::string_view text, std::span<const std::string_view> keys) {
  SplitText out;
  out.body.assign(text.begin(), text.end());
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::string_view line = text.substr(line_start, line_end - line_start);
    const std::size_t first = line.find_first_not_of(" \t\r");
    const std::size_t colon = line.find(':');
    if (first != std::string_view::npos && colon != std::string_view::npos && colon > first) {
      std::string_view key = line.substr(first, colon - first);
      key = key.substr(0, key.find_last_not_of(" \t") + 1);
      if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
        out.headers.push_back(HeaderLine{std::string(key), line.substr(colon + 1), line_start + colon + 1});
        std::fill(out.body.begin() + static_cast<std::ptrdiff_t>(line_start),
                  out.body.begin() + static_cast<std::ptrdiff_t>(line_end), ' ');
      }
    }
    line_start = line_end + 1;
  }
  return out;
}

/// Whitespace-separated identifiers of a `tests:` or `actions:` line.
inline std::vector<std::string> parse_name_list(const HeaderLine& line) {
  Lexer lex(line.value, line.offset);
  std::vector<std::string> names;
  while (!lex.at(Tok::End)) names.emplace_back(lex.expect(Tok::Ident, "a symbol name").text);
  return names;
}

inline SymbolTable parse_symbol_header(const SplitText& split) {
  const HeaderLine* tests = split.find("tests");
  const HeaderLine* actions = split.find("actions");
  if (!tests) throw ParseError("missing 'tests:' line", 0);
  if (!actions) throw ParseError("missing 'actions:' line", 0);
  return SymbolTable(parse_name_list(*actions), parse_name_list(*tests));
}

inline KatExpr parse_kat_at(const HeaderLine& line, const SymbolTable& table) {
  Lexer lex(line.value, line.offset);
  ExprParser parser(lex, table);
  auto e = parser.parse_expr();
  if (!lex.at(Tok::End)) lex.fail("unexpected trailing input");
  return e;
}

inline BoolExpr parse_bool_at(const HeaderLine& line, const SymbolTable& table) {
  Lexer lex(line.value, line.offset);
  ExprParser parser(lex, table);
  auto b = parser.parse_bool();
  if (!lex.at(Tok::End)) lex.fail("unexpected trailing input");
  return b;
}

}  // namespace katpd
