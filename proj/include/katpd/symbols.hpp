#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace katpd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation would need more atoms than the engine supports.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Raised by the front ends when input text is malformed.  `offset` is the
/// byte position inside the text handed to the parser.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised when an expression does not have the shape of an encoded program.
class StructureError : public Error {
 public:
  using Error::Error;
};

using ActionId = std::uint32_t;
using TestId = std::uint32_t;

/// Hard limit on the number of primitive tests (2^20 atoms).
inline constexpr std::size_t kMaxTests = 20;

/// A complete truth assignment to the tests of a symbol table.  Test 0 is
/// the most significant bit, so the numeric order of `bits()` is the
/// canonical enumeration order.
class Atom {
 public:
  constexpr Atom() = default;
  constexpr Atom(std::uint32_t bits, std::uint32_t width) : bits_(bits), width_(width) {}

  constexpr bool holds(TestId t) const { return ((bits_ >> (width_ - 1 - t)) & 1u) != 0; }
  constexpr Atom with(TestId t, bool value) const {
    const std::uint32_t mask = 1u << (width_ - 1 - t);
    return Atom(value ? (bits_ | mask) : (bits_ & ~mask), width_);
  }
  constexpr std::uint32_t bits() const { return bits_; }
  constexpr std::uint32_t width() const { return width_; }

  friend constexpr auto operator<=>(const Atom&, const Atom&) = default;

 private:
  std::uint32_t bits_ = 0;
  std::uint32_t width_ = 0;
};

class SymbolTable {
 public:
  SymbolTable(std::vector<std::string> actions, std::vector<std::string> tests)
      : actions_(std::move(actions)), tests_(std::move(tests)), cache_(std::make_shared<AtomCache>()) {
    if (actions_.empty()) throw Error("symbol table needs at least one action");
    if (tests_.empty()) throw Error("symbol table needs at least one test");
    auto check_unique = [](std::vector<std::string> names, const char* what) {
      std::sort(names.begin(), names.end());
      auto dup = std::adjacent_find(names.begin(), names.end());
      if (dup != names.end()) throw Error(std::string("duplicate ") + what + " name '" + *dup + "'");
      return names;
    };
    auto a = check_unique(actions_, "action");
    auto t = check_unique(tests_, "test");
    std::vector<std::string> both;
    std::set_intersection(a.begin(), a.end(), t.begin(), t.end(), std::back_inserter(both));
    if (!both.empty()) throw Error("'" + both.front() + "' declared as both action and test");
  }

  const std::vector<std::string>& actions() const { return actions_; }
  const std::vector<std::string>& tests() const { return tests_; }
  std::size_t num_actions() const { return actions_.size(); }
  std::size_t num_tests() const { return tests_.size(); }

  std::optional<ActionId> find_action(std::string_view name) const { return find(actions_, name); }
  std::optional<TestId> find_test(std::string_view name) const { return find(tests_, name); }

  const std::string& action_name(ActionId a) const { return actions_.at(a); }
  const std::string& test_name(TestId t) const { return tests_.at(t); }

  /// All 2^l atoms in canonical order.  Computed once per table and shared
  /// between copies.
  const std::vector<Atom>& atoms() const {
    if (tests_.size() > kMaxTests) {
      throw CapacityError("too many tests: " + std::to_string(tests_.size()) + " (maximum is " +
                          std::to_string(kMaxTests) + ")");
    }
    std::call_once(cache_->once, [this] {
      const auto width = static_cast<std::uint32_t>(tests_.size());
      const std::uint32_t count = 1u << width;
      cache_->atoms.reserve(count);
      for (std::uint32_t bits = 0; bits < count; ++bits) cache_->atoms.emplace_back(bits, width);
    });
    return cache_->atoms;
  }

  /// Copy of this table with one extra action appended; existing indices
  /// are unchanged.
  SymbolTable with_action(std::string name) const {
    auto actions = actions_;
    actions.push_back(std::move(name));
    return SymbolTable(std::move(actions), tests_);
  }

  /// Renders an atom as a signed test list, e.g. `t1!t2`.
  std::string format_atom(Atom alpha) const {
    std::string out;
    for (TestId t = 0; t < tests_.size(); ++t) {
      if (!alpha.holds(t)) out += '!';
      out += tests_[t];
    }
    return out;
  }

  Atom make_atom(std::initializer_list<bool> values) const {
    Atom alpha(0, static_cast<std::uint32_t>(tests_.size()));
    TestId t = 0;
    for (bool v : values) alpha = alpha.with(t++, v);
    return alpha;
  }

 private:
  struct AtomCache {
    std::once_flag once;
    std::vector<Atom> atoms;
  };

  static std::optional<std::uint32_t> find(const std::vector<std::string>& names, std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - names.begin());
  }

  std::vector<std::string> actions_;
  std::vector<std::string> tests_;
  std::shared_ptr<AtomCache> cache_;
};

inline std::vector<Atom> all_atoms(const SymbolTable& table) { return table.atoms(); }

namespace detail {

inline std::size_t hash_mix(std::size_t seed, std::size_t value) {
  // boost::hash_combine, widened to 64 bits.
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

}  // namespace detail
}  // namespace katpd
