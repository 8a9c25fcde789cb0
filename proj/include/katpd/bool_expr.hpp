#pragma once

#include <algorithm>
#include <compare>
#include <memory>
#include <span>
#include <vector>

#include "katpd/symbols.hpp"

namespace katpd {

/// Boolean test expression.  Immutable; copies share structure.
///
/// Disjunctions are stored as sorted duplicate-free sets.  Conjunctions keep
/// their order (first occurrence wins when duplicates are removed).  The
/// constants are absorbed at construction; negation is only folded over 0
/// and 1.
class BoolExpr {
 public:
  enum class Kind : std::uint8_t { Zero, One, Test, Not, Or, And };

  BoolExpr() : BoolExpr(zero()) {}

  static BoolExpr zero() {
    static const BoolExpr z(std::make_shared<const Node>(Kind::Zero, 0, std::vector<BoolExpr>{}));
    return z;
  }
  static BoolExpr one() {
    static const BoolExpr o(std::make_shared<const Node>(Kind::One, 0, std::vector<BoolExpr>{}));
    return o;
  }
  static BoolExpr test(TestId t) { return BoolExpr(std::make_shared<const Node>(Kind::Test, t, std::vector<BoolExpr>{})); }

  static BoolExpr negation(BoolExpr b) {
    if (b.kind() == Kind::Zero) return one();
    if (b.kind() == Kind::One) return zero();
    return BoolExpr(std::make_shared<const Node>(Kind::Not, 0, std::vector<BoolExpr>{std::move(b)}));
  }

  static BoolExpr disjunction(std::vector<BoolExpr> parts) {
    std::vector<BoolExpr> flat;
    for (auto& b : parts) {
      if (b.kind() == Kind::Or) {
        flat.insert(flat.end(), b.node_->children.begin(), b.node_->children.end());
      } else if (b.kind() != Kind::Zero) {
        flat.push_back(std::move(b));
      }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return zero();
    if (flat.size() == 1) return flat.front();
    return BoolExpr(std::make_shared<const Node>(Kind::Or, 0, std::move(flat)));
  }

  static BoolExpr conjunction(std::vector<BoolExpr> parts) {
    std::vector<BoolExpr> flat;
    auto push = [&flat](const BoolExpr& b) {
      if (std::find(flat.begin(), flat.end(), b) == flat.end()) flat.push_back(b);
    };
    for (auto& b : parts) {
      if (b.kind() == Kind::Zero) return zero();
      if (b.kind() == Kind::One) continue;
      if (b.kind() == Kind::And) {
        for (const auto& c : b.node_->children) push(c);
      } else {
        push(b);
      }
    }
    if (flat.empty()) return one();
    if (flat.size() == 1) return flat.front();
    return BoolExpr(std::make_shared<const Node>(Kind::And, 0, std::move(flat)));
  }

  static BoolExpr disjunction(BoolExpr a, BoolExpr b) { return disjunction(std::vector<BoolExpr>{std::move(a), std::move(b)}); }
  static BoolExpr conjunction(BoolExpr a, BoolExpr b) { return conjunction(std::vector<BoolExpr>{std::move(a), std::move(b)}); }

  Kind kind() const { return node_->kind; }
  TestId test_id() const { return node_->test; }
  /// Operand of a negation.
  const BoolExpr& operand() const { return node_->children.front(); }
  std::span<const BoolExpr> children() const { return node_->children; }
  std::size_t hash() const { return node_->hash; }

  /// Binary-grammar node count: an n-ary connective counts as n-1 nodes.
  std::size_t node_count() const { return node_->node_count; }

  friend bool operator==(const BoolExpr& a, const BoolExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash) return false;
    return compare(a, b) == std::strong_ordering::equal;
  }
  friend std::strong_ordering operator<=>(const BoolExpr& a, const BoolExpr& b) { return compare(a, b); }

 private:
  struct Node {
    Node(Kind k, TestId t, std::vector<BoolExpr> c) : kind(k), test(t), children(std::move(c)) {
      hash = detail::hash_mix(static_cast<std::size_t>(kind) + 1, test);
      node_count = children.size() > 1 ? children.size() - 1 : 1;  // n-ary node stands for n-1 binary ones
      for (const auto& ch : children) {
        hash = detail::hash_mix(hash, ch.hash());
        node_count += ch.node_count();
      }
    }
    Kind kind;
    TestId test;
    std::vector<BoolExpr> children;
    std::size_t hash = 0;
    std::size_t node_count = 0;
  };

  explicit BoolExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::strong_ordering compare(const BoolExpr& a, const BoolExpr& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    if (auto c = a.node_->test <=> b.node_->test; c != 0) return c;
    const auto& x = a.node_->children;
    const auto& y = b.node_->children;
    if (auto c = x.size() <=> y.size(); c != 0) return c;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (auto c = compare(x[i], y[i]); c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  std::shared_ptr<const Node> node_;
};

/// α ≤ b: evaluates `b` under the truth assignment `alpha`.
inline bool atom_satisfies(Atom alpha, const BoolExpr& b) {
  switch (b.kind()) {
    case BoolExpr::Kind::Zero: return false;
    case BoolExpr::Kind::One: return true;
    case BoolExpr::Kind::Test: return alpha.holds(b.test_id());
    case BoolExpr::Kind::Not: return !atom_satisfies(alpha, b.operand());
    case BoolExpr::Kind::Or:
      return std::any_of(b.children().begin(), b.children().end(),
                         [alpha](const BoolExpr& c) { return atom_satisfies(alpha, c); });
    case BoolExpr::Kind::And:
      return std::all_of(b.children().begin(), b.children().end(),
                         [alpha](const BoolExpr& c) { return atom_satisfies(alpha, c); });
  }
  return false;
}

/// Number of test-symbol leaves.
inline std::size_t test_occurrences(const BoolExpr& b) {
  if (b.kind() == BoolExpr::Kind::Test) return 1;
  std::size_t n = 0;
  for (const auto& c : b.children()) n += test_occurrences(c);
  return n;
}

}  // namespace katpd
