#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "katpd/bool_expr.hpp"

namespace katpd {

/// KAT expression in ACI normal form.
///
/// Sums are sorted duplicate-free sets without 0 members; products are
/// flattened sequences without 1 members, and a product containing 0 is 0.
/// Neither ever has fewer than two children.  Two expressions that differ
/// only by associativity, commutativity or idempotence of `+`, or by
/// associativity of `.`, therefore compare equal.
class KatExpr {
 public:
  enum class Kind : std::uint8_t { Bool, Action, Plus, Dot, Star };

  KatExpr() : KatExpr(zero()) {}

  static KatExpr boolean(BoolExpr b) {
    return KatExpr(std::make_shared<const Node>(Kind::Bool, 0, std::move(b), std::vector<KatExpr>{}));
  }
  static KatExpr zero() {
    static const KatExpr z = boolean(BoolExpr::zero());
    return z;
  }
  static KatExpr one() {
    static const KatExpr o = boolean(BoolExpr::one());
    return o;
  }
  static KatExpr test(TestId t) { return boolean(BoolExpr::test(t)); }
  static KatExpr action(ActionId p) {
    return KatExpr(std::make_shared<const Node>(Kind::Action, p, BoolExpr::zero(), std::vector<KatExpr>{}));
  }

  static KatExpr sum(std::vector<KatExpr> parts) {
    std::vector<KatExpr> flat;
    for (auto& e : parts) {
      if (e.kind() == Kind::Plus) {
        flat.insert(flat.end(), e.node_->children.begin(), e.node_->children.end());
      } else if (!e.is_zero()) {
        flat.push_back(std::move(e));
      }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return zero();
    if (flat.size() == 1) return flat.front();
    return KatExpr(std::make_shared<const Node>(Kind::Plus, 0, BoolExpr::zero(), std::move(flat)));
  }

  static KatExpr product(std::vector<KatExpr> parts) {
    std::vector<KatExpr> flat;
    for (auto& e : parts) {
      if (e.is_zero()) return zero();
      if (e.is_one()) continue;
      if (e.kind() == Kind::Dot) {
        flat.insert(flat.end(), e.node_->children.begin(), e.node_->children.end());
      } else {
        flat.push_back(std::move(e));
      }
    }
    if (flat.empty()) return one();
    if (flat.size() == 1) return flat.front();
    return KatExpr(std::make_shared<const Node>(Kind::Dot, 0, BoolExpr::zero(), std::move(flat)));
  }

  static KatExpr sum(KatExpr a, KatExpr b) { return sum(std::vector<KatExpr>{std::move(a), std::move(b)}); }
  static KatExpr product(KatExpr a, KatExpr b) { return product(std::vector<KatExpr>{std::move(a), std::move(b)}); }

  static KatExpr star(KatExpr e) {
    return KatExpr(std::make_shared<const Node>(Kind::Star, 0, BoolExpr::zero(), std::vector<KatExpr>{std::move(e)}));
  }

  Kind kind() const { return node_->kind; }
  bool is_zero() const { return kind() == Kind::Bool && node_->test.kind() == BoolExpr::Kind::Zero; }
  bool is_one() const { return kind() == Kind::Bool && node_->test.kind() == BoolExpr::Kind::One; }

  const BoolExpr& bool_expr() const { return node_->test; }
  ActionId action_id() const { return node_->action; }
  std::span<const KatExpr> children() const { return node_->children; }
  /// Operand of a star.
  const KatExpr& body() const { return node_->children.front(); }

  std::size_t hash() const { return node_->hash; }
  /// Address of the shared node; stable for the lifetime of any copy.
  const void* identity() const { return node_.get(); }
  /// Binary-grammar node count (an n-ary sum or product counts n-1 nodes).
  std::size_t node_count() const { return node_->node_count; }

  friend bool operator==(const KatExpr& a, const KatExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash) return false;
    return compare(a, b) == std::strong_ordering::equal;
  }
  friend std::strong_ordering operator<=>(const KatExpr& a, const KatExpr& b) { return compare(a, b); }

 private:
  struct Node {
    Node(Kind k, ActionId a, BoolExpr b, std::vector<KatExpr> c)
        : kind(k), action(a), test(std::move(b)), children(std::move(c)) {
      hash = detail::hash_mix(static_cast<std::size_t>(kind) + 17, action);
      switch (kind) {
        case Kind::Bool:
          hash = detail::hash_mix(hash, test.hash());
          node_count = test.node_count();
          break;
        case Kind::Action: node_count = 1; break;
        case Kind::Star: node_count = 1; break;
        default: node_count = children.size() - 1; break;
      }
      for (const auto& ch : children) {
        hash = detail::hash_mix(hash, ch.hash());
        node_count += ch.node_count();
      }
    }
    Kind kind;
    ActionId action;
    BoolExpr test;
    std::vector<KatExpr> children;
    std::size_t hash = 0;
    std::size_t node_count = 0;
  };

  explicit KatExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  // Leaves order by content so printed sums of symbols read naturally;
  // composite nodes order by hash first to keep comparisons shallow.
  static std::strong_ordering compare(const KatExpr& a, const KatExpr& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    switch (a.kind()) {
      case Kind::Bool: return a.node_->test <=> b.node_->test;
      case Kind::Action: return a.node_->action <=> b.node_->action;
      default: break;
    }
    if (auto c = a.node_->hash <=> b.node_->hash; c != 0) return c;
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

/// Reads a KAT expression back as a Boolean one when every leaf is a test
/// and only `+` and `.` are used.
inline std::optional<BoolExpr> as_bool(const KatExpr& e) {
  switch (e.kind()) {
    case KatExpr::Kind::Bool: return e.bool_expr();
    case KatExpr::Kind::Action:
    case KatExpr::Kind::Star: return std::nullopt;
    case KatExpr::Kind::Plus:
    case KatExpr::Kind::Dot: {
      std::vector<BoolExpr> parts;
      for (const auto& c : e.children()) {
        auto b = as_bool(c);
        if (!b) return std::nullopt;
        parts.push_back(std::move(*b));
      }
      return e.kind() == KatExpr::Kind::Plus ? BoolExpr::disjunction(std::move(parts))
                                             : BoolExpr::conjunction(std::move(parts));
    }
  }
  return std::nullopt;
}

inline std::size_t test_occurrences(const KatExpr& e) {
  if (e.kind() == KatExpr::Kind::Bool) return test_occurrences(e.bool_expr());
  std::size_t n = 0;
  for (const auto& c : e.children()) n += test_occurrences(c);
  return n;
}

}  // namespace katpd

template <>
struct std::hash<katpd::KatExpr> {
  std::size_t operator()(const katpd::KatExpr& e) const noexcept { return e.hash(); }
};

template <>
struct std::hash<katpd::BoolExpr> {
  std::size_t operator()(const katpd::BoolExpr& b) const noexcept { return b.hash(); }
};
