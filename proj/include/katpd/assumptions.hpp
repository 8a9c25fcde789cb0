#pragma once

#include <optional>
#include <vector>

#include "katpd/equivalence.hpp"

namespace katpd {

namespace detail {

struct GammaActionRule {
  const AssumptionSet* gamma;
  std::optional<KatExpr> derive(Atom alpha, ActionId p, ActionId leaf) const {
    if (p != leaf) return std::nullopt;
    return KatExpr::boolean(hypothesis_product(*gamma, alpha, p));
  }
};

}  // namespace detail

/// Δ^Γ_{αp}(e).  Empty when α ∉ At^Γ; an action leaf p yields {Πb'}.
inline ExprSet pd_gamma(Atom alpha, ActionId p, const KatExpr& e, const AssumptionSet& gamma) {
  ExprSet out;
  if (!atom_admitted(gamma, alpha)) return out;
  detail::pd_into(alpha, p, e, detail::GammaActionRule{&gamma}, out);
  return out;
}

inline ExprSet pd_gamma(Atom alpha, ActionId p, const ExprSet& set, const AssumptionSet& gamma) {
  ExprSet out;
  if (!atom_admitted(gamma, alpha)) return out;
  for (const auto& e : set) detail::pd_into(alpha, p, e, detail::GammaActionRule{&gamma}, out);
  return out;
}

struct GammaLinearizer {
  const AssumptionSet* gamma;
  std::vector<Atom> admitted;

  LinForm operator()(const KatExpr& e) const {
    return detail::lin_with(e, [this](ActionId p) {
      LinForm out;
      for (Atom alpha : admitted) {
        const BoolExpr post = hypothesis_product(*gamma, alpha, p);
        if (post.kind() != BoolExpr::Kind::Zero) out[Head{alpha, p}].insert(KatExpr::boolean(post));
      }
      return out;
    });
  }
};

/// f^Γ(e): the linear form whose der agrees with Δ^Γ.  Heads range over
/// At^Γ·Σ.
inline LinForm lin_gamma(const KatExpr& e, const AssumptionSet& gamma, const SymbolTable& table) {
  return GammaLinearizer{&gamma, atoms_gamma(gamma, table)}(e);
}

inline Verdict equiv_gamma_sets(ExprSet e1, ExprSet e2, const AssumptionSet& gamma, const SymbolTable& table,
                                CheckOptions options = {}) {
  auto admitted = atoms_gamma(gamma, table);
  BisimulationChecker checker(admitted, GammaLinearizer{&gamma, admitted}, options);
  return checker.run(std::move(e1), std::move(e2));
}

/// Decides GS^Γ(e1) = GS^Γ(e2).
inline Verdict equiv_gamma(const KatExpr& e1, const KatExpr& e2, const AssumptionSet& gamma,
                           const SymbolTable& table, CheckOptions options = {}) {
  return equiv_gamma_sets(ExprSet{e1}, ExprSet{e2}, gamma, table, options);
}

/// u·r·u with u = (p1 + ... + pk)* over every action of `table` and r the
/// sum of b·p·!b' and c·!c' over the hypotheses.
inline KatExpr build_uru(const AssumptionSet& gamma, const SymbolTable& table) {
  std::vector<KatExpr> actions;
  for (ActionId p = 0; p < table.num_actions(); ++p) actions.push_back(KatExpr::action(p));
  const KatExpr u = KatExpr::star(KatExpr::sum(std::move(actions)));
  std::vector<KatExpr> r;
  for (const auto& h : gamma.action_hyps) {
    r.push_back(KatExpr::product({KatExpr::boolean(h.pre), KatExpr::action(h.action),
                                  KatExpr::boolean(BoolExpr::negation(h.post))}));
  }
  for (const auto& h : gamma.bool_hyps) {
    r.push_back(KatExpr::boolean(BoolExpr::conjunction(h.premise, BoolExpr::negation(h.conclusion))));
  }
  return KatExpr::product({u, KatExpr::sum(std::move(r)), u});
}

enum class Method { GammaDirect, Uru };

/// Decides Γ → e1 = e2 either directly or through e1 + uru = e2 + uru.
inline Verdict check_implication(const AssumptionSet& gamma, const KatExpr& e1, const KatExpr& e2, Method method,
                                 const SymbolTable& table, CheckOptions options = {}) {
  if (method == Method::GammaDirect) return equiv_gamma(e1, e2, gamma, table, options);
  const KatExpr uru = build_uru(gamma, table);
  return equiv(KatExpr::sum(e1, uru), KatExpr::sum(e2, uru), table, options);
}

}  // namespace katpd
