// Reduction of model-checking queries to closed quantified Boolean formulas:
// the formula translator, the program-relation translator, the state
// description, and the revision constraint (intersection of maximal
// consistent subsets).

#pragma once

#include "lca/model.hpp"
#include "lca/qbf.hpp"

namespace lca {

struct TranslateOptions {
  // When set, the epistemic/attraction/repulsion link formulas range over the
  // declared vocabulary only instead of its reward/punishment closure.
  // Comparison mode; the default keeps the symbolic backend equal to the
  // explicit-state checker.
  bool strict_macros = false;
};

class TranslationSession {
 public:
  explicit TranslationSession(const Context& ctx, TranslateOptions opt = {});

  const Context& context() const { return ctx_; }
  const VarSpace& space() const { return space_; }
  LevelId root_level() const { return LevelId{0}; }
  LevelId fresh_level() { return LevelId{next_level_++}; }
  uint32_t levels_used() const { return next_level_; }

  // Def.-style clause-by-clause translation; f must be derived-free.
  QbfPtr tr(const FormulaPtr& f, LevelId s);
  QbfPtr tr_prog(const ProgramPtr& p, LevelId s, LevelId t);

  // Link formulas between the state at level s and the state at level t.
  QbfPtr epistemic_link(int agent_idx, LevelId s, LevelId t);
  QbfPtr attract_link(int agent_idx, LevelId s, LevelId t);
  QbfPtr repulse_link(int agent_idx, LevelId s, LevelId t);

  // Revision abbreviations (ranges over the closure).
  QbfPtr incl(int agent_idx, LevelId s, LevelId t);
  QbfPtr strict_incl(int agent_idx, LevelId s, LevelId t);
  QbfPtr incl_minus(int agent_idx, const FormulaPtr& a, LevelId s, LevelId t);
  QbfPtr base_consistent(int agent_idx, LevelId s);
  QbfPtr mcs(int agent_idx, LevelId m, LevelId s, const FormulaPtr& a);
  QbfPtr imcs(int agent_idx, LevelId s, LevelId t, const FormulaPtr& a);

  // Conjunction of literals pinning level s to the given state.
  QbfPtr desc(const State& s0, LevelId s);

 private:
  QbfPtr belief_var(int agent_idx, const FormulaPtr& f, LevelId s);
  QbfPtr eq_prop(LevelId s, LevelId t);
  QbfPtr eq_agent(int agent_idx, LevelId s, LevelId t);
  QbfPtr eq_expand(int agent_idx, const FormulaPtr& a, LevelId s, LevelId t);
  QbfPtr eq_forget(int agent_idx, const FormulaPtr& a, LevelId s, LevelId t);
  int require_agent(const AgentId& a) const;

  const Context& ctx_;
  TranslateOptions opt_;
  VarSpace space_;
  uint32_t next_level_ = 1;  // 0 is the root
};

// The whole reduction: exists X_root (desc(s0) & tr(expand_derived(f))).
// Closed; true iff (s0, S_Gamma) satisfies f.
QbfPtr reduce(const Context& ctx, const State& s0, const FormulaPtr& f,
              TranslateOptions opt = {});

// The unique assignment of level vars matching a state (used to eliminate the
// outer existential block by substitution before solving).
QbfAssignment state_assignment(const Context& ctx, const VarSpace& space, const State& s0,
                               LevelId level);

}  // namespace lca
