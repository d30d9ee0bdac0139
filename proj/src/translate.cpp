#include "lca/translate.hpp"

#include "lca/attitudes.hpp"

namespace lca {

TranslationSession::TranslationSession(const Context& ctx, TranslateOptions opt)
    : ctx_(ctx), opt_(opt), space_(ctx) {}

int TranslationSession::require_agent(const AgentId& a) const {
  int ai = ctx_.agent_index(a);
  if (ai < 0) throw ModelError("undeclared agent " + a.name);
  return ai;
}

QbfPtr TranslationSession::belief_var(int agent_idx, const FormulaPtr& f, LevelId s) {
  int bit = ctx_.bit_of_member(agent_idx, f);
  if (bit < 0) return q_const(false);
  int member_idx = bit - ctx_.member_base_bit(agent_idx);
  return q_var(QVar{s, space_.member_tag(agent_idx, member_idx)});
}

QbfPtr TranslationSession::tr(const FormulaPtr& f, LevelId s) {
  switch (f->kind) {
    case FKind::Atom: {
      int bit = ctx_.bit_of_atom(f->atom);
      if (bit < 0) return q_const(false);  // untracked atoms are false everywhere
      return q_var(QVar{s, space_.atom_tag(bit)});
    }
    case FKind::Top: return q_const(true);
    case FKind::Bottom: return q_const(false);
    case FKind::Not: return q_not(tr(f->lhs, s));
    case FKind::And: return q_and(tr(f->lhs, s), tr(f->rhs, s));
    case FKind::Or: return q_or(tr(f->lhs, s), tr(f->rhs, s));
    case FKind::Implies: return q_implies(tr(f->lhs, s), tr(f->rhs, s));
    case FKind::Iff:
      // Each side is translated once per occurrence so fresh levels are never
      // shared between the two directions.
      return q_and(q_implies(tr(f->lhs, s), tr(f->rhs, s)),
                   q_implies(tr(f->rhs, s), tr(f->lhs, s)));
    case FKind::ExplicitBelief: return belief_var(require_agent(f->agent), f->lhs, s);
    case FKind::ImplicitBelief: {
      int ai = require_agent(f->agent);
      LevelId t = fresh_level();
      return q_forall(t, q_implies(epistemic_link(ai, s, t), tr(f->lhs, t)));
    }
    case FKind::Attract: {
      int ai = require_agent(f->agent);
      LevelId t = fresh_level();
      return q_forall(t, q_implies(tr(f->lhs, t), attract_link(ai, s, t)));
    }
    case FKind::Repulse: {
      int ai = require_agent(f->agent);
      LevelId t = fresh_level();
      return q_forall(t, q_implies(tr(f->lhs, t), repulse_link(ai, s, t)));
    }
    case FKind::RAttract: {
      int ai = require_agent(f->agent);
      LevelId t = fresh_level();
      return q_forall(t, q_implies(q_and(tr(f->lhs, t), epistemic_link(ai, s, t)),
                                   attract_link(ai, s, t)));
    }
    case FKind::RRepulse: {
      int ai = require_agent(f->agent);
      LevelId t = fresh_level();
      return q_forall(t, q_implies(q_and(tr(f->lhs, t), epistemic_link(ai, s, t)),
                                   repulse_link(ai, s, t)));
    }
    case FKind::Box: {
      LevelId t = fresh_level();
      QbfPtr rel = tr_prog(f->prog, s, t);
      return q_forall(t, q_implies(std::move(rel), tr(f->lhs, t)));
    }
    case FKind::Diamond: {
      LevelId t = fresh_level();
      QbfPtr rel = tr_prog(f->prog, s, t);
      return q_exists(t, q_and(std::move(rel), tr(f->lhs, t)));
    }
    case FKind::Derived:
      throw ModelError("derived operator reached the translator; expand it first");
  }
  return q_const(false);
}

QbfPtr TranslationSession::epistemic_link(int agent_idx, LevelId s, LevelId t) {
  QbfPtr out = q_const(true);
  if (opt_.strict_macros) {
    const auto& gamma = ctx_.profile().gammas;
    auto it = gamma.find(ctx_.agents()[agent_idx]);
    if (it != gamma.end())
      for (const auto& m : it->second)
        out = q_and(std::move(out), q_implies(belief_var(agent_idx, m, s), tr(m, t)));
    return out;
  }
  const auto& members = ctx_.members(agent_idx);
  for (int mi = 0; mi < static_cast<int>(members.size()); ++mi) {
    QbfPtr believed = q_var(QVar{s, space_.member_tag(agent_idx, mi)});
    out = q_and(std::move(out), q_implies(std::move(believed), tr(members[mi], t)));
  }
  return out;
}

namespace {

// Matches alpha -> rew(i) / alpha -> pun(i) against the member's shape.
const Formula* desire_antecedent(const FormulaPtr& member, const std::string& agent,
                                 bool reward) {
  if (member->kind != FKind::Implies || member->rhs->kind != FKind::Atom) return nullptr;
  const Atom& head = member->rhs->atom;
  Atom::Kind want = reward ? Atom::Kind::Reward : Atom::Kind::Punish;
  if (head.kind != want || head.text != agent) return nullptr;
  return member->lhs.get();
}

}  // namespace

QbfPtr TranslationSession::attract_link(int agent_idx, LevelId s, LevelId t) {
  const std::string& name = ctx_.agents()[agent_idx].name;
  QbfPtr out = q_const(false);
  if (opt_.strict_macros) {
    const auto& gamma = ctx_.profile().gammas;
    auto it = gamma.find(ctx_.agents()[agent_idx]);
    if (it != gamma.end())
      for (const auto& m : it->second)
        if (desire_antecedent(m, name, true))
          out = q_or(std::move(out), q_and(belief_var(agent_idx, m, s), tr(m->lhs, t)));
    return out;
  }
  const auto& members = ctx_.members(agent_idx);
  for (int mi = 0; mi < static_cast<int>(members.size()); ++mi) {
    if (!desire_antecedent(members[mi], name, true)) continue;
    QbfPtr believed = q_var(QVar{s, space_.member_tag(agent_idx, mi)});
    out = q_or(std::move(out), q_and(std::move(believed), tr(members[mi]->lhs, t)));
  }
  return out;
}

QbfPtr TranslationSession::repulse_link(int agent_idx, LevelId s, LevelId t) {
  const std::string& name = ctx_.agents()[agent_idx].name;
  QbfPtr out = q_const(false);
  if (opt_.strict_macros) {
    const auto& gamma = ctx_.profile().gammas;
    auto it = gamma.find(ctx_.agents()[agent_idx]);
    if (it != gamma.end())
      for (const auto& m : it->second)
        if (desire_antecedent(m, name, false))
          out = q_or(std::move(out), q_and(belief_var(agent_idx, m, s), tr(m->lhs, t)));
    return out;
  }
  const auto& members = ctx_.members(agent_idx);
  for (int mi = 0; mi < static_cast<int>(members.size()); ++mi) {
    if (!desire_antecedent(members[mi], name, false)) continue;
    QbfPtr believed = q_var(QVar{s, space_.member_tag(agent_idx, mi)});
    out = q_or(std::move(out), q_and(std::move(believed), tr(members[mi]->lhs, t)));
  }
  return out;
}

QbfPtr TranslationSession::eq_prop(LevelId s, LevelId t) {
  QbfPtr out = q_const(true);
  for (int a = 0; a < ctx_.atom_count(); ++a) {
    uint32_t tag = space_.atom_tag(a);
    out = q_and(std::move(out), q_iff_vars(QVar{s, tag}, QVar{t, tag}));
  }
  return out;
}

QbfPtr TranslationSession::eq_agent(int agent_idx, LevelId s, LevelId t) {
  QbfPtr out = q_const(true);
  int count = static_cast<int>(ctx_.members(agent_idx).size());
  for (int mi = 0; mi < count; ++mi) {
    uint32_t tag = space_.member_tag(agent_idx, mi);
    out = q_and(std::move(out), q_iff_vars(QVar{s, tag}, QVar{t, tag}));
  }
  return out;
}

QbfPtr TranslationSession::eq_expand(int agent_idx, const FormulaPtr& a, LevelId s, LevelId t) {
  int bit = ctx_.bit_of_member(agent_idx, a);
  if (bit < 0) return q_const(false);  // the required belief variable does not exist
  int target = bit - ctx_.member_base_bit(agent_idx);
  QbfPtr out = q_var(QVar{t, space_.member_tag(agent_idx, target)});
  int count = static_cast<int>(ctx_.members(agent_idx).size());
  for (int mi = 0; mi < count; ++mi) {
    if (mi == target) continue;
    uint32_t tag = space_.member_tag(agent_idx, mi);
    out = q_and(std::move(out), q_iff_vars(QVar{s, tag}, QVar{t, tag}));
  }
  return out;
}

QbfPtr TranslationSession::eq_forget(int agent_idx, const FormulaPtr& a, LevelId s, LevelId t) {
  int bit = ctx_.bit_of_member(agent_idx, a);
  int target = bit < 0 ? -1 : bit - ctx_.member_base_bit(agent_idx);
  QbfPtr out = target < 0 ? q_const(true)
                          : q_not(q_var(QVar{t, space_.member_tag(agent_idx, target)}));
  int count = static_cast<int>(ctx_.members(agent_idx).size());
  for (int mi = 0; mi < count; ++mi) {
    if (mi == target) continue;
    uint32_t tag = space_.member_tag(agent_idx, mi);
    out = q_and(std::move(out), q_iff_vars(QVar{s, tag}, QVar{t, tag}));
  }
  return out;
}

QbfPtr TranslationSession::tr_prog(const ProgramPtr& p, LevelId s, LevelId t) {
  switch (p->kind) {
    case PKind::Expand: {
      int ai = require_agent(p->agent);
      QbfPtr out = q_const(true);
      for (int j = 0; j < ctx_.agent_count(); ++j)
        if (j != ai) out = q_and(std::move(out), eq_agent(j, s, t));
      out = q_and(std::move(out), eq_expand(ai, p->arg, s, t));
      return q_and(std::move(out), eq_prop(s, t));
    }
    case PKind::Forget: {
      int ai = require_agent(p->agent);
      QbfPtr out = q_const(true);
      for (int j = 0; j < ctx_.agent_count(); ++j)
        if (j != ai) out = q_and(std::move(out), eq_agent(j, s, t));
      out = q_and(std::move(out), eq_forget(ai, p->arg, s, t));
      return q_and(std::move(out), eq_prop(s, t));
    }
    case PKind::Revise: {
      int ai = require_agent(p->agent);
      QbfPtr out = eq_prop(s, t);
      for (int j = 0; j < ctx_.agent_count(); ++j)
        if (j != ai) out = q_and(std::move(out), eq_agent(j, s, t));
      return q_and(std::move(out), imcs(ai, s, t, p->arg));
    }
    case PKind::Seq: {
      LevelId mid = fresh_level();
      QbfPtr first = tr_prog(p->left, s, mid);
      QbfPtr second = tr_prog(p->right, mid, t);
      return q_exists(mid, q_and(std::move(first), std::move(second)));
    }
    case PKind::Choice: return q_or(tr_prog(p->left, s, t), tr_prog(p->right, s, t));
    case PKind::Test: {
      QbfPtr out = q_const(true);
      for (int j = 0; j < ctx_.agent_count(); ++j) out = q_and(std::move(out), eq_agent(j, s, t));
      out = q_and(std::move(out), eq_prop(s, t));
      return q_and(std::move(out), tr(p->arg, s));
    }
  }
  return q_const(false);
}

// ---------------------------------------------------------------------------
// Revision abbreviations.

QbfPtr TranslationSession::incl(int agent_idx, LevelId s, LevelId t) {
  QbfPtr out = q_const(true);
  int count = static_cast<int>(ctx_.members(agent_idx).size());
  for (int mi = 0; mi < count; ++mi) {
    uint32_t tag = space_.member_tag(agent_idx, mi);
    out = q_and(std::move(out), q_implies(q_var(QVar{s, tag}), q_var(QVar{t, tag})));
  }
  return out;
}

QbfPtr TranslationSession::strict_incl(int agent_idx, LevelId s, LevelId t) {
  return q_and(incl(agent_idx, s, t), q_not(eq_agent(agent_idx, s, t)));
}

QbfPtr TranslationSession::incl_minus(int agent_idx, const FormulaPtr& a, LevelId s, LevelId t) {
  int bit = ctx_.bit_of_member(agent_idx, a);
  int skip = bit < 0 ? -1 : bit - ctx_.member_base_bit(agent_idx);
  QbfPtr out = q_const(true);
  int count = static_cast<int>(ctx_.members(agent_idx).size());
  for (int mi = 0; mi < count; ++mi) {
    if (mi == skip) continue;
    uint32_t tag = space_.member_tag(agent_idx, mi);
    out = q_and(std::move(out), q_implies(q_var(QVar{s, tag}), q_var(QVar{t, tag})));
  }
  return out;
}

QbfPtr TranslationSession::base_consistent(int agent_idx, LevelId s) {
  // Existence of an epistemic alternative: the unfolding of "not believing
  // the contradiction".
  LevelId w = fresh_level();
  return q_exists(w, epistemic_link(agent_idx, s, w));
}

QbfPtr TranslationSession::mcs(int agent_idx, LevelId m, LevelId s, const FormulaPtr& a) {
  QbfPtr holds_a = belief_var(agent_idx, a, m);
  QbfPtr bounded = incl_minus(agent_idx, a, m, s);
  QbfPtr consistent = base_consistent(agent_idx, m);
  LevelId m2 = fresh_level();
  QbfPtr maximal = q_forall(
      m2, q_implies(q_and(strict_incl(agent_idx, m, m2), incl_minus(agent_idx, a, m2, s)),
                    q_not(base_consistent(agent_idx, m2))));
  return q_and(q_and(std::move(holds_a), std::move(bounded)),
               q_and(std::move(consistent), std::move(maximal)));
}

QbfPtr TranslationSession::imcs(int agent_idx, LevelId s, LevelId t, const FormulaPtr& a) {
  LevelId m = fresh_level();
  QbfPtr lower = q_forall(m, q_implies(mcs(agent_idx, m, s, a), incl(agent_idx, t, m)));
  QbfPtr upper = q_const(true);
  int count = static_cast<int>(ctx_.members(agent_idx).size());
  for (int mi = 0; mi < count; ++mi) {
    LevelId mb = fresh_level();
    uint32_t tag = space_.member_tag(agent_idx, mi);
    QbfPtr in_every_mcs =
        q_forall(mb, q_implies(mcs(agent_idx, mb, s, a), q_var(QVar{mb, tag})));
    upper = q_and(std::move(upper), q_implies(std::move(in_every_mcs), q_var(QVar{t, tag})));
  }
  return q_and(std::move(lower), std::move(upper));
}

QbfPtr TranslationSession::desc(const State& s0, LevelId s) {
  if (!ctx_.contains(s0)) throw ModelError("state lies outside S_Gamma for this vocabulary");
  QbfPtr out = q_const(true);
  const FormulaSet empty;
  for (int ai = 0; ai < ctx_.agent_count(); ++ai) {
    auto it = s0.bases.find(ctx_.agents()[ai]);
    const FormulaSet& base = it == s0.bases.end() ? empty : it->second;
    const auto& members = ctx_.members(ai);
    for (int mi = 0; mi < static_cast<int>(members.size()); ++mi) {
      QbfPtr v = q_var(QVar{s, space_.member_tag(ai, mi)});
      bool present = base.count(members[mi]) > 0;
      out = q_and(std::move(out), present ? v : q_not(std::move(v)));
    }
  }
  for (int a = 0; a < ctx_.atom_count(); ++a) {
    QbfPtr v = q_var(QVar{s, space_.atom_tag(a)});
    bool present = s0.valuation.count(ctx_.atoms()[a]) > 0;
    out = q_and(std::move(out), present ? v : q_not(std::move(v)));
  }
  return out;
}

QbfPtr reduce(const Context& ctx, const State& s0, const FormulaPtr& f, TranslateOptions opt) {
  TranslationSession session(ctx, opt);
  LevelId root = session.root_level();
  QbfPtr body = q_and(session.desc(s0, root), session.tr(expand_derived(f), root));
  return q_exists(root, std::move(body));
}

QbfAssignment state_assignment(const Context& ctx, const VarSpace& space, const State& s0,
                               LevelId level) {
  QbfAssignment env;
  for (int a = 0; a < ctx.atom_count(); ++a)
    env.set(QVar{level, space.atom_tag(a)}, s0.valuation.count(ctx.atoms()[a]) > 0, space);
  for (int ai = 0; ai < ctx.agent_count(); ++ai) {
    const FormulaSet empty;
    auto it = s0.bases.find(ctx.agents()[ai]);
    const FormulaSet& base = it == s0.bases.end() ? empty : it->second;
    const auto& members = ctx.members(ai);
    for (int mi = 0; mi < static_cast<int>(members.size()); ++mi)
      env.set(QVar{level, space.member_tag(ai, mi)}, base.count(members[mi]) > 0, space);
  }
  return env;
}

}  // namespace lca
