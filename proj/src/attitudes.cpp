#include "lca/attitudes.hpp"

namespace lca {

namespace {

FormulaPtr motivated(bool realistic, const AgentId& i, const FormulaPtr& f) {
  if (realistic) return mk_and(mk_rattract(i, f), mk_not(mk_rrepulse(i, f)));
  return mk_and(mk_attract(i, f), mk_not(mk_repulse(i, f)));
}

FormulaPtr demotivated(bool realistic, const AgentId& i, const FormulaPtr& f) {
  if (realistic) return mk_and(mk_not(mk_rattract(i, f)), mk_rrepulse(i, f));
  return mk_and(mk_not(mk_attract(i, f)), mk_repulse(i, f));
}

FormulaPtr indifferent(bool realistic, const AgentId& i, const FormulaPtr& f) {
  if (realistic) return mk_and(mk_not(mk_rattract(i, f)), mk_not(mk_rrepulse(i, f)));
  return mk_and(mk_not(mk_attract(i, f)), mk_not(mk_repulse(i, f)));
}

FormulaPtr ambivalent(bool realistic, const AgentId& i, const FormulaPtr& f) {
  if (realistic) return mk_and(mk_rattract(i, f), mk_rrepulse(i, f));
  return mk_and(mk_attract(i, f), mk_repulse(i, f));
}

// dispreferred < preferred: (Mot preferred & ~Mot dispreferred) |
//                           (Demot dispreferred & ~Demot preferred)
FormulaPtr preference(bool realistic, const AgentId& i, const FormulaPtr& dispreferred,
                      const FormulaPtr& preferred) {
  return mk_or(mk_and(motivated(realistic, i, preferred),
                      mk_not(motivated(realistic, i, dispreferred))),
               mk_and(demotivated(realistic, i, dispreferred),
                      mk_not(demotivated(realistic, i, preferred))));
}

ProgramPtr expand_program(const ProgramPtr& p) {
  switch (p->kind) {
    case PKind::Expand:
    case PKind::Forget:
    case PKind::Revise: return p;  // L0 arguments contain no derived nodes
    case PKind::Seq: return mk_seq(expand_program(p->left), expand_program(p->right));
    case PKind::Choice: return mk_choice(expand_program(p->left), expand_program(p->right));
    case PKind::Test: return mk_test(expand_derived(p->arg));
  }
  return p;
}

}  // namespace

FormulaPtr expand_derived(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bottom: return f;
    case FKind::Not: return mk_not(expand_derived(f->lhs));
    case FKind::And: return mk_and(expand_derived(f->lhs), expand_derived(f->rhs));
    case FKind::Or: return mk_or(expand_derived(f->lhs), expand_derived(f->rhs));
    case FKind::Implies: return mk_implies(expand_derived(f->lhs), expand_derived(f->rhs));
    case FKind::Iff: return mk_iff(expand_derived(f->lhs), expand_derived(f->rhs));
    case FKind::ExplicitBelief: return f;  // L0 argument, derived-free
    case FKind::ImplicitBelief: return mk_implicit(f->agent, expand_derived(f->lhs));
    case FKind::Attract: return mk_attract(f->agent, expand_derived(f->lhs));
    case FKind::Repulse: return mk_repulse(f->agent, expand_derived(f->lhs));
    case FKind::RAttract: return mk_rattract(f->agent, expand_derived(f->lhs));
    case FKind::RRepulse: return mk_rrepulse(f->agent, expand_derived(f->lhs));
    case FKind::Box: return mk_box(expand_program(f->prog), expand_derived(f->lhs));
    case FKind::Diamond: return mk_diamond(expand_program(f->prog), expand_derived(f->lhs));
    case FKind::Derived: break;
  }
  FormulaPtr a = expand_derived(f->lhs);
  switch (f->dkind) {
    case DKind::Mot: return motivated(false, f->agent, a);
    case DKind::Demot: return demotivated(false, f->agent, a);
    case DKind::Ind: return indifferent(false, f->agent, a);
    case DKind::Amb: return ambivalent(false, f->agent, a);
    case DKind::RMot: return motivated(true, f->agent, a);
    case DKind::RDemot: return demotivated(true, f->agent, a);
    case DKind::RInd: return indifferent(true, f->agent, a);
    case DKind::RAmb: return ambivalent(true, f->agent, a);
    case DKind::Pref: return preference(false, f->agent, a, expand_derived(f->rhs));
    case DKind::RPref: return preference(true, f->agent, a, expand_derived(f->rhs));
  }
  return f;
}

}  // namespace lca
