#include "lca/syntax.hpp"

#include <functional>

namespace lca {

namespace {

size_t combine(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

size_t hash_str(const std::string& s) { return std::hash<std::string>{}(s); }

FormulaPtr make(Formula f) {
  size_t h = static_cast<size_t>(f.kind);
  h = combine(h, hash_str(f.atom.text));
  h = combine(h, static_cast<size_t>(f.atom.kind));
  h = combine(h, hash_str(f.agent.name));
  h = combine(h, static_cast<size_t>(f.dkind));
  if (f.lhs) h = combine(h, f.lhs->hash);
  if (f.rhs) h = combine(h, f.rhs->hash);
  if (f.prog) h = combine(h, f.prog->hash);
  f.hash = h;
  return std::make_shared<const Formula>(std::move(f));
}

ProgramPtr make(Program p) {
  size_t h = static_cast<size_t>(p.kind) + 0x51ed270b;
  h = combine(h, hash_str(p.agent.name));
  if (p.arg) h = combine(h, p.arg->hash);
  if (p.left) h = combine(h, p.left->hash);
  if (p.right) h = combine(h, p.right->hash);
  p.hash = h;
  return std::make_shared<const Program>(std::move(p));
}

void require_l0(const FormulaPtr& f, const char* what) {
  if (!is_l0(f)) throw std::invalid_argument(std::string(what) + " requires an L0 formula");
}

}  // namespace

std::string Atom::str() const {
  switch (kind) {
    case Kind::Plain: return text;
    case Kind::Reward: return "rew(" + text + ")";
    case Kind::Punish: return "pun(" + text + ")";
  }
  return text;
}

Atom plain_atom(std::string name) { return Atom{Atom::Kind::Plain, std::move(name)}; }
Atom reward_atom(const AgentId& agent) { return Atom{Atom::Kind::Reward, agent.name}; }
Atom punish_atom(const AgentId& agent) { return Atom{Atom::Kind::Punish, agent.name}; }

FormulaPtr mk_atom(Atom a) {
  Formula f;
  f.kind = FKind::Atom;
  f.atom = std::move(a);
  return make(std::move(f));
}

FormulaPtr mk_top() {
  Formula f;
  f.kind = FKind::Top;
  return make(std::move(f));
}

FormulaPtr mk_bottom() {
  Formula f;
  f.kind = FKind::Bottom;
  return make(std::move(f));
}

FormulaPtr mk_not(FormulaPtr x) {
  Formula f;
  f.kind = FKind::Not;
  f.lhs = std::move(x);
  return make(std::move(f));
}

static FormulaPtr mk_bin(FKind k, FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = k;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return make(std::move(f));
}

FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) { return mk_bin(FKind::And, std::move(a), std::move(b)); }
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) { return mk_bin(FKind::Or, std::move(a), std::move(b)); }
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  return mk_bin(FKind::Implies, std::move(a), std::move(b));
}
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) { return mk_bin(FKind::Iff, std::move(a), std::move(b)); }

static FormulaPtr mk_modal(FKind k, AgentId i, FormulaPtr x) {
  Formula f;
  f.kind = k;
  f.agent = std::move(i);
  f.lhs = std::move(x);
  return make(std::move(f));
}

FormulaPtr mk_explicit(AgentId i, FormulaPtr f) {
  require_l0(f, "explicit belief");
  return mk_modal(FKind::ExplicitBelief, std::move(i), std::move(f));
}
FormulaPtr mk_implicit(AgentId i, FormulaPtr f) {
  return mk_modal(FKind::ImplicitBelief, std::move(i), std::move(f));
}
FormulaPtr mk_attract(AgentId i, FormulaPtr f) {
  return mk_modal(FKind::Attract, std::move(i), std::move(f));
}
FormulaPtr mk_repulse(AgentId i, FormulaPtr f) {
  return mk_modal(FKind::Repulse, std::move(i), std::move(f));
}
FormulaPtr mk_rattract(AgentId i, FormulaPtr f) {
  return mk_modal(FKind::RAttract, std::move(i), std::move(f));
}
FormulaPtr mk_rrepulse(AgentId i, FormulaPtr f) {
  return mk_modal(FKind::RRepulse, std::move(i), std::move(f));
}

FormulaPtr mk_box(ProgramPtr p, FormulaPtr x) {
  Formula f;
  f.kind = FKind::Box;
  f.prog = std::move(p);
  f.lhs = std::move(x);
  return make(std::move(f));
}

FormulaPtr mk_diamond(ProgramPtr p, FormulaPtr x) {
  Formula f;
  f.kind = FKind::Diamond;
  f.prog = std::move(p);
  f.lhs = std::move(x);
  return make(std::move(f));
}

FormulaPtr mk_derived1(DKind k, AgentId i, FormulaPtr x) {
  Formula f;
  f.kind = FKind::Derived;
  f.dkind = k;
  f.agent = std::move(i);
  f.lhs = std::move(x);
  return make(std::move(f));
}

FormulaPtr mk_pref(DKind k, AgentId i, FormulaPtr dispreferred, FormulaPtr preferred) {
  Formula f;
  f.kind = FKind::Derived;
  f.dkind = k;
  f.agent = std::move(i);
  f.lhs = std::move(dispreferred);
  f.rhs = std::move(preferred);
  return make(std::move(f));
}

static ProgramPtr mk_atomic_prog(PKind k, AgentId i, FormulaPtr a) {
  require_l0(a, "atomic program");
  Program p;
  p.kind = k;
  p.agent = std::move(i);
  p.arg = std::move(a);
  return make(std::move(p));
}

ProgramPtr mk_expand(AgentId i, FormulaPtr a) {
  return mk_atomic_prog(PKind::Expand, std::move(i), std::move(a));
}
ProgramPtr mk_forget(AgentId i, FormulaPtr a) {
  return mk_atomic_prog(PKind::Forget, std::move(i), std::move(a));
}
ProgramPtr mk_revise(AgentId i, FormulaPtr a) {
  return mk_atomic_prog(PKind::Revise, std::move(i), std::move(a));
}

ProgramPtr mk_seq(ProgramPtr a, ProgramPtr b) {
  Program p;
  p.kind = PKind::Seq;
  p.left = std::move(a);
  p.right = std::move(b);
  return make(std::move(p));
}

ProgramPtr mk_choice(ProgramPtr a, ProgramPtr b) {
  Program p;
  p.kind = PKind::Choice;
  p.left = std::move(a);
  p.right = std::move(b);
  return make(std::move(p));
}

ProgramPtr mk_test(FormulaPtr f) {
  Program p;
  p.kind = PKind::Test;
  p.arg = std::move(f);
  return make(std::move(p));
}

static int cmp(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }

static int atom_compare(const Atom& a, const Atom& b) {
  if (int c = cmp(static_cast<int>(a.kind), static_cast<int>(b.kind))) return c;
  return a.text.compare(b.text);
}

int formula_compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (!a || !b) return a ? 1 : -1;
  if (int c = cmp(static_cast<int>(a->kind), static_cast<int>(b->kind))) return c;
  switch (a->kind) {
    case FKind::Atom: return atom_compare(a->atom, b->atom);
    case FKind::Top:
    case FKind::Bottom: return 0;
    default: break;
  }
  if (int c = a->agent.name.compare(b->agent.name)) return c;
  if (a->kind == FKind::Derived) {
    if (int c = cmp(static_cast<int>(a->dkind), static_cast<int>(b->dkind))) return c;
  }
  if (a->kind == FKind::Box || a->kind == FKind::Diamond) {
    if (int c = program_compare(a->prog, b->prog)) return c;
  }
  if (int c = formula_compare(a->lhs, b->lhs)) return c;
  return formula_compare(a->rhs, b->rhs);
}

int program_compare(const ProgramPtr& a, const ProgramPtr& b) {
  if (a.get() == b.get()) return 0;
  if (!a || !b) return a ? 1 : -1;
  if (int c = cmp(static_cast<int>(a->kind), static_cast<int>(b->kind))) return c;
  if (int c = a->agent.name.compare(b->agent.name)) return c;
  if (int c = formula_compare(a->arg, b->arg)) return c;
  if (int c = program_compare(a->left, b->left)) return c;
  return program_compare(a->right, b->right);
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->hash != b->hash) return false;
  return formula_compare(a, b) == 0;
}

bool program_equal(const ProgramPtr& a, const ProgramPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->hash != b->hash) return false;
  return program_compare(a, b) == 0;
}

bool is_l0(const FormulaPtr& f) {
  if (!f) return false;
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bottom: return true;
    case FKind::Not: return is_l0(f->lhs);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff: return is_l0(f->lhs) && is_l0(f->rhs);
    case FKind::ExplicitBelief: return is_l0(f->lhs);
    default: return false;
  }
}

// ---------------------------------------------------------------------------
// Printing. Precedence: prefix operators (~, [pi], <pi>) bind tightest, then
// &, |, -> (right-associative), <->. Programs: ";" binds tighter than "U".

namespace {

constexpr int kPrecIff = 1;
constexpr int kPrecImplies = 2;
constexpr int kPrecOr = 3;
constexpr int kPrecAnd = 4;
constexpr int kPrecPrefix = 5;

int formula_prec(const Formula& f) {
  switch (f.kind) {
    case FKind::Iff: return kPrecIff;
    case FKind::Implies: return kPrecImplies;
    case FKind::Or: return kPrecOr;
    case FKind::And: return kPrecAnd;
    default: return kPrecPrefix;
  }
}

const char* derived_name(DKind k) {
  switch (k) {
    case DKind::Mot: return "Mot";
    case DKind::Demot: return "Demot";
    case DKind::Ind: return "Ind";
    case DKind::Amb: return "Amb";
    case DKind::RMot: return "RMot";
    case DKind::RDemot: return "RDemot";
    case DKind::RInd: return "RInd";
    case DKind::RAmb: return "RAmb";
    case DKind::Pref: return "Pref";
    case DKind::RPref: return "RPref";
  }
  return "?";
}

struct Printer {
  PrintStyle style;
  std::string out;

  void formula(const FormulaPtr& f, int parent_prec) {
    int prec = formula_prec(*f);
    bool parens = style == PrintStyle::FullParens ? formula_needs_any_parens(*f)
                                                  : prec < parent_prec;
    if (parens) out += '(';
    switch (f->kind) {
      case FKind::Atom: out += f->atom.str(); break;
      case FKind::Top: out += "true"; break;
      case FKind::Bottom: out += "false"; break;
      case FKind::Not:
        out += '~';
        formula(f->lhs, kPrecPrefix);
        break;
      case FKind::And: binop(f, " & ", kPrecAnd, kPrecAnd + 1); break;
      case FKind::Or: binop(f, " | ", kPrecOr, kPrecOr + 1); break;
      case FKind::Implies: binop(f, " -> ", kPrecImplies + 1, kPrecImplies); break;
      case FKind::Iff: binop(f, " <-> ", kPrecIff + 1, kPrecIff); break;
      case FKind::ExplicitBelief: modal("B", f); break;
      case FKind::ImplicitBelief: modal("K", f); break;
      case FKind::Attract: modal("Attr", f); break;
      case FKind::Repulse: modal("Rep", f); break;
      case FKind::RAttract: modal("RAttr", f); break;
      case FKind::RRepulse: modal("RRep", f); break;
      case FKind::Box:
        out += '[';
        program(f->prog, 0);
        out += "] ";
        formula(f->lhs, kPrecPrefix);
        break;
      case FKind::Diamond:
        out += '<';
        program(f->prog, 0);
        out += "> ";
        formula(f->lhs, kPrecPrefix);
        break;
      case FKind::Derived:
        out += derived_name(f->dkind);
        out += '(';
        out += f->agent.name;
        out += ", ";
        formula(f->lhs, 0);
        if (f->rhs) {
          out += ", ";
          formula(f->rhs, 0);
        }
        out += ')';
        break;
    }
    if (parens) out += ')';
  }

  static bool formula_needs_any_parens(const Formula& f) {
    switch (f.kind) {
      case FKind::And:
      case FKind::Or:
      case FKind::Implies:
      case FKind::Iff:
      case FKind::Not:
      case FKind::Box:
      case FKind::Diamond: return true;
      default: return false;
    }
  }

  void binop(const FormulaPtr& f, const char* op, int lp, int rp) {
    formula(f->lhs, lp);
    out += op;
    formula(f->rhs, rp);
  }

  void modal(const char* name, const FormulaPtr& f) {
    out += name;
    out += '(';
    out += f->agent.name;
    out += ", ";
    formula(f->lhs, 0);
    out += ')';
  }

  // Program precedence: atomic/test = 3, ";" = 2 (left-assoc), "U" = 1.
  void program(const ProgramPtr& p, int parent_prec) {
    int prec = p->kind == PKind::Choice ? 1 : (p->kind == PKind::Seq ? 2 : 3);
    bool parens = style == PrintStyle::FullParens
                      ? (p->kind == PKind::Seq || p->kind == PKind::Choice)
                      : prec < parent_prec;
    if (parens) out += '(';
    switch (p->kind) {
      case PKind::Expand: atomic('+', p); break;
      case PKind::Forget: atomic('-', p); break;
      case PKind::Revise: atomic('*', p); break;
      case PKind::Seq:
        program(p->left, 2);
        out += " ; ";
        program(p->right, 3);
        break;
      case PKind::Choice:
        program(p->left, 1);
        out += " U ";
        program(p->right, 2);
        break;
      case PKind::Test:
        out += '?';
        formula(p->arg, kPrecPrefix);
        break;
    }
    if (parens) out += ')';
  }

  void atomic(char op, const ProgramPtr& p) {
    out += op;
    out += '(';
    out += p->agent.name;
    out += ", ";
    formula(p->arg, 0);
    out += ')';
  }
};

}  // namespace

std::string print_formula(const FormulaPtr& f, PrintStyle style) {
  Printer pr{style, {}};
  pr.formula(f, 0);
  return pr.out;
}

std::string print_program(const ProgramPtr& p, PrintStyle style) {
  Printer pr{style, {}};
  pr.program(p, 0);
  return pr.out;
}

}  // namespace lca
