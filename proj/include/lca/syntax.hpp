// Syntax of the cognitive-attitude language: agents, atoms (including the
// per-agent reward/punishment atoms), formulas, belief-change programs, the
// base fragment L0, plus a parser and a printer.

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lca {

struct AgentId {
  std::string name;
  auto operator<=>(const AgentId&) const = default;
};

struct Atom {
  enum class Kind : uint8_t { Plain, Reward, Punish };
  Kind kind = Kind::Plain;
  std::string text;  // proposition name, or the agent name for Reward/Punish

  auto operator<=>(const Atom&) const = default;
  std::string str() const;
};

Atom plain_atom(std::string name);
Atom reward_atom(const AgentId& agent);
Atom punish_atom(const AgentId& agent);

class Formula;
class Program;
using FormulaPtr = std::shared_ptr<const Formula>;
using ProgramPtr = std::shared_ptr<const Program>;

enum class FKind : uint8_t {
  Atom,
  Top,
  Bottom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  ExplicitBelief,
  ImplicitBelief,
  Attract,
  Repulse,
  RAttract,
  RRepulse,
  Box,
  Diamond,
  Derived,
};

// Sugar operators, eliminated by expand_derived() before any semantics.
enum class DKind : uint8_t { Mot, Demot, Ind, Amb, RMot, RDemot, RInd, RAmb, Pref, RPref };

class Formula {
 public:
  FKind kind = FKind::Top;
  Atom atom;       // Atom
  AgentId agent;   // belief / attitude / derived operators
  DKind dkind{};   // Derived
  FormulaPtr lhs;  // unary operand; left operand; Pref's dispreferred side
  FormulaPtr rhs;  // right operand; Pref's preferred side
  ProgramPtr prog;  // Box / Diamond
  size_t hash = 0;
};

enum class PKind : uint8_t { Expand, Forget, Revise, Seq, Choice, Test };

class Program {
 public:
  PKind kind = PKind::Test;
  AgentId agent;    // Expand / Forget / Revise
  FormulaPtr arg;   // Expand / Forget / Revise (L0) and Test (any formula)
  ProgramPtr left;  // Seq / Choice
  ProgramPtr right;
  size_t hash = 0;
};

// Constructors. Explicit-belief and atomic-program arguments are checked to be
// in L0; violations throw std::invalid_argument.
FormulaPtr mk_atom(Atom a);
FormulaPtr mk_top();
FormulaPtr mk_bottom();
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_explicit(AgentId i, FormulaPtr f);
FormulaPtr mk_implicit(AgentId i, FormulaPtr f);
FormulaPtr mk_attract(AgentId i, FormulaPtr f);
FormulaPtr mk_repulse(AgentId i, FormulaPtr f);
FormulaPtr mk_rattract(AgentId i, FormulaPtr f);
FormulaPtr mk_rrepulse(AgentId i, FormulaPtr f);
FormulaPtr mk_box(ProgramPtr p, FormulaPtr f);
FormulaPtr mk_diamond(ProgramPtr p, FormulaPtr f);
FormulaPtr mk_derived1(DKind k, AgentId i, FormulaPtr f);
FormulaPtr mk_pref(DKind k, AgentId i, FormulaPtr dispreferred, FormulaPtr preferred);

ProgramPtr mk_expand(AgentId i, FormulaPtr a);
ProgramPtr mk_forget(AgentId i, FormulaPtr a);
ProgramPtr mk_revise(AgentId i, FormulaPtr a);
ProgramPtr mk_seq(ProgramPtr a, ProgramPtr b);
ProgramPtr mk_choice(ProgramPtr a, ProgramPtr b);
ProgramPtr mk_test(FormulaPtr f);

// Structural equality / ordering (deep, deterministic).
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);
bool program_equal(const ProgramPtr& a, const ProgramPtr& b);
int formula_compare(const FormulaPtr& a, const FormulaPtr& b);
int program_compare(const ProgramPtr& a, const ProgramPtr& b);

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const {
    return formula_compare(a, b) < 0;
  }
};

// L0: atoms, Boolean connectives and explicit belief only.
bool is_l0(const FormulaPtr& f);

struct SourcePos {
  int line = 1;
  int col = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourcePos pos)
      : std::runtime_error(msg + " at line " + std::to_string(pos.line) + ", column " +
                           std::to_string(pos.col)),
        pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

FormulaPtr parse_formula(const std::string& text);
// Parses a lone atom ("p", "rew(bob)", "pun(1)"); used for valuation entries.
Atom parse_atom(const std::string& text);

enum class PrintStyle { Minimal, FullParens };
std::string print_formula(const FormulaPtr& f, PrintStyle style = PrintStyle::Minimal);
std::string print_program(const ProgramPtr& p, PrintStyle style = PrintStyle::Minimal);

}  // namespace lca
