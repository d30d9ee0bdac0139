// Recursive-descent parser for formulas and programs. Whitespace-insensitive;
// errors carry line/column positions.

#include <cctype>
#include <map>
#include <string>

#include "lca/syntax.hpp"

namespace lca {

namespace {

enum class Tok : uint8_t {
  Ident,
  LParen,
  RParen,
  Comma,
  Tilde,
  Amp,
  Pipe,
  Arrow,
  IffOp,
  LBrack,
  RBrack,
  LAngle,
  RAngle,
  Plus,
  Minus,
  Star,
  Semi,
  Question,
  End,
};

struct Token {
  Tok kind;
  std::string text;  // Ident payload
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_ws();
    SourcePos pos{line_, col_};
    if (i_ >= text_.size()) return {Tok::End, "", pos};
    char c = text_[i_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (i_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) {
        id += text_[i_];
        advance();
      }
      return {Tok::Ident, std::move(id), pos};
    }
    switch (c) {
      case '(': advance(); return {Tok::LParen, "", pos};
      case ')': advance(); return {Tok::RParen, "", pos};
      case ',': advance(); return {Tok::Comma, "", pos};
      case '~': advance(); return {Tok::Tilde, "", pos};
      case '&': advance(); return {Tok::Amp, "", pos};
      case '|': advance(); return {Tok::Pipe, "", pos};
      case '[': advance(); return {Tok::LBrack, "", pos};
      case ']': advance(); return {Tok::RBrack, "", pos};
      case '>': advance(); return {Tok::RAngle, "", pos};
      case '+': advance(); return {Tok::Plus, "", pos};
      case '*': advance(); return {Tok::Star, "", pos};
      case ';': advance(); return {Tok::Semi, "", pos};
      case '?': advance(); return {Tok::Question, "", pos};
      case '<':
        // "<->" is the biconditional; a lone '<' opens a diamond.
        if (i_ + 2 < text_.size() && text_[i_ + 1] == '-' && text_[i_ + 2] == '>') {
          advance();
          advance();
          advance();
          return {Tok::IffOp, "", pos};
        }
        advance();
        return {Tok::LAngle, "", pos};
      case '-':
        if (i_ + 1 < text_.size() && text_[i_ + 1] == '>') {
          advance();
          advance();
          return {Tok::Arrow, "", pos};
        }
        advance();
        return {Tok::Minus, "", pos};
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
  }

 private:
  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_ws() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) advance();
  }

  const std::string& text_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Prefix operators with one agent argument and one formula argument.
const std::map<std::string, FKind, std::less<>> kModalOps = {
    {"B", FKind::ExplicitBelief}, {"K", FKind::ImplicitBelief}, {"Attr", FKind::Attract},
    {"Rep", FKind::Repulse},      {"RAttr", FKind::RAttract},   {"RRep", FKind::RRepulse},
};

const std::map<std::string, DKind, std::less<>> kDerivedOps = {
    {"Mot", DKind::Mot},   {"Demot", DKind::Demot},   {"Ind", DKind::Ind},
    {"Amb", DKind::Amb},   {"RMot", DKind::RMot},     {"RDemot", DKind::RDemot},
    {"RInd", DKind::RInd}, {"RAmb", DKind::RAmb},     {"Pref", DKind::Pref},
    {"RPref", DKind::RPref},
};

bool is_reserved(const std::string& id) {
  return id == "true" || id == "false" || id == "rew" || id == "pun" || id == "U" ||
         kModalOps.count(id) || kDerivedOps.count(id);
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { cur_ = lex_.next(); }

  FormulaPtr parse_formula_all() {
    FormulaPtr f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Atom parse_atom_all() {
    Token t = cur_;
    if (t.kind != Tok::Ident) throw ParseError("expected an atom", t.pos);
    if (t.text == "rew" || t.text == "pun") {
      bool rew = t.text == "rew";
      bump();
      expect(Tok::LParen, "'('");
      AgentId agent = agent_name();
      expect(Tok::RParen, "')'");
      expect(Tok::End, "end of input");
      return rew ? reward_atom(agent) : punish_atom(agent);
    }
    if (is_reserved(t.text)) throw ParseError("'" + t.text + "' is reserved", t.pos);
    bump();
    expect(Tok::End, "end of input");
    return plain_atom(t.text);
  }

 private:
  Token cur_;
  Lexer lex_;

  void bump() { cur_ = lex_.next(); }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) throw ParseError(std::string("expected ") + what, cur_.pos);
    if (k != Tok::End) bump();
  }

  AgentId agent_name() {
    if (cur_.kind != Tok::Ident) throw ParseError("expected an agent name", cur_.pos);
    if (is_reserved(cur_.text)) throw ParseError("'" + cur_.text + "' is reserved", cur_.pos);
    AgentId a{cur_.text};
    bump();
    return a;
  }

  // formula := implies ("<->" formula)?     (right-associative)
  FormulaPtr formula() {
    FormulaPtr l = implies_expr();
    if (cur_.kind == Tok::IffOp) {
      bump();
      return mk_iff(std::move(l), formula());
    }
    return l;
  }

  FormulaPtr implies_expr() {
    FormulaPtr l = or_expr();
    if (cur_.kind == Tok::Arrow) {
      bump();
      return mk_implies(std::move(l), implies_expr());
    }
    return l;
  }

  FormulaPtr or_expr() {
    FormulaPtr l = and_expr();
    while (cur_.kind == Tok::Pipe) {
      bump();
      l = mk_or(std::move(l), and_expr());
    }
    return l;
  }

  FormulaPtr and_expr() {
    FormulaPtr l = unary();
    while (cur_.kind == Tok::Amp) {
      bump();
      l = mk_and(std::move(l), unary());
    }
    return l;
  }

  FormulaPtr unary() {
    switch (cur_.kind) {
      case Tok::Tilde: {
        bump();
        return mk_not(unary());
      }
      case Tok::LBrack: {
        bump();
        ProgramPtr p = program();
        expect(Tok::RBrack, "']'");
        return mk_box(std::move(p), unary());
      }
      case Tok::LAngle: {
        bump();
        ProgramPtr p = program();
        expect(Tok::RAngle, "'>'");
        return mk_diamond(std::move(p), unary());
      }
      default: return primary();
    }
  }

  FormulaPtr primary() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::LParen: {
        bump();
        FormulaPtr f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: return ident_form(t);
      default: throw ParseError("expected a formula", t.pos);
    }
  }

  FormulaPtr ident_form(const Token& t) {
    if (t.text == "true") {
      bump();
      return mk_top();
    }
    if (t.text == "false") {
      bump();
      return mk_bottom();
    }
    if (t.text == "rew" || t.text == "pun") {
      bool rew = t.text == "rew";
      bump();
      expect(Tok::LParen, "'('");
      AgentId agent = agent_name();
      expect(Tok::RParen, "')'");
      return mk_atom(rew ? reward_atom(agent) : punish_atom(agent));
    }
    if (auto it = kModalOps.find(t.text); it != kModalOps.end()) {
      bump();
      expect(Tok::LParen, "'('");
      AgentId agent = agent_name();
      expect(Tok::Comma, "','");
      SourcePos arg_pos = cur_.pos;
      FormulaPtr arg = formula();
      expect(Tok::RParen, "')'");
      if (it->second == FKind::ExplicitBelief && !is_l0(arg))
        throw ParseError("explicit-belief argument must be in the base language L0", arg_pos);
      switch (it->second) {
        case FKind::ExplicitBelief: return mk_explicit(agent, std::move(arg));
        case FKind::ImplicitBelief: return mk_implicit(agent, std::move(arg));
        case FKind::Attract: return mk_attract(agent, std::move(arg));
        case FKind::Repulse: return mk_repulse(agent, std::move(arg));
        case FKind::RAttract: return mk_rattract(agent, std::move(arg));
        default: return mk_rrepulse(agent, std::move(arg));
      }
    }
    if (auto it = kDerivedOps.find(t.text); it != kDerivedOps.end()) {
      bump();
      expect(Tok::LParen, "'('");
      AgentId agent = agent_name();
      expect(Tok::Comma, "','");
      FormulaPtr a = formula();
      if (it->second == DKind::Pref || it->second == DKind::RPref) {
        expect(Tok::Comma, "','");
        FormulaPtr b = formula();
        expect(Tok::RParen, "')'");
        return mk_pref(it->second, agent, std::move(a), std::move(b));
      }
      expect(Tok::RParen, "')'");
      return mk_derived1(it->second, agent, std::move(a));
    }
    if (t.text == "U") throw ParseError("'U' is reserved", t.pos);
    bump();
    return mk_atom(plain_atom(t.text));
  }

  // program := seq ("U" seq)*   ;   seq := prim (";" prim)*
  ProgramPtr program() {
    ProgramPtr l = seq_prog();
    while (cur_.kind == Tok::Ident && cur_.text == "U") {
      bump();
      l = mk_choice(std::move(l), seq_prog());
    }
    return l;
  }

  ProgramPtr seq_prog() {
    ProgramPtr l = prim_prog();
    while (cur_.kind == Tok::Semi) {
      bump();
      l = mk_seq(std::move(l), prim_prog());
    }
    return l;
  }

  ProgramPtr prim_prog() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::Plus: return atomic_prog(PKind::Expand);
      case Tok::Minus: return atomic_prog(PKind::Forget);
      case Tok::Star: return atomic_prog(PKind::Revise);
      case Tok::Question: {
        bump();
        return mk_test(formula());
      }
      case Tok::LParen: {
        bump();
        ProgramPtr p = program();
        expect(Tok::RParen, "')'");
        return p;
      }
      default: throw ParseError("expected a program", t.pos);
    }
  }

  ProgramPtr atomic_prog(PKind kind) {
    bump();
    expect(Tok::LParen, "'('");
    AgentId agent = agent_name();
    expect(Tok::Comma, "','");
    SourcePos arg_pos = cur_.pos;
    FormulaPtr arg = formula();
    expect(Tok::RParen, "')'");
    if (!is_l0(arg))
      throw ParseError("program argument must be in the base language L0", arg_pos);
    switch (kind) {
      case PKind::Expand: return mk_expand(agent, std::move(arg));
      case PKind::Forget: return mk_forget(agent, std::move(arg));
      default: return mk_revise(agent, std::move(arg));
    }
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(text).parse_formula_all(); }

Atom parse_atom(const std::string& text) { return Parser(text).parse_atom_all(); }

}  // namespace lca
