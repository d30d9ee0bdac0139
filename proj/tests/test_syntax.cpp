#include <doctest.h>

#include "lca/syntax.hpp"
#include "support/generators.hpp"

using namespace lca;

TEST_CASE("parsing the running scenario base") {
  FormulaPtr f = parse_formula("B(bob, td_bob -> ti_bob)");
  REQUIRE(f->kind == FKind::ExplicitBelief);
  CHECK(f->agent.name == "bob");
  CHECK(f->lhs->kind == FKind::Implies);
  CHECK(f->lhs->lhs->atom.text == "td_bob");
}

TEST_CASE("double negation is kept") {
  FormulaPtr f = parse_formula("~~p");
  REQUIRE(f->kind == FKind::Not);
  REQUIRE(f->lhs->kind == FKind::Not);
  CHECK(f->lhs->lhs->kind == FKind::Atom);
}

TEST_CASE("dynamic boxes bind like negation") {
  FormulaPtr f = parse_formula("[+(bob, a) ; ?q] K(bob, a)");
  REQUIRE(f->kind == FKind::Box);
  REQUIRE(f->prog->kind == PKind::Seq);
  CHECK(f->prog->left->kind == PKind::Expand);
  CHECK(f->prog->right->kind == PKind::Test);
  CHECK(f->lhs->kind == FKind::ImplicitBelief);
}

TEST_CASE("precedence and associativity") {
  CHECK(formula_equal(parse_formula("p & q | r"), parse_formula("(p & q) | r")));
  CHECK(formula_equal(parse_formula("p -> q -> r"), parse_formula("p -> (q -> r)")));
  CHECK(formula_equal(parse_formula("~p & q"), parse_formula("(~p) & q")));
  CHECK(formula_equal(parse_formula("p | q <-> r"), parse_formula("(p | q) <-> r")));
}

TEST_CASE("program operators: sequencing binds tighter than choice") {
  FormulaPtr f = parse_formula("[+(i, p) ; -(i, p) U ?q] r");
  REQUIRE(f->prog->kind == PKind::Choice);
  CHECK(f->prog->left->kind == PKind::Seq);
  CHECK(f->prog->right->kind == PKind::Test);
}

TEST_CASE("reward and punishment atoms") {
  FormulaPtr f = parse_formula("rew(1) & pun(bob)");
  CHECK(f->lhs->atom.kind == Atom::Kind::Reward);
  CHECK(f->lhs->atom.text == "1");
  CHECK(f->rhs->atom.kind == Atom::Kind::Punish);
  CHECK(print_formula(f->lhs) == "rew(1)");
}

TEST_CASE("printer round-trips hand-picked forms") {
  const char* cases[] = {
      "B(bob, p)",
      "Mot(1, p & ~q)",
      "RPref(bob, td_bob, ~td_bob)",
      "[+(bob, a) ; ?q] K(bob, a)",
      "<*(i, p & q)> (p | false)",
      "K(a, Attr(b, B(a, p)))",
      "p -> q -> ~r <-> true",
  };
  for (const char* text : cases) {
    FormulaPtr f = parse_formula(text);
    CHECK(formula_equal(parse_formula(print_formula(f)), f));
    CHECK(formula_equal(parse_formula(print_formula(f, PrintStyle::FullParens)), f));
  }
  CHECK(print_formula(parse_formula("B(bob,p)")) == "B(bob, p)");
}

TEST_CASE("L0 recognition") {
  CHECK(is_l0(parse_formula("B(1, p & q)")));
  CHECK_FALSE(is_l0(parse_formula("K(1, p)")));
  CHECK(is_l0(parse_formula("B(1, B(2, p))")));
  CHECK_FALSE(is_l0(parse_formula("Mot(1, p)")));
  CHECK(is_l0(parse_formula("true & ~false")));
}

TEST_CASE("L0 closure under subformulas") {
  testing::Rng rng(20240901);
  testing::GenVocab v = testing::gen_vocab(rng, 12);
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& f) {
    if (!f) return;
    if (is_l0(f)) {
      if (f->lhs) CHECK(is_l0(f->lhs));
      if (f->rhs) CHECK(is_l0(f->rhs));
    }
    walk(f->lhs);
    walk(f->rhs);
  };
  for (int i = 0; i < 200; ++i) walk(testing::gen_l0(rng, v, 4));
}

TEST_CASE("parser rejects malformed input with positions") {
  struct Bad {
    const char* text;
  };
  const Bad cases[] = {
      {""},        {"p &"},          {"B(p)"},         {"B(bob p)"},     {"K(bob, p"},
      {"(p"},      {"p q"},          {"~"},            {"[+(i, p) p"},   {"<+(i, p) p"},
      {"Pref(i, p)"}, {"rew(p & q)"}, {"B(bob, K(bob, p))"}, {"[?(p]q"},  {"+(i, p)"},
      {"p # q"},   {"Mot(true, p)"}, {"[+(i, K(i,p))] q"},  {"U"},        {"p <- q"},
  };
  for (const auto& c : cases) {
    CHECK_THROWS_AS((void)parse_formula(c.text), ParseError);
    try {
      (void)parse_formula(c.text);
    } catch (const ParseError& e) {
      CHECK(e.pos().line >= 1);
      CHECK(e.pos().col >= 1);
    }
  }
}

TEST_CASE("explicit belief arguments must stay in the base language") {
  CHECK_THROWS_AS((void)parse_formula("B(i, Attr(i, p))"), ParseError);
  CHECK_THROWS_AS((void)parse_formula("*(i, [?p]q)"), ParseError);
  CHECK_THROWS_AS((void)mk_explicit(AgentId{"i"}, parse_formula("K(i, p)")),
                  std::invalid_argument);
}

TEST_CASE("round-trip over random ASTs") {
  testing::Rng rng(7);
  testing::GenVocab v = testing::gen_vocab(rng, 12);
  for (int i = 0; i < 1000; ++i) {
    FormulaPtr f = testing::gen_formula(rng, v, 3);
    FormulaPtr back = parse_formula(print_formula(f));
    CHECK(formula_equal(back, f));
    FormulaPtr back_full = parse_formula(print_formula(f, PrintStyle::FullParens));
    CHECK(formula_equal(back_full, f));
  }
}
