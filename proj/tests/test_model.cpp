#include <doctest.h>

#include <algorithm>

#include "lca/attitudes.hpp"
#include "lca/model.hpp"
#include "support/generators.hpp"

using namespace lca;

namespace {

// The one-child scenario base, with names as in the instance files.
struct Scenario {
  AgentId bob{"bob"};
  FormulaPtr td = parse_formula("td_bob");
  FormulaPtr ti = parse_formula("ti_bob");
  FormulaPtr cr = parse_formula("cr_bob");
  FormulaPtr tv = parse_formula("tv_bob");
  FormulaPtr m1 = parse_formula("td_bob -> ti_bob");
  FormulaPtr m2 = parse_formula("ti_bob -> pun(bob)");
  FormulaPtr m3 = parse_formula("cr_bob -> rew(bob)");
  FormulaPtr m4 = parse_formula("~tv_bob -> pun(bob)");
  FormulaPtr a1 = parse_formula("~td_bob -> ~tv_bob");
  FormulaPtr a2 = parse_formula("td_bob -> cr_bob");

  VocabularyProfile profile(bool extended) const {
    VocabularyProfile v;
    v.agents = {bob};
    v.atoms = {plain_atom("td_bob"), plain_atom("ti_bob"), plain_atom("cr_bob"),
               plain_atom("tv_bob"), reward_atom(bob), punish_atom(bob)};
    v.gammas[bob] = {m1, m2, m3, m4};
    if (extended) {
      v.gammas[bob].push_back(a1);
      v.gammas[bob].push_back(a2);
    }
    return v;
  }

  State s0() const {
    State s;
    s.bases[bob] = {m1, m2, m3, m4};
    return s;
  }
};

}  // namespace

TEST_CASE("vocabulary closure sizes") {
  Scenario sc;
  ClosedVocabulary closed = close_vocabulary(sc.profile(false));
  CHECK(closed.gamma_plus.at(sc.bob).size() == 12);

  VocabularyProfile empty;
  empty.agents = {AgentId{"i"}};
  empty.gammas[AgentId{"i"}] = {};
  CHECK(close_vocabulary(empty).gamma_plus.at(AgentId{"i"}).empty());

  // A member that is already reward-shaped is not duplicated by the closure.
  VocabularyProfile nested;
  AgentId i{"i"};
  nested.agents = {i};
  FormulaPtr p_rew = mk_implies(parse_formula("p"), mk_atom(reward_atom(i)));
  nested.gammas[i] = {p_rew};
  auto plus = close_vocabulary(nested).gamma_plus.at(i);
  REQUIRE(plus.size() == 3);
  CHECK(formula_equal(plus[0], p_rew));
  CHECK(formula_equal(plus[1], mk_implies(p_rew, mk_atom(reward_atom(i)))));
  CHECK(formula_equal(plus[2], mk_implies(p_rew, mk_atom(punish_atom(i)))));
}

TEST_CASE("base-language satisfaction") {
  Scenario sc;
  State s0 = sc.s0();
  CHECK(sat_base(s0, parse_formula("B(bob, cr_bob -> rew(bob))")));
  CHECK(sat_base(s0, mk_top()));

  State s;
  AgentId one{"1"};
  s.valuation = {plain_atom("p")};
  s.bases[one] = {parse_formula("p")};
  CHECK(sat_base(s, parse_formula("B(1,p) & p & ~B(1,q)")));
}

TEST_CASE("desire bases from the scenario state") {
  Scenario sc;
  auto [app, av] = desire_bases(sc.s0(), sc.bob);
  REQUIRE(app.size() == 1);
  CHECK(formula_equal(app[0], sc.cr));
  REQUIRE(av.size() == 2);
  bool has_ti = false, has_ntv = false;
  for (const auto& f : av) {
    has_ti = has_ti || formula_equal(f, sc.ti);
    has_ntv = has_ntv || formula_equal(f, mk_not(sc.tv));
  }
  CHECK(has_ti);
  CHECK(has_ntv);

  State empty;
  auto [a2, v2] = desire_bases(empty, sc.bob);
  CHECK(a2.empty());
  CHECK(v2.empty());

  // Shape-matching looks only at the top-level implication.
  State s;
  AgentId i{"i"};
  s.bases[i] = {parse_formula("(p & q) -> rew(i)"), parse_formula("p -> rew(i)")};
  auto [a3, v3] = desire_bases(s, i);
  CHECK(a3.size() == 2);
  CHECK(v3.empty());
}

TEST_CASE("accessibility relations") {
  Scenario sc;
  State s0 = sc.s0();

  State empty_base_s;
  State any_t;
  any_t.valuation = {plain_atom("x")};
  CHECK(rel_epistemic(empty_base_s, any_t, sc.bob));

  State t1;
  t1.valuation = {plain_atom("td_bob")};
  CHECK_FALSE(rel_epistemic(s0, t1, sc.bob));  // falsifies td -> ti

  State s_small;
  AgentId i{"i"};
  s_small.bases[i] = {parse_formula("p")};
  State t_small;
  t_small.valuation = {plain_atom("p")};
  CHECK(rel_epistemic(s_small, t_small, i));

  State t_cr;
  t_cr.valuation = {plain_atom("cr_bob")};
  CHECK(rel_attract(s0, t_cr, sc.bob));
  State t_none;
  CHECK_FALSE(rel_attract(State{}, t_none, sc.bob));  // empty appetitive base

  State t_rep;
  t_rep.valuation = {plain_atom("td_bob"), plain_atom("ti_bob")};
  CHECK(rel_repulse(s0, t_rep, sc.bob));
}

TEST_CASE("state enumeration counts and cap") {
  // One agent whose vocabulary closure has 3 members over 2 tracked atoms.
  AgentId i{"i"};
  VocabularyProfile v;
  v.agents = {i};
  v.atoms = {reward_atom(i), punish_atom(i)};
  v.gammas[i] = {mk_implies(mk_atom(reward_atom(i)), mk_atom(reward_atom(i)))};
  Context small(v);
  CHECK(small.exponent() == 5);
  CHECK(enumerate_states(small).size() == 32);

  Scenario sc;
  Context ctx(sc.profile(false));
  CHECK(ctx.exponent() == 18);
  CHECK_THROWS_AS((void)enumerate_states(ctx, 12), CapExceededError);

  VocabularyProfile tiny;
  tiny.atoms = {plain_atom("p")};
  Context twostates(tiny);
  CHECK(enumerate_states(twostates).size() == 2);

  // Deterministic order: state k sets exactly the bits of k.
  std::vector<State> all = enumerate_states(twostates);
  CHECK(all[0].valuation.empty());
  CHECK(all[1].valuation.count(plain_atom("p")) == 1);
}

TEST_CASE("packing round-trips") {
  testing::Rng rng(11);
  testing::GenVocab v = testing::gen_vocab(rng, 12);
  Context ctx(v.profile);
  for (int k = 0; k < 100; ++k) {
    uint64_t bits = rng.bits() & ((1ULL << ctx.exponent()) - 1);
    State s = ctx.unpack(bits);
    CHECK(ctx.pack(s) == bits);
    CHECK(ctx.contains(s));
  }
}

TEST_CASE("realistic preference at the initial scenario state") {
  Scenario sc;
  Context ctx(sc.profile(false));
  // Not tidying is realistically preferred to tidying at the start.
  FormulaPtr query = expand_derived(parse_formula("RPref(bob, td_bob, ~td_bob)"));
  CHECK(check_explicit(sc.s0(), ctx, query));
  FormulaPtr reversed = expand_derived(parse_formula("RPref(bob, ~td_bob, td_bob)"));
  CHECK_FALSE(check_explicit(sc.s0(), ctx, reversed));
}

TEST_CASE("attraction to the impossible is vacuous") {
  testing::Rng rng(13);
  testing::GenVocab v = testing::gen_vocab(rng, 10);
  Context ctx(v.profile);
  State s = testing::gen_state(rng, ctx);
  CHECK(check_explicit(s, ctx, parse_formula("Attr(a, false)")));
}

TEST_CASE("checking validates the initial state") {
  Scenario sc;
  Context ctx(sc.profile(false));
  State outside;
  outside.bases[sc.bob] = {parse_formula("p -> q")};
  CHECK_THROWS_AS((void)check_explicit(outside, ctx, parse_formula("true")), ModelError);
}

TEST_CASE("program steps") {
  Scenario sc;
  Context ext(sc.profile(true));
  State s0 = sc.s0();

  // Speech act 1 adds its content to the base.
  auto succ = step_program(s0, ext, mk_expand(sc.bob, sc.a1));
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].bases.at(sc.bob).count(sc.a1) == 1);
  CHECK(succ[0].bases.at(sc.bob).size() == 5);

  // Expanding with something outside the closed vocabulary leaves S_Gamma.
  CHECK(step_program(s0, ext, mk_expand(sc.bob, parse_formula("td_bob & td_bob"))).empty());

  // Forgetting an absent member is the identity.
  auto same = step_program(s0, ext, mk_forget(sc.bob, sc.a1));
  REQUIRE(same.size() == 1);
  CHECK(state_equal(same[0], s0));

  CHECK(step_program(s0, ext, mk_test(mk_bottom())).empty());

  // Expansion postcondition and forgetting postcondition.
  for (const auto& t : step_program(s0, ext, mk_expand(sc.bob, sc.a2)))
    CHECK(check_explicit(t, ext, mk_explicit(sc.bob, sc.a2)));
  for (const auto& t : step_program(s0, ext, mk_forget(sc.bob, sc.m1)))
    CHECK(check_explicit(t, ext, mk_not(mk_explicit(sc.bob, sc.m1))));
}

TEST_CASE("inconsistent bases make everything implicitly believed") {
  AgentId i{"i"};
  VocabularyProfile v;
  v.agents = {i};
  v.atoms = {plain_atom("p"), reward_atom(i), punish_atom(i)};
  v.gammas[i] = {parse_formula("p"), parse_formula("~p")};
  Context ctx(v);
  State s;
  s.bases[i] = {parse_formula("p"), parse_formula("~p")};
  CHECK(check_explicit(s, ctx, mk_implicit(i, mk_bottom())));
}

TEST_CASE("consistency of bases") {
  Scenario sc;
  Context ctx(sc.profile(false));
  CHECK_FALSE(consistent_base({parse_formula("p & true"), parse_formula("~(p & true)")}, ctx));
  CHECK(consistent_base({}, ctx));
  CHECK(consistent_base({sc.m1, sc.m2, sc.m3, sc.m4}, ctx));
}

TEST_CASE("window anti-monotony on random instances") {
  testing::Rng rng(17);
  for (int round = 0; round < 20; ++round) {
    testing::GenVocab v = testing::gen_vocab(rng, 9);
    Context ctx(v.profile);
    FormulaPtr phi = testing::gen_l0(rng, v, 2);
    FormulaPtr psi = testing::gen_l0(rng, v, 2);
    const AgentId& agent = v.profile.agents[0];
    CheckEngine engine(ctx);
    // When the phi-states are among the psi-states, attraction to psi forces
    // attraction to phi.
    bool subset = true;
    uint64_t count = 1ULL << ctx.exponent();
    std::vector<State> states;
    for (uint64_t b = 0; b < count; ++b) {
      State t = ctx.unpack(b);
      if (sat_base(t, phi) && !sat_base(t, psi)) {
        subset = false;
        break;
      }
    }
    if (!subset) continue;
    for (uint64_t b = 0; b < count; b += 7) {
      State s = ctx.unpack(b);
      if (engine.check(s, mk_attract(agent, psi))) CHECK(engine.check(s, mk_attract(agent, phi)));
    }
  }
}

TEST_CASE("revision by maximal consistent subsets") {
  AgentId i{"i"};
  VocabularyProfile v;
  v.agents = {i};
  v.atoms = {plain_atom("p"), plain_atom("q"), reward_atom(i), punish_atom(i)};
  FormulaPtr p = parse_formula("p");
  FormulaPtr pq = parse_formula("p -> q");
  FormulaPtr nq = parse_formula("~q");
  v.gammas[i] = {p, pq, nq};
  Context ctx(v);

  SUBCASE("contradicting input prunes to the intersection") {
    auto out = apply_revise({p, pq}, nq, ctx, i);
    REQUIRE(out.size() == 1);
    CHECK(formula_equal(out[0], nq));
  }
  SUBCASE("consistent expansion is plain union") {
    VocabularyProfile v2 = v;
    FormulaPtr q = parse_formula("q");
    v2.gammas[i].push_back(q);
    Context ctx2(v2);
    auto out = apply_revise({p}, q, ctx2, i);
    REQUIRE(out.size() == 2);
    CHECK(formula_equal(out[0], p));
    CHECK(formula_equal(out[1], q));
  }
  SUBCASE("input outside the vocabulary leaves no candidate set") {
    auto out = apply_revise({p}, parse_formula("q"), ctx, i);
    CHECK(out.size() == ctx.closed().gamma_plus.at(i).size());
  }
  SUBCASE("consistent expansion within the vocabulary") {
    auto out = apply_revise({p}, nq, ctx, i);
    REQUIRE(out.size() == 2);
    CHECK(formula_equal(out[0], p));
    CHECK(formula_equal(out[1], nq));
  }
  SUBCASE("inconsistent input forces the full closure") {
    VocabularyProfile v2 = v;
    FormulaPtr contradiction = parse_formula("p & ~p");
    v2.gammas[i].push_back(contradiction);
    Context ctx2(v2);
    auto out = apply_revise({p}, contradiction, ctx2, i);
    CHECK(out.size() == ctx2.closed().gamma_plus.at(i).size());
  }
  SUBCASE("revision is deterministic and succeeds") {
    State s;
    s.bases[i] = {p, pq};
    auto succ = step_program(s, ctx, mk_revise(i, nq));
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].bases.at(i).size() == 1);
    CHECK(succ[0].bases.at(i).count(nq) == 1);
  }
}

TEST_CASE("revision success and inclusion properties") {
  testing::Rng rng(23);
  for (int round = 0; round < 40; ++round) {
    testing::GenVocab v = testing::gen_vocab(rng, 12);
    Context ctx(v.profile);
    const AgentId& i = v.profile.agents[0];
    const auto& plus = ctx.closed().gamma_plus.at(i);
    if (plus.empty()) continue;
    State s = testing::gen_state(rng, ctx);
    std::vector<FormulaPtr> base(s.bases[i].begin(), s.bases[i].end());
    FormulaPtr a = plus[rng.below((int)plus.size())];
    auto out = apply_revise(base, a, ctx, i);
    if (consistent_base({a}, ctx)) {
      bool has_a = false;
      for (const auto& f : out) has_a = has_a || formula_equal(f, a);
      CHECK(has_a);
      CHECK(consistent_base(out, ctx));
    }
    std::vector<FormulaPtr> with_a = base;
    with_a.push_back(a);
    if (consistent_base(with_a, ctx)) {
      // Union case: the revised base is exactly base + a.
      FormulaSet expect(with_a.begin(), with_a.end());
      REQUIRE(out.size() == expect.size());
      for (const auto& f : out) CHECK(expect.count(f) == 1);
    }
  }
}
