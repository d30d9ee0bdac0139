// Random AST / vocabulary / state generators shared by the unit and
// acceptance suites. Deterministically seeded.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "lca/model.hpp"
#include "lca/syntax.hpp"

namespace lca::testing {

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  int below(int n) { return static_cast<int>(eng_() % static_cast<uint64_t>(n)); }
  bool flip(double p = 0.5) { return std::uniform_real_distribution<>(0, 1)(eng_) < p; }
  uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

struct GenVocab {
  VocabularyProfile profile;
  std::vector<FormulaPtr> l0_pool;  // grounded building blocks for queries
};

inline FormulaPtr gen_l0(Rng& rng, const GenVocab& v, int depth) {
  const auto& atoms = v.profile.atoms;
  if (depth == 0 || rng.flip(0.4)) {
    if (!v.l0_pool.empty() && rng.flip(0.3)) return v.l0_pool[rng.below((int)v.l0_pool.size())];
    return mk_atom(atoms[rng.below((int)atoms.size())]);
  }
  switch (rng.below(6)) {
    case 0: return mk_not(gen_l0(rng, v, depth - 1));
    case 1: return mk_and(gen_l0(rng, v, depth - 1), gen_l0(rng, v, depth - 1));
    case 2: return mk_or(gen_l0(rng, v, depth - 1), gen_l0(rng, v, depth - 1));
    case 3: return mk_implies(gen_l0(rng, v, depth - 1), gen_l0(rng, v, depth - 1));
    case 4: return mk_iff(gen_l0(rng, v, depth - 1), gen_l0(rng, v, depth - 1));
    default: {
      const AgentId& i = v.profile.agents[rng.below((int)v.profile.agents.size())];
      return mk_explicit(i, gen_l0(rng, v, depth - 1));
    }
  }
}

ProgramPtr gen_program(Rng& rng, const GenVocab& v, int depth, bool derived = true);

inline FormulaPtr gen_formula(Rng& rng, const GenVocab& v, int depth, bool dynamic = true,
                              bool derived = true) {
  if (depth == 0) return gen_l0(rng, v, 1);
  const AgentId& i = v.profile.agents[rng.below((int)v.profile.agents.size())];
  int pick = rng.below(dynamic ? (derived ? 16 : 13) : 11);
  switch (pick) {
    case 0: return gen_l0(rng, v, 2);
    case 1: return mk_not(gen_formula(rng, v, depth - 1, dynamic, derived));
    case 2:
      return mk_and(gen_formula(rng, v, depth - 1, dynamic, derived),
                    gen_formula(rng, v, depth - 1, dynamic, derived));
    case 3:
      return mk_or(gen_formula(rng, v, depth - 1, dynamic, derived),
                   gen_formula(rng, v, depth - 1, dynamic, derived));
    case 4:
      return mk_implies(gen_formula(rng, v, depth - 1, dynamic, derived),
                        gen_formula(rng, v, depth - 1, dynamic, derived));
    case 5:
      return mk_iff(gen_formula(rng, v, depth - 1, dynamic, derived),
                    gen_formula(rng, v, depth - 1, dynamic, derived));
    case 6: return mk_explicit(i, gen_l0(rng, v, 1));
    case 7: return mk_implicit(i, gen_formula(rng, v, depth - 1, dynamic, derived));
    case 8: return mk_attract(i, gen_formula(rng, v, depth - 1, dynamic, derived));
    case 9: return mk_repulse(i, gen_formula(rng, v, depth - 1, dynamic, derived));
    case 10: return mk_rattract(i, gen_formula(rng, v, depth - 1, dynamic, derived));
    case 11:
      if (!dynamic) return mk_rrepulse(i, gen_formula(rng, v, depth - 1, dynamic, derived));
      return mk_rrepulse(i, gen_formula(rng, v, depth - 1, dynamic, derived));
    case 12:
      return mk_box(gen_program(rng, v, depth - 1, derived),
                    gen_formula(rng, v, depth - 1, dynamic, derived));
    case 13:
      return mk_diamond(gen_program(rng, v, depth - 1, derived),
                        gen_formula(rng, v, depth - 1, dynamic, derived));
    case 14: {
      DKind kinds[] = {DKind::Mot, DKind::Demot, DKind::Ind, DKind::Amb,
                       DKind::RMot, DKind::RDemot, DKind::RInd, DKind::RAmb};
      return mk_derived1(kinds[rng.below(8)], i,
                         gen_formula(rng, v, depth - 1, dynamic, derived));
    }
    default:
      return mk_pref(rng.flip() ? DKind::Pref : DKind::RPref, i, gen_l0(rng, v, 1),
                     gen_l0(rng, v, 1));
  }
}

inline ProgramPtr gen_program(Rng& rng, const GenVocab& v, int depth, bool derived) {
  const AgentId& i = v.profile.agents[rng.below((int)v.profile.agents.size())];
  // Atomic arguments: mostly declared members (and their closure shapes so
  // expansion usually stays inside the vocabulary), sometimes fresh formulas
  // to exercise the no-successor paths.
  auto arg = [&]() -> FormulaPtr {
    if (!v.l0_pool.empty() && rng.flip(0.75)) return v.l0_pool[rng.below((int)v.l0_pool.size())];
    return gen_l0(rng, v, 1);
  };
  int pick = rng.below(depth == 0 ? 3 : 6);
  switch (pick) {
    case 0: return mk_expand(i, arg());
    case 1: return mk_forget(i, arg());
    case 2: return mk_revise(i, arg());
    case 3:
      return mk_seq(gen_program(rng, v, depth - 1, derived),
                    gen_program(rng, v, depth - 1, derived));
    case 4:
      return mk_choice(gen_program(rng, v, depth - 1, derived),
                       gen_program(rng, v, depth - 1, derived));
    default: return mk_test(gen_formula(rng, v, depth - 1, true, derived));
  }
}

// A random vocabulary whose state-space exponent stays within the bound.
inline GenVocab gen_vocab(Rng& rng, int max_exponent) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    GenVocab v;
    int agent_count = 1 + rng.below(2);
    for (int i = 0; i < agent_count; ++i)
      v.profile.agents.push_back(AgentId{std::string(1, char('a' + i))});
    int atom_count = 1 + rng.below(2);
    const char* names[] = {"p", "q", "r"};
    for (int i = 0; i < atom_count; ++i) v.profile.atoms.push_back(plain_atom(names[i]));
    std::vector<Atom> tracked = v.profile.atoms;
    for (const auto& a : v.profile.agents) {
      v.profile.atoms.push_back(reward_atom(a));
      v.profile.atoms.push_back(punish_atom(a));
    }
    for (const auto& agent : v.profile.agents) {
      int members = rng.below(3);
      std::vector<FormulaPtr> gamma;
      for (int m = 0; m < members; ++m) {
        FormulaPtr atom = mk_atom(tracked[rng.below((int)tracked.size())]);
        const AgentId& other = v.profile.agents[rng.below((int)v.profile.agents.size())];
        switch (rng.below(7)) {
          case 0: gamma.push_back(atom); break;
          case 1: gamma.push_back(mk_not(atom)); break;
          case 2:
            gamma.push_back(mk_implies(atom, mk_atom(tracked[rng.below((int)tracked.size())])));
            break;
          case 3: gamma.push_back(mk_implies(atom, mk_atom(reward_atom(agent)))); break;
          case 4: gamma.push_back(mk_implies(atom, mk_atom(punish_atom(agent)))); break;
          case 5: gamma.push_back(mk_explicit(other, atom)); break;
          default:
            gamma.push_back(mk_implies(mk_explicit(other, atom), mk_atom(reward_atom(agent))));
            break;
        }
      }
      // Deduplicate to keep the declared list a set.
      std::vector<FormulaPtr> unique;
      for (const auto& f : gamma) {
        bool seen = false;
        for (const auto& g : unique) seen = seen || formula_equal(f, g);
        if (!seen) unique.push_back(f);
      }
      v.profile.gammas[agent] = std::move(unique);
    }
    Context ctx(v.profile);
    if (ctx.exponent() > max_exponent || ctx.exponent() == 0) continue;
    for (const auto& agent : v.profile.agents)
      for (const auto& f : ctx.closed().gamma_plus.at(agent)) v.l0_pool.push_back(f);
    for (const auto& a : v.profile.atoms) v.l0_pool.push_back(mk_atom(a));
    return v;
  }
  throw std::runtime_error("could not generate a vocabulary within the exponent bound");
}

inline State gen_state(Rng& rng, const Context& ctx) {
  uint64_t mask = ctx.exponent() >= 64 ? ~0ULL : ((1ULL << ctx.exponent()) - 1);
  return ctx.unpack(rng.bits() & mask);
}

}  // namespace lca::testing

#include "lca/qbf.hpp"

namespace lca::testing {

// Random closed QBF over a given space: levels 0..level_count-1; variables
// only reference levels bound above them.
inline QbfPtr gen_qbf_node(Rng& rng, const VarSpace& space, std::vector<LevelId>& unbound,
                           std::vector<LevelId>& bound, int depth) {
  auto leaf = [&]() -> QbfPtr {
    if (rng.flip(0.15)) return q_const(rng.flip());
    LevelId l = bound[rng.below((int)bound.size())];
    return q_var(QVar{l, (uint32_t)rng.below((int)space.vars_per_level())});
  };
  auto block = [&]() -> QbfPtr {
    LevelId l = unbound.back();
    unbound.pop_back();
    bound.push_back(l);
    QbfPtr m = gen_qbf_node(rng, space, unbound, bound, depth > 0 ? depth - 1 : 0);
    bound.pop_back();
    return rng.flip() ? q_forall(l, std::move(m)) : q_exists(l, std::move(m));
  };
  if (depth == 0) {
    if (!unbound.empty() && rng.flip(0.3)) return block();
    return leaf();
  }
  int pick = rng.below(10);
  if (pick >= 8 && !unbound.empty()) return block();
  switch (pick % 5) {
    case 0: return leaf();
    case 1: return q_not(gen_qbf_node(rng, space, unbound, bound, depth - 1));
    case 2:
      return q_and(gen_qbf_node(rng, space, unbound, bound, depth - 1),
                   gen_qbf_node(rng, space, unbound, bound, depth - 1));
    case 3:
      return q_or(gen_qbf_node(rng, space, unbound, bound, depth - 1),
                  gen_qbf_node(rng, space, unbound, bound, depth - 1));
    default:
      return q_implies(gen_qbf_node(rng, space, unbound, bound, depth - 1),
                       gen_qbf_node(rng, space, unbound, bound, depth - 1));
  }
}

// Closed random formula with total variable count = levels * vars_per_level.
inline QbfPtr gen_closed_qbf(Rng& rng, const VarSpace& space, int level_count, int depth) {
  std::vector<LevelId> unbound, bound;
  for (int l = level_count; l-- > 0;) unbound.push_back(LevelId{(uint32_t)l});
  // An outermost block guarantees closedness of any variable we generate.
  LevelId top = unbound.back();
  unbound.pop_back();
  bound.push_back(top);
  QbfPtr m = gen_qbf_node(rng, space, unbound, bound, depth);
  return rng.flip() ? q_forall(top, std::move(m)) : q_exists(top, std::move(m));
}

}  // namespace lca::testing
