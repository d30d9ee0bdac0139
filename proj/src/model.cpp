#include "lca/model.hpp"

#include <algorithm>
#include <bit>

namespace lca {

bool state_equal(const State& a, const State& b) {
  if (a.valuation != b.valuation) return false;
  if (a.bases.size() != b.bases.size()) return false;
  auto it = b.bases.begin();
  for (const auto& [agent, base] : a.bases) {
    if (it->first != agent) return false;
    if (base.size() != it->second.size()) return false;
    auto jt = it->second.begin();
    for (const auto& f : base) {
      if (!formula_equal(f, *jt)) return false;
      ++jt;
    }
    ++it;
  }
  return true;
}

ClosedVocabulary close_vocabulary(const VocabularyProfile& v) {
  ClosedVocabulary out;
  out.agents = v.agents;
  for (const auto& agent : v.agents) {
    std::vector<FormulaPtr> plus;
    auto add = [&plus](const FormulaPtr& f) {
      for (const auto& g : plus)
        if (formula_equal(f, g)) return;
      plus.push_back(f);
    };
    auto it = v.gammas.find(agent);
    const std::vector<FormulaPtr> empty;
    const std::vector<FormulaPtr>& gamma = it == v.gammas.end() ? empty : it->second;
    for (const auto& f : gamma) add(f);
    FormulaPtr rew = mk_atom(reward_atom(agent));
    FormulaPtr pun = mk_atom(punish_atom(agent));
    for (const auto& f : gamma) add(mk_implies(f, rew));
    for (const auto& f : gamma) add(mk_implies(f, pun));
    out.gamma_plus[agent] = std::move(plus);
  }
  return out;
}

namespace {

void collect_atoms(const FormulaPtr& f, AtomSet& out) {
  if (!f) return;
  if (f->kind == FKind::Atom) out.insert(f->atom);
  collect_atoms(f->lhs, out);
  collect_atoms(f->rhs, out);
  if (f->prog) {
    const Program* p = f->prog.get();
    std::function<void(const Program*)> walk = [&](const Program* q) {
      if (!q) return;
      collect_atoms(q->arg, out);
      walk(q->left.get());
      walk(q->right.get());
    };
    walk(p);
  }
}

}  // namespace

Context::Context(VocabularyProfile profile) : profile_(std::move(profile)) {
  closed_ = close_vocabulary(profile_);
  int bit = 0;
  for (const auto& a : profile_.atoms) {
    if (atom_bit_.count(a)) throw ModelError("duplicate tracked atom " + a.str());
    atom_bit_[a] = bit++;
  }
  member_base_.resize(profile_.agents.size());
  member_bits_.resize(profile_.agents.size());
  for (size_t ai = 0; ai < profile_.agents.size(); ++ai) {
    member_base_[ai] = bit;
    const auto& plus = closed_.gamma_plus.at(profile_.agents[ai]);
    for (const auto& f : plus) {
      member_bits_[ai].emplace_back(f, bit++);
      AtomSet used;
      collect_atoms(f, used);
      for (const auto& a : used)
        if (!atom_bit_.count(a))
          throw ModelError("vocabulary member " + print_formula(f) + " mentions untracked atom " +
                           a.str());
    }
  }
  total_bits_ = bit;
}

int Context::agent_index(const AgentId& a) const {
  for (size_t i = 0; i < profile_.agents.size(); ++i)
    if (profile_.agents[i] == a) return static_cast<int>(i);
  return -1;
}

const std::vector<FormulaPtr>& Context::members(int agent_idx) const {
  return closed_.gamma_plus.at(profile_.agents[agent_idx]);
}

int Context::bit_of_atom(const Atom& a) const {
  auto it = atom_bit_.find(a);
  return it == atom_bit_.end() ? -1 : it->second;
}

int Context::bit_of_member(int agent_idx, const FormulaPtr& f) const {
  for (const auto& [g, bit] : member_bits_[agent_idx])
    if (formula_equal(f, g)) return bit;
  return -1;
}

bool Context::contains(const State& s) const {
  for (const auto& a : s.valuation)
    if (!atom_bit_.count(a)) return false;
  for (const auto& [agent, base] : s.bases) {
    int ai = agent_index(agent);
    if (ai < 0) return false;
    for (const auto& f : base)
      if (bit_of_member(ai, f) < 0) return false;
  }
  return true;
}

uint64_t Context::pack(const State& s) const {
  if (total_bits_ > 63) throw ModelError("state space too large to pack");
  if (!contains(s)) throw ModelError("state lies outside S_Gamma for this vocabulary");
  uint64_t bits = 0;
  for (const auto& a : s.valuation) bits |= 1ULL << atom_bit_.at(a);
  for (const auto& [agent, base] : s.bases) {
    int ai = agent_index(agent);
    for (const auto& f : base) bits |= 1ULL << bit_of_member(ai, f);
  }
  return bits;
}

State Context::unpack(uint64_t bits) const {
  State s;
  for (const auto& [a, bit] : atom_bit_)
    if (bits >> bit & 1) s.valuation.insert(a);
  for (size_t ai = 0; ai < profile_.agents.size(); ++ai) {
    FormulaSet base;
    for (const auto& [f, bit] : member_bits_[ai])
      if (bits >> bit & 1) base.insert(f);
    s.bases[profile_.agents[ai]] = std::move(base);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Rich-state semantics (no vocabulary involved).

bool sat_base(const State& s, const FormulaPtr& a) {
  switch (a->kind) {
    case FKind::Atom: return s.valuation.count(a->atom) > 0;
    case FKind::Top: return true;
    case FKind::Bottom: return false;
    case FKind::Not: return !sat_base(s, a->lhs);
    case FKind::And: return sat_base(s, a->lhs) && sat_base(s, a->rhs);
    case FKind::Or: return sat_base(s, a->lhs) || sat_base(s, a->rhs);
    case FKind::Implies: return !sat_base(s, a->lhs) || sat_base(s, a->rhs);
    case FKind::Iff: return sat_base(s, a->lhs) == sat_base(s, a->rhs);
    case FKind::ExplicitBelief: {
      auto it = s.bases.find(a->agent);
      return it != s.bases.end() && it->second.count(a->lhs) > 0;
    }
    default: throw ModelError("sat_base requires an L0 formula");
  }
}

std::pair<std::vector<FormulaPtr>, std::vector<FormulaPtr>> desire_bases(const State& s,
                                                                         const AgentId& i) {
  std::vector<FormulaPtr> app, av;
  auto it = s.bases.find(i);
  if (it == s.bases.end()) return {app, av};
  for (const auto& f : it->second) {
    if (f->kind != FKind::Implies || f->rhs->kind != FKind::Atom) continue;
    const Atom& head = f->rhs->atom;
    if (head.kind == Atom::Kind::Reward && head.text == i.name) app.push_back(f->lhs);
    if (head.kind == Atom::Kind::Punish && head.text == i.name) av.push_back(f->lhs);
  }
  return {app, av};
}

bool rel_epistemic(const State& s, const State& t, const AgentId& i) {
  auto it = s.bases.find(i);
  if (it == s.bases.end()) return true;
  for (const auto& f : it->second)
    if (!sat_base(t, f)) return false;
  return true;
}

bool rel_attract(const State& s, const State& t, const AgentId& i) {
  for (const auto& a : desire_bases(s, i).first)
    if (sat_base(t, a)) return true;
  return false;
}

bool rel_repulse(const State& s, const State& t, const AgentId& i) {
  for (const auto& a : desire_bases(s, i).second)
    if (sat_base(t, a)) return true;
  return false;
}

void for_each_state(const Context& c, const std::function<void(const State&)>& fn,
                    int cap_exponent) {
  if (c.exponent() > cap_exponent) throw CapExceededError(c.exponent(), cap_exponent);
  uint64_t count = 1ULL << c.exponent();
  for (uint64_t bits = 0; bits < count; ++bits) fn(c.unpack(bits));
}

std::vector<State> enumerate_states(const Context& c, int cap_exponent) {
  std::vector<State> out;
  for_each_state(c, [&out](const State& s) { out.push_back(s); }, cap_exponent);
  return out;
}

// ---------------------------------------------------------------------------
// Packed checker.

CheckEngine::CheckEngine(const Context& ctx, int cap_exponent) : ctx_(ctx), cap_(cap_exponent) {
  if (ctx_.exponent() > 63) throw ModelError("explicit checking needs exponent <= 63");
  agents_.resize(ctx_.agent_count());
  for (int ai = 0; ai < ctx_.agent_count(); ++ai) {
    AgentInfo& info = agents_[ai];
    info.base_bit = ctx_.member_base_bit(ai);
    const auto& members = ctx_.members(ai);
    info.member_count = static_cast<int>(members.size());
    const std::string& name = ctx_.agents()[ai].name;
    for (int m = 0; m < info.member_count; ++m) {
      const FormulaPtr& f = members[m];
      if (f->kind != FKind::Implies || f->rhs->kind != FKind::Atom) continue;
      const Atom& head = f->rhs->atom;
      if (head.kind == Atom::Kind::Reward && head.text == name) {
        info.appetitive_bits.push_back(info.base_bit + m);
        info.appetitive.push_back(f->lhs.get());
      } else if (head.kind == Atom::Kind::Punish && head.text == name) {
        info.aversive_bits.push_back(info.base_bit + m);
        info.aversive.push_back(f->lhs.get());
      }
    }
  }
}

bool CheckEngine::eval_l0(uint64_t s, const Formula* f) const {
  switch (f->kind) {
    case FKind::Atom: {
      int bit = ctx_.bit_of_atom(f->atom);
      return bit >= 0 && (s >> bit & 1);
    }
    case FKind::Top: return true;
    case FKind::Bottom: return false;
    case FKind::Not: return !eval_l0(s, f->lhs.get());
    case FKind::And: return eval_l0(s, f->lhs.get()) && eval_l0(s, f->rhs.get());
    case FKind::Or: return eval_l0(s, f->lhs.get()) || eval_l0(s, f->rhs.get());
    case FKind::Implies: return !eval_l0(s, f->lhs.get()) || eval_l0(s, f->rhs.get());
    case FKind::Iff: return eval_l0(s, f->lhs.get()) == eval_l0(s, f->rhs.get());
    case FKind::ExplicitBelief: {
      int ai = ctx_.agent_index(f->agent);
      if (ai < 0) return false;
      int bit = ctx_.bit_of_member(ai, f->lhs);
      return bit >= 0 && (s >> bit & 1);
    }
    default: throw ModelError("not an L0 formula");
  }
}

uint64_t CheckEngine::support(const Formula* f) {
  auto it = support_memo_.find(f);
  if (it != support_memo_.end()) return it->second;
  uint64_t mask = 0;
  switch (f->kind) {
    case FKind::Atom: {
      int bit = ctx_.bit_of_atom(f->atom);
      if (bit >= 0) mask |= 1ULL << bit;
      break;
    }
    case FKind::Top:
    case FKind::Bottom: break;
    case FKind::ExplicitBelief: {
      int ai = ctx_.agent_index(f->agent);
      if (ai >= 0) {
        int bit = ctx_.bit_of_member(ai, f->lhs);
        if (bit >= 0) mask |= 1ULL << bit;
      }
      break;
    }
    default:
      if (f->lhs) mask |= support(f->lhs.get());
      if (f->rhs) mask |= support(f->rhs.get());
      break;
  }
  support_memo_[f] = mask;
  return mask;
}

// Runs pred over every state of S_Gamma, short-circuiting on false. In
// projected mode only the bits in support_mask vary; the predicate may not
// read any other bit.
template <class Pred>
bool CheckEngine::for_all_states(uint64_t support_mask, bool projected, Pred pred) {
  if (projected) {
    uint64_t sub = support_mask;
    while (true) {
      if (!pred(sub)) return false;
      if (sub == 0) return true;
      sub = (sub - 1) & support_mask;
    }
  }
  if (ctx_.exponent() > cap_) throw CapExceededError(ctx_.exponent(), cap_);
  uint64_t count = 1ULL << ctx_.exponent();
  for (uint64_t t = 0; t < count; ++t)
    if (!pred(t)) return false;
  return true;
}

bool CheckEngine::scan_modal(uint64_t s, const Formula* f) {
  int ai = ctx_.agent_index(f->agent);
  if (ai < 0) throw ModelError("undeclared agent " + f->agent.name);
  const AgentInfo& info = agents_[ai];

  // Epistemic constraint of s: the members currently believed by agent ai.
  std::vector<const Formula*> believed;
  uint64_t e_support = 0;
  const auto& members = ctx_.members(ai);
  for (int m = 0; m < info.member_count; ++m) {
    if (s >> (info.base_bit + m) & 1) {
      believed.push_back(members[m].get());
      e_support |= support(members[m].get());
    }
  }
  auto epi = [&](uint64_t t) {
    for (const Formula* b : believed)
      if (!eval_l0(t, b)) return false;
    return true;
  };

  std::vector<const Formula*> app, av;
  uint64_t a_support = 0, r_support = 0;
  for (size_t k = 0; k < info.appetitive.size(); ++k) {
    if (s >> info.appetitive_bits[k] & 1) {
      app.push_back(info.appetitive[k]);
      a_support |= support(info.appetitive[k]);
    }
  }
  for (size_t k = 0; k < info.aversive.size(); ++k) {
    if (s >> info.aversive_bits[k] & 1) {
      av.push_back(info.aversive[k]);
      r_support |= support(info.aversive[k]);
    }
  }
  auto attr = [&](uint64_t t) {
    for (const Formula* a : app)
      if (eval_l0(t, a)) return true;
    return false;
  };
  auto rep = [&](uint64_t t) {
    for (const Formula* a : av)
      if (eval_l0(t, a)) return true;
    return false;
  };

  const Formula* phi = f->lhs.get();
  auto it = l0_memo_.find(phi);
  if (it == l0_memo_.end()) it = l0_memo_.emplace(phi, is_l0(f->lhs) ? 1 : 0).first;
  bool phi_l0 = it->second == 1;
  auto phi_at = [&](uint64_t t) { return phi_l0 ? eval_l0(t, phi) : check_packed(t, phi); };
  uint64_t phi_support = phi_l0 ? support(phi) : 0;

  switch (f->kind) {
    case FKind::ImplicitBelief:
      return for_all_states(e_support | phi_support, phi_l0,
                            [&](uint64_t t) { return !epi(t) || phi_at(t); });
    case FKind::Attract:
      return for_all_states(a_support | phi_support, phi_l0,
                            [&](uint64_t t) { return !phi_at(t) || attr(t); });
    case FKind::Repulse:
      return for_all_states(r_support | phi_support, phi_l0,
                            [&](uint64_t t) { return !phi_at(t) || rep(t); });
    case FKind::RAttract:
      return for_all_states(e_support | a_support | phi_support, phi_l0,
                            [&](uint64_t t) { return !(phi_at(t) && epi(t)) || attr(t); });
    case FKind::RRepulse:
      return for_all_states(e_support | r_support | phi_support, phi_l0,
                            [&](uint64_t t) { return !(phi_at(t) && epi(t)) || rep(t); });
    default: throw ModelError("not a modal operator");
  }
}

bool CheckEngine::check_packed(uint64_t s, const Formula* f) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::Top:
    case FKind::Bottom:
    case FKind::ExplicitBelief: return eval_l0(s, f);
    case FKind::Not: return !check_packed(s, f->lhs.get());
    case FKind::And: return check_packed(s, f->lhs.get()) && check_packed(s, f->rhs.get());
    case FKind::Or: return check_packed(s, f->lhs.get()) || check_packed(s, f->rhs.get());
    case FKind::Implies: return !check_packed(s, f->lhs.get()) || check_packed(s, f->rhs.get());
    case FKind::Iff: return check_packed(s, f->lhs.get()) == check_packed(s, f->rhs.get());
    case FKind::Derived:
      throw ModelError("derived operator reached the checker; expand it first");
    default: break;
  }
  auto key = std::make_pair(f, s);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool result;
  if (f->kind == FKind::Box || f->kind == FKind::Diamond) {
    std::vector<uint64_t> succ = successors_packed(s, f->prog.get());
    if (f->kind == FKind::Box) {
      result = true;
      for (uint64_t t : succ)
        if (!check_packed(t, f->lhs.get())) {
          result = false;
          break;
        }
    } else {
      result = false;
      for (uint64_t t : succ)
        if (check_packed(t, f->lhs.get())) {
          result = true;
          break;
        }
    }
  } else {
    result = scan_modal(s, f);
  }
  memo_[key] = result;
  return result;
}

std::vector<uint64_t> CheckEngine::successors_packed(uint64_t s, const Program* p) {
  switch (p->kind) {
    case PKind::Expand: {
      int ai = ctx_.agent_index(p->agent);
      int bit = ai < 0 ? -1 : ctx_.bit_of_member(ai, p->arg);
      if (bit < 0) return {};  // no successor inside S_Gamma
      return {s | (1ULL << bit)};
    }
    case PKind::Forget: {
      int ai = ctx_.agent_index(p->agent);
      int bit = ai < 0 ? -1 : ctx_.bit_of_member(ai, p->arg);
      if (bit < 0) return {s};
      return {s & ~(1ULL << bit)};
    }
    case PKind::Revise: {
      int ai = ctx_.agent_index(p->agent);
      if (ai < 0) throw ModelError("undeclared agent " + p->agent.name);
      return {revise_mask(s, ai, p->arg)};
    }
    case PKind::Seq: {
      std::vector<uint64_t> mid = successors_packed(s, p->left.get());
      std::vector<uint64_t> out;
      for (uint64_t m : mid) {
        for (uint64_t t : successors_packed(m, p->right.get())) out.push_back(t);
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    case PKind::Choice: {
      std::vector<uint64_t> out = successors_packed(s, p->left.get());
      for (uint64_t t : successors_packed(s, p->right.get())) out.push_back(t);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    case PKind::Test: return check_packed(s, p->arg.get()) ? std::vector<uint64_t>{s}
                                                           : std::vector<uint64_t>{};
  }
  return {};
}

bool CheckEngine::consistent_mask(int agent_idx, uint64_t member_mask) {
  auto key = std::make_pair(agent_idx, member_mask);
  auto it = consistency_memo_.find(key);
  if (it != consistency_memo_.end()) return it->second;
  const auto& members = ctx_.members(agent_idx);
  std::vector<const Formula*> fs;
  uint64_t supp = 0;
  for (size_t m = 0; m < members.size(); ++m) {
    if (member_mask >> m & 1) {
      fs.push_back(members[m].get());
      supp |= support(members[m].get());
    }
  }
  // Consistency = some state of S_Gamma satisfies every member.
  bool unsat = for_all_states(supp, true, [&](uint64_t t) {
    for (const Formula* f : fs)
      if (!eval_l0(t, f)) return true;  // keep searching
    return false;                       // witness found
  });
  bool result = !unsat;
  consistency_memo_[key] = result;
  return result;
}

uint64_t CheckEngine::revise_mask(uint64_t s, int agent_idx, const FormulaPtr& a) {
  const AgentInfo& info = agents_[agent_idx];
  uint64_t base_field = info.member_count == 0
                            ? 0
                            : ((info.member_count == 64 ? ~0ULL : (1ULL << info.member_count) - 1));
  uint64_t base_mask = (s >> info.base_bit) & base_field;
  uint64_t full = base_field;

  int abit = ctx_.bit_of_member(agent_idx, a);
  uint64_t intersection = full;
  bool any = false;
  if (abit >= 0) {
    uint64_t am = 1ULL << (abit - info.base_bit);
    uint64_t candidates = base_mask | am;
    // Enumerate subsets of the candidates that contain a, keeping the
    // consistent ones that no single candidate extends consistently.
    uint64_t rest = candidates & ~am;
    uint64_t sub = rest;
    while (true) {
      uint64_t m = sub | am;
      if (consistent_mask(agent_idx, m)) {
        bool maximal = true;
        uint64_t extra = candidates & ~m;
        while (extra) {
          uint64_t b = extra & (~extra + 1);
          if (consistent_mask(agent_idx, m | b)) {
            maximal = false;
            break;
          }
          extra &= extra - 1;
        }
        if (maximal) {
          intersection &= m;
          any = true;
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
  }
  // No alpha-MCS (input outside the vocabulary or inconsistent): the revised
  // base is the full closure.
  uint64_t revised = any ? intersection : full;
  uint64_t cleared = s & ~(base_field << info.base_bit);
  return cleared | (revised << info.base_bit);
}

bool CheckEngine::check(const State& s0, const FormulaPtr& f) {
  if (!ctx_.contains(s0)) throw ModelError("state lies outside S_Gamma for this vocabulary");
  retained_.push_back(f);  // memo entries reference nodes by address
  return check_packed(ctx_.pack(s0), f.get());
}

std::vector<State> CheckEngine::successors(const State& s, const ProgramPtr& p) {
  std::vector<State> out;
  for (uint64_t t : successors_packed(ctx_.pack(s), p.get())) out.push_back(ctx_.unpack(t));
  return out;
}

bool CheckEngine::consistent(const std::vector<FormulaPtr>& members) {
  std::vector<const Formula*> fs;
  uint64_t supp = 0;
  for (const auto& f : members) {
    if (!is_l0(f)) throw ModelError("consistency is defined for L0 formulas");
    fs.push_back(f.get());
    supp |= support(f.get());
  }
  bool unsat = for_all_states(supp, true, [&](uint64_t t) {
    for (const Formula* f : fs)
      if (!eval_l0(t, f)) return true;
    return false;
  });
  return !unsat;
}

std::vector<FormulaPtr> CheckEngine::revise(const std::vector<FormulaPtr>& base,
                                            const FormulaPtr& a, const AgentId& i) {
  int ai = ctx_.agent_index(i);
  if (ai < 0) throw ModelError("undeclared agent " + i.name);
  uint64_t s = 0;
  for (const auto& f : base) {
    int bit = ctx_.bit_of_member(ai, f);
    if (bit < 0) throw ModelError("base member " + print_formula(f) + " is outside Gamma+");
    s |= 1ULL << bit;
  }
  uint64_t t = revise_mask(s, ai, a);
  const AgentInfo& info = agents_[ai];
  std::vector<FormulaPtr> out;
  const auto& members = ctx_.members(ai);
  for (int m = 0; m < info.member_count; ++m)
    if (t >> (info.base_bit + m) & 1) out.push_back(members[m]);
  return out;
}

bool check_explicit(const State& s0, const Context& c, const FormulaPtr& f, int cap_exponent) {
  CheckEngine engine(c, cap_exponent);
  return engine.check(s0, f);
}

std::vector<State> step_program(const State& s, const Context& c, const ProgramPtr& p,
                                int cap_exponent) {
  CheckEngine engine(c, cap_exponent);
  return engine.successors(s, p);
}

bool consistent_base(const std::vector<FormulaPtr>& b, const Context& c, int cap_exponent) {
  CheckEngine engine(c, cap_exponent);
  return engine.consistent(b);
}

std::vector<FormulaPtr> apply_revise(const std::vector<FormulaPtr>& b, const FormulaPtr& a,
                                     const Context& c, const AgentId& i, int cap_exponent) {
  CheckEngine engine(c, cap_exponent);
  return engine.revise(b, a, i);
}

}  // namespace lca
