// Explicit-state semantics: states, vocabulary closure, the epistemic /
// attraction / repulsion relations, and the brute-force satisfaction checker
// used as the reference backend.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lca/syntax.hpp"

namespace lca {

using FormulaSet = std::set<FormulaPtr, FormulaLess>;
using AtomSet = std::set<Atom>;

struct State {
  std::map<AgentId, FormulaSet> bases;
  AtomSet valuation;
};

bool state_equal(const State& a, const State& b);

// Per-agent vocabularies plus the ordered list of tracked atoms. Atom order
// and per-agent declaration order are fixed and drive the variable ordering
// everywhere downstream.
struct VocabularyProfile {
  std::vector<AgentId> agents;
  std::map<AgentId, std::vector<FormulaPtr>> gammas;
  std::vector<Atom> atoms;
};

struct ClosedVocabulary {
  std::vector<AgentId> agents;
  // Closure order: declared members, then alpha -> rew(i) per member, then
  // alpha -> pun(i) per member, deduplicated structurally.
  std::map<AgentId, std::vector<FormulaPtr>> gamma_plus;
};

ClosedVocabulary close_vocabulary(const VocabularyProfile& v);

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceededError : public ModelError {
 public:
  CapExceededError(int required, int cap)
      : ModelError("state space needs exponent " + std::to_string(required) +
                   " which exceeds the enumeration cap of 2^" + std::to_string(cap)),
        required_(required) {}
  int required_exponent() const { return required_; }

 private:
  int required_;
};

constexpr int kDefaultEnumCapExponent = 24;

// A vocabulary profile with its closure and the induced bit layout over
// (tracked atoms, per-agent closure members). The context never materializes
// its state set; |S_Gamma| = 2^exponent().
class Context {
 public:
  explicit Context(VocabularyProfile profile);

  const VocabularyProfile& profile() const { return profile_; }
  const ClosedVocabulary& closed() const { return closed_; }
  int exponent() const { return total_bits_; }

  int atom_count() const { return static_cast<int>(profile_.atoms.size()); }
  const std::vector<Atom>& atoms() const { return profile_.atoms; }
  int agent_count() const { return static_cast<int>(profile_.agents.size()); }
  const std::vector<AgentId>& agents() const { return profile_.agents; }
  int agent_index(const AgentId& a) const;  // -1 if undeclared
  const std::vector<FormulaPtr>& members(int agent_idx) const;

  // Bit layout: atoms first (declaration order), then per agent the closure
  // members in closure order. Returns -1 when not tracked.
  int bit_of_atom(const Atom& a) const;
  int bit_of_member(int agent_idx, const FormulaPtr& f) const;
  int member_base_bit(int agent_idx) const { return member_base_[agent_idx]; }

  bool contains(const State& s) const;
  uint64_t pack(const State& s) const;  // requires exponent() <= 63 and contains(s)
  State unpack(uint64_t bits) const;

 private:
  VocabularyProfile profile_;
  ClosedVocabulary closed_;
  std::map<Atom, int> atom_bit_;
  std::vector<int> member_base_;
  std::vector<std::vector<std::pair<FormulaPtr, int>>> member_bits_;  // per agent, sorted
  int total_bits_ = 0;
};

// Def. of base-language satisfaction: atoms via the valuation, explicit
// belief via structural membership, Boolean connectives as usual. Pure on the
// rich state; no vocabulary needed.
bool sat_base(const State& s, const FormulaPtr& a);

// Appetitive and aversive desire bases: members alpha with alpha -> rew(i)
// (resp. alpha -> pun(i)) in agent i's base, by top-level shape match.
std::pair<std::vector<FormulaPtr>, std::vector<FormulaPtr>> desire_bases(const State& s,
                                                                         const AgentId& i);

bool rel_epistemic(const State& s, const State& t, const AgentId& i);
bool rel_attract(const State& s, const State& t, const AgentId& i);
bool rel_repulse(const State& s, const State& t, const AgentId& i);

// Enumerates S_Gamma in the deterministic order induced by the bit layout
// (state k has bit b set iff variable b is true). Throws CapExceededError when
// 2^exponent would exceed 2^cap_exponent.
void for_each_state(const Context& c, const std::function<void(const State&)>& fn,
                    int cap_exponent = kDefaultEnumCapExponent);
std::vector<State> enumerate_states(const Context& c,
                                    int cap_exponent = kDefaultEnumCapExponent);

// The explicit-state model checker. One engine per (context, query session);
// memoizes subformula truth per packed state.
class CheckEngine {
 public:
  explicit CheckEngine(const Context& ctx, int cap_exponent = kDefaultEnumCapExponent);

  bool check(const State& s0, const FormulaPtr& f);
  std::vector<State> successors(const State& s, const ProgramPtr& p);
  bool consistent(const std::vector<FormulaPtr>& members);
  std::vector<FormulaPtr> revise(const std::vector<FormulaPtr>& base, const FormulaPtr& a,
                                 const AgentId& i);

  bool check_packed(uint64_t s, const Formula* f);
  std::vector<uint64_t> successors_packed(uint64_t s, const Program* p);

 private:
  struct AgentInfo {
    int base_bit;
    int member_count;
    std::vector<int> appetitive_bits;          // bits of alpha -> rew(i) members
    std::vector<const Formula*> appetitive;    // the matching alpha
    std::vector<int> aversive_bits;
    std::vector<const Formula*> aversive;
  };

  bool eval_l0(uint64_t s, const Formula* f) const;
  // Var-index support of an L0 formula (bits its truth value can read).
  uint64_t support(const Formula* f);
  bool scan_modal(uint64_t s, const Formula* f);
  bool consistent_mask(int agent_idx, uint64_t member_mask);
  uint64_t revise_mask(uint64_t s, int agent_idx, const FormulaPtr& a);

  template <class Pred>
  bool for_all_states(uint64_t support_mask, bool projected, Pred pred);

  struct NodeStateHash {
    size_t operator()(const std::pair<const Formula*, uint64_t>& p) const {
      size_t h = std::hash<const void*>{}(p.first);
      return h ^ (p.second + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
  };
  struct IntMaskHash {
    size_t operator()(const std::pair<int, uint64_t>& p) const {
      return std::hash<uint64_t>{}((static_cast<uint64_t>(p.first) << 56) ^ p.second);
    }
  };

  const Context& ctx_;
  int cap_;
  std::vector<AgentInfo> agents_;
  std::vector<FormulaPtr> retained_;  // keeps memoized node addresses alive
  std::unordered_map<std::pair<const Formula*, uint64_t>, bool, NodeStateHash> memo_;
  std::unordered_map<const Formula*, uint64_t> support_memo_;
  std::unordered_map<const Formula*, int> l0_memo_;
  std::unordered_map<std::pair<int, uint64_t>, bool, IntMaskHash> consistency_memo_;
};

// Convenience wrappers matching the operation-level API.
bool check_explicit(const State& s0, const Context& c, const FormulaPtr& f,
                    int cap_exponent = kDefaultEnumCapExponent);
std::vector<State> step_program(const State& s, const Context& c, const ProgramPtr& p,
                                int cap_exponent = kDefaultEnumCapExponent);
bool consistent_base(const std::vector<FormulaPtr>& b, const Context& c,
                     int cap_exponent = kDefaultEnumCapExponent);
std::vector<FormulaPtr> apply_revise(const std::vector<FormulaPtr>& b, const FormulaPtr& a,
                                     const Context& c, const AgentId& i,
                                     int cap_exponent = kDefaultEnumCapExponent);

}  // namespace lca
