// Solving backends for closed QBF: a reduced ordered BDD engine with
// blockwise quantifier elimination, and exporters to the QCIR-G14 and
// QDIMACS interchange formats.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lca/qbf.hpp"

namespace lca {

constexpr size_t kDefaultNodeBudget = 10'000'000;

class BddBudgetError : public std::runtime_error {
 public:
  BddBudgetError(size_t budget, const std::string& where)
      : std::runtime_error("BDD node budget of " + std::to_string(budget) + " exceeded" +
                           (where.empty() ? "" : " while building " + where)),
        where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Hash-consed ROBDD manager without complemented edges. Nodes are reduced
// (low != high) and ordered (variable indices strictly increase toward the
// terminals); equal functions share one root within a manager.
class BddManager {
 public:
  using Ref = uint32_t;
  static constexpr Ref kFalse = 0;
  static constexpr Ref kTrue = 1;

  explicit BddManager(uint32_t var_count, size_t node_budget = kDefaultNodeBudget);

  Ref var(uint32_t index);
  Ref nvar(uint32_t index);
  Ref bdd_not(Ref f);
  Ref bdd_and(Ref f, Ref g);
  Ref bdd_or(Ref f, Ref g);
  Ref bdd_implies(Ref f, Ref g);
  Ref bdd_iff(Ref f, Ref g);
  // Quantifies one variable: forall x.f = f|x=0 & f|x=1, exists dually.
  Ref quantify(Ref f, uint32_t index, bool universal);
  // Quantifies every variable in [first, last], innermost first.
  Ref quantify_range(Ref f, uint32_t first, uint32_t last, bool universal);

  uint32_t var_of(Ref f) const { return nodes_[f].var; }
  Ref low(Ref f) const { return nodes_[f].low; }
  Ref high(Ref f) const { return nodes_[f].high; }
  bool is_terminal(Ref f) const { return f <= kTrue; }
  size_t node_count() const { return nodes_.size(); }
  uint32_t var_count() const { return var_count_; }

  // One satisfying assignment (variables absent from the path default to
  // false), or nullopt when f is the false terminal. Follows low branches
  // first, so the lexicographically least witness is produced.
  std::optional<std::vector<bool>> any_sat(Ref f) const;

  void set_where(std::string where) { where_ = std::move(where); }

 private:
  struct Node {
    uint32_t var;
    Ref low, high;
  };

  Ref mk(uint32_t var, Ref low, Ref high);
  Ref apply(int op, Ref f, Ref g);
  uint64_t cache_key(int op, Ref f, Ref g) const;

  uint32_t var_count_;
  size_t budget_;
  std::vector<Node> nodes_;
  std::vector<uint32_t> unique_;  // open-addressed table of node indices
  size_t unique_mask_;
  struct CacheEntry {
    uint64_t key = ~0ULL;
    Ref result = 0;
  };
  std::vector<CacheEntry> cache_;
  std::string where_;

  void grow_unique();
  size_t unique_slot(uint32_t var, Ref low, Ref high) const;
};

// Builds the BDD of q bottom-up, eliminating each quantifier block when it is
// reached. Free variables of q stay as BDD variables of the result.
BddManager::Ref build_bdd(BddManager& mgr, const QbfPtr& q, const VarSpace& space);

// Evaluates a closed q; throws QbfError when q has free variables and
// BddBudgetError when the node budget is hit.
bool solve_bdd(const QbfPtr& q, const VarSpace& space, size_t node_budget = kDefaultNodeBudget);

// QCIR-G14, non-prenex. Variable names are deterministic functions of
// (level ordinal, tag); a comment block maps each tag back to its meaning.
std::string export_qcir(const QbfPtr& q, const VarSpace& space);

// Prenex QDIMACS: blocks hoisted in syntactic order (levels are disjoint so
// no capture can occur), matrix Tseitin-transformed, auxiliary variables
// appended to the innermost existential block. A constant formula becomes the
// canonical stub: true = "p cnf 1 1" with the tautological clause "1 -1 0",
// false = "p cnf 1 2" with the clauses "1 0" and "-1 0".
std::string export_qdimacs(const QbfPtr& q, const VarSpace& space);

}  // namespace lca
