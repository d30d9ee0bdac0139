#include <algorithm>

#include "lca/solve.hpp"

namespace lca {

namespace {

constexpr int kOpAnd = 0;
constexpr int kOpOr = 1;
constexpr int kOpNot = 2;
constexpr int kOpForall = 3;  // op | (var << 3) keys quantification
constexpr int kOpExists = 4;

constexpr size_t kInitialUnique = 1 << 16;
constexpr size_t kCacheSize = 1 << 20;

uint64_t mix(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

}  // namespace

BddManager::BddManager(uint32_t var_count, size_t node_budget)
    : var_count_(var_count), budget_(std::min<size_t>(node_budget, (1ULL << 30) - 1)) {
  nodes_.reserve(kInitialUnique);
  // Terminals carry a sentinel variable larger than every real one.
  nodes_.push_back({var_count_, kFalse, kFalse});
  nodes_.push_back({var_count_, kTrue, kTrue});
  unique_.assign(kInitialUnique, UINT32_MAX);
  unique_mask_ = kInitialUnique - 1;
  cache_.assign(kCacheSize, {});
}

size_t BddManager::unique_slot(uint32_t var, Ref low, Ref high) const {
  uint64_t h = mix((static_cast<uint64_t>(var) << 40) ^ (static_cast<uint64_t>(low) << 20) ^ high);
  return h & unique_mask_;
}

void BddManager::grow_unique() {
  size_t new_size = (unique_mask_ + 1) * 2;
  unique_.assign(new_size, UINT32_MAX);
  unique_mask_ = new_size - 1;
  for (uint32_t idx = 2; idx < nodes_.size(); ++idx) {
    const Node& n = nodes_[idx];
    size_t slot = unique_slot(n.var, n.low, n.high);
    while (unique_[slot] != UINT32_MAX) slot = (slot + 1) & unique_mask_;
    unique_[slot] = idx;
  }
}

BddManager::Ref BddManager::mk(uint32_t var, Ref low, Ref high) {
  if (low == high) return low;
  size_t slot = unique_slot(var, low, high);
  while (unique_[slot] != UINT32_MAX) {
    const Node& n = nodes_[unique_[slot]];
    if (n.var == var && n.low == low && n.high == high) return unique_[slot];
    slot = (slot + 1) & unique_mask_;
  }
  if (nodes_.size() >= budget_) throw BddBudgetError(budget_, where_);
  nodes_.push_back({var, low, high});
  Ref idx = static_cast<Ref>(nodes_.size() - 1);
  unique_[slot] = idx;
  if (nodes_.size() * 2 > unique_mask_) grow_unique();
  return idx;
}

BddManager::Ref BddManager::var(uint32_t index) { return mk(index, kFalse, kTrue); }
BddManager::Ref BddManager::nvar(uint32_t index) { return mk(index, kTrue, kFalse); }

// Collision-free for refs and variable indices below 2^30 (the budget is
// clamped accordingly).
uint64_t BddManager::cache_key(int op, Ref f, Ref g) const {
  return static_cast<uint64_t>(op) | (static_cast<uint64_t>(f) << 3) |
         (static_cast<uint64_t>(g) << 33);
}

BddManager::Ref BddManager::apply(int op, Ref f, Ref g) {
  switch (op) {
    case kOpAnd:
      if (f == kFalse || g == kFalse) return kFalse;
      if (f == kTrue) return g;
      if (g == kTrue) return f;
      if (f == g) return f;
      if (f > g) std::swap(f, g);
      break;
    case kOpOr:
      if (f == kTrue || g == kTrue) return kTrue;
      if (f == kFalse) return g;
      if (g == kFalse) return f;
      if (f == g) return f;
      if (f > g) std::swap(f, g);
      break;
    case kOpNot:
      if (f == kFalse) return kTrue;
      if (f == kTrue) return kFalse;
      break;
    default: break;
  }
  uint64_t key = mix(cache_key(op, f, g));
  CacheEntry& entry = cache_[key & (kCacheSize - 1)];
  if (entry.key == cache_key(op, f, g)) return entry.result;

  Ref result;
  if (op == kOpNot) {
    Node n = nodes_[f];  // by value: mk() may reallocate the node pool
    result = mk(n.var, apply(kOpNot, n.low, 0), apply(kOpNot, n.high, 0));
  } else {
    uint32_t v = std::min(nodes_[f].var, nodes_[g].var);
    Ref f0 = nodes_[f].var == v ? nodes_[f].low : f;
    Ref f1 = nodes_[f].var == v ? nodes_[f].high : f;
    Ref g0 = nodes_[g].var == v ? nodes_[g].low : g;
    Ref g1 = nodes_[g].var == v ? nodes_[g].high : g;
    result = mk(v, apply(op, f0, g0), apply(op, f1, g1));
  }
  entry.key = cache_key(op, f, g);
  entry.result = result;
  return result;
}

BddManager::Ref BddManager::bdd_not(Ref f) { return apply(kOpNot, f, 0); }
BddManager::Ref BddManager::bdd_and(Ref f, Ref g) { return apply(kOpAnd, f, g); }
BddManager::Ref BddManager::bdd_or(Ref f, Ref g) { return apply(kOpOr, f, g); }
BddManager::Ref BddManager::bdd_implies(Ref f, Ref g) { return bdd_or(bdd_not(f), g); }
BddManager::Ref BddManager::bdd_iff(Ref f, Ref g) {
  return bdd_or(bdd_and(f, g), bdd_and(bdd_not(f), bdd_not(g)));
}

BddManager::Ref BddManager::quantify(Ref f, uint32_t index, bool universal) {
  if (is_terminal(f) || nodes_[f].var > index) return f;
  int op = universal ? kOpForall : kOpExists;
  uint64_t raw = cache_key(op, f, index);
  CacheEntry& entry = cache_[mix(raw) & (kCacheSize - 1)];
  if (entry.key == raw) return entry.result;
  Ref result;
  Node n = nodes_[f];  // by value: mk() may reallocate the node pool
  if (n.var == index) {
    result = universal ? bdd_and(n.low, n.high) : bdd_or(n.low, n.high);
  } else {
    Ref lo = quantify(n.low, index, universal);
    Ref hi = quantify(n.high, index, universal);
    result = mk(n.var, lo, hi);
  }
  // apply() may have evicted the slot; refresh it.
  CacheEntry& entry2 = cache_[mix(raw) & (kCacheSize - 1)];
  entry2.key = raw;
  entry2.result = result;
  return result;
}

BddManager::Ref BddManager::quantify_range(Ref f, uint32_t first, uint32_t last, bool universal) {
  for (uint32_t v = last + 1; v-- > first;) {
    f = quantify(f, v, universal);
    if (is_terminal(f)) break;
  }
  return f;
}

std::optional<std::vector<bool>> BddManager::any_sat(Ref f) const {
  if (f == kFalse) return std::nullopt;
  std::vector<bool> out(var_count_, false);
  Ref cur = f;
  while (!is_terminal(cur)) {
    const Node& n = nodes_[cur];
    if (n.low != kFalse) {
      cur = n.low;
    } else {
      out[n.var] = true;
      cur = n.high;
    }
  }
  return out;
}

namespace {

struct BddBuilder {
  BddManager& mgr;
  const VarSpace& space;
  std::vector<std::string> path;

  static void flatten(const Qbf* q, QKind k, std::vector<const Qbf*>& out) {
    if (q->kind == k) {
      flatten(q->a.get(), k, out);
      flatten(q->b.get(), k, out);
    } else {
      out.push_back(q);
    }
  }

  BddManager::Ref build(const Qbf* q) {
    switch (q->kind) {
      case QKind::Const: return q->value ? BddManager::kTrue : BddManager::kFalse;
      case QKind::Var: {
        uint64_t idx = space.global_index(q->var);
        if (idx >= mgr.var_count()) throw QbfError("variable beyond the manager's order");
        return mgr.var(static_cast<uint32_t>(idx));
      }
      case QKind::Not: return mgr.bdd_not(build(q->a.get()));
      // Conjunction chains are conjoined left to right so that constraining
      // cubes (state descriptions, program-step literals) collapse the
      // equality macros as they stream in, instead of each macro being built
      // standalone (the standalone form is exponential in the level width).
      case QKind::And: {
        std::vector<const Qbf*> terms;
        flatten(q, QKind::And, terms);
        BddManager::Ref acc = BddManager::kTrue;
        for (const Qbf* term : terms) {
          acc = mgr.bdd_and(acc, build(term));
          if (acc == BddManager::kFalse) break;
        }
        return acc;
      }
      case QKind::Or: {
        std::vector<const Qbf*> terms;
        flatten(q, QKind::Or, terms);
        BddManager::Ref acc = BddManager::kFalse;
        for (const Qbf* term : terms) {
          acc = mgr.bdd_or(acc, build(term));
          if (acc == BddManager::kTrue) break;
        }
        return acc;
      }
      case QKind::Implies: {
        BddManager::Ref l = build(q->a.get());
        if (l == BddManager::kFalse) return BddManager::kTrue;
        return mgr.bdd_implies(l, build(q->b.get()));
      }
      case QKind::Forall:
      case QKind::Exists: {
        bool universal = q->kind == QKind::Forall;
        path.push_back((universal ? "forall level " : "exists level ") +
                       std::to_string(q->level.ordinal));
        mgr.set_where(path.back());
        BddManager::Ref m = build(q->a.get());
        uint32_t first = static_cast<uint32_t>(
            space.global_index(QVar{q->level, 0}));
        uint32_t last = first + space.vars_per_level() - 1;
        BddManager::Ref r =
            space.vars_per_level() == 0 ? m : mgr.quantify_range(m, first, last, universal);
        path.pop_back();
        mgr.set_where(path.empty() ? "" : path.back());
        return r;
      }
    }
    return BddManager::kFalse;
  }
};

}  // namespace

BddManager::Ref build_bdd(BddManager& mgr, const QbfPtr& q, const VarSpace& space) {
  BddBuilder builder{mgr, space, {}};
  return builder.build(q.get());
}

bool solve_bdd(const QbfPtr& q, const VarSpace& space, size_t node_budget) {
  uint32_t max_level = 0;
  for (const LevelId& l : bound_levels(q)) max_level = std::max(max_level, l.ordinal);
  for (const QVar& v : free_vars(q))
    throw QbfError("solve_bdd needs a closed formula; free variable " + space.var_name(v));
  uint64_t vars = static_cast<uint64_t>(max_level + 1) * space.vars_per_level();
  if (vars > UINT32_MAX) throw QbfError("variable order too large");
  BddManager mgr(static_cast<uint32_t>(vars), node_budget);
  BddManager::Ref r = build_bdd(mgr, q, space);
  if (!mgr.is_terminal(r)) throw QbfError("formula did not close under quantification");
  return r == BddManager::kTrue;
}

}  // namespace lca
