#include "lca/qbf.hpp"

#include <algorithm>
#include <set>

namespace lca {

VarSpace::VarSpace(const Context& ctx) {
  for (const auto& a : ctx.atoms()) names_.push_back(a.str());
  member_base_.resize(ctx.agent_count());
  for (int ai = 0; ai < ctx.agent_count(); ++ai) {
    member_base_[ai] = static_cast<uint32_t>(names_.size());
    for (const auto& f : ctx.members(ai))
      names_.push_back("B(" + ctx.agents()[ai].name + ", " + print_formula(f) + ")");
  }
}

VarSpace::VarSpace(uint32_t vars_per_level) {
  for (uint32_t i = 0; i < vars_per_level; ++i) names_.push_back("v" + std::to_string(i));
}

std::string VarSpace::var_name(QVar v) const {
  return "x" + std::to_string(v.level.ordinal) + "_" + std::to_string(v.tag);
}

std::string VarSpace::describe(QVar v) const {
  return names_[v.tag] + " @ level " + std::to_string(v.level.ordinal);
}

namespace {

QbfPtr make(Qbf q) { return std::make_shared<const Qbf>(std::move(q)); }

bool is_const(const QbfPtr& q, bool v) { return q->kind == QKind::Const && q->value == v; }

}  // namespace

QbfPtr q_const(bool v) {
  Qbf q;
  q.kind = QKind::Const;
  q.value = v;
  return make(std::move(q));
}

QbfPtr q_var(QVar v) {
  Qbf q;
  q.kind = QKind::Var;
  q.var = v;
  return make(std::move(q));
}

QbfPtr q_not(QbfPtr a) {
  if (a->kind == QKind::Const) return q_const(!a->value);
  Qbf q;
  q.kind = QKind::Not;
  q.a = std::move(a);
  return make(std::move(q));
}

QbfPtr q_and(QbfPtr a, QbfPtr b) {
  if (is_const(a, false) || is_const(b, false)) return q_const(false);
  if (is_const(a, true)) return b;
  if (is_const(b, true)) return a;
  Qbf q;
  q.kind = QKind::And;
  q.a = std::move(a);
  q.b = std::move(b);
  return make(std::move(q));
}

QbfPtr q_or(QbfPtr a, QbfPtr b) {
  if (is_const(a, true) || is_const(b, true)) return q_const(true);
  if (is_const(a, false)) return b;
  if (is_const(b, false)) return a;
  Qbf q;
  q.kind = QKind::Or;
  q.a = std::move(a);
  q.b = std::move(b);
  return make(std::move(q));
}

QbfPtr q_implies(QbfPtr a, QbfPtr b) {
  if (is_const(a, false) || is_const(b, true)) return q_const(true);
  if (is_const(a, true)) return b;
  if (is_const(b, false)) return q_not(std::move(a));
  Qbf q;
  q.kind = QKind::Implies;
  q.a = std::move(a);
  q.b = std::move(b);
  return make(std::move(q));
}

QbfPtr q_iff_vars(QVar x, QVar y) {
  return q_and(q_implies(q_var(x), q_var(y)), q_implies(q_var(y), q_var(x)));
}

QbfPtr q_forall(LevelId level, QbfPtr matrix) {
  Qbf q;
  q.kind = QKind::Forall;
  q.level = level;
  q.a = std::move(matrix);
  return make(std::move(q));
}

QbfPtr q_exists(LevelId level, QbfPtr matrix) {
  Qbf q;
  q.kind = QKind::Exists;
  q.level = level;
  q.a = std::move(matrix);
  return make(std::move(q));
}

namespace {

// Dense assignment used by the evaluator: grows on demand, tracks which
// global indices are set.
struct DenseEnv {
  std::vector<int8_t> vals;  // -1 unset

  void ensure(uint64_t idx) {
    if (idx >= vals.size()) vals.resize(idx + 1, -1);
  }
  void set(uint64_t idx, bool v) {
    ensure(idx);
    vals[idx] = v ? 1 : 0;
  }
  void clear(uint64_t idx) { vals[idx] = -1; }
  int8_t get(uint64_t idx) const { return idx < vals.size() ? vals[idx] : -1; }
};

struct NaiveEval {
  const VarSpace& space;
  DenseEnv env;

  bool eval(const Qbf* q) {
    switch (q->kind) {
      case QKind::Const: return q->value;
      case QKind::Var: {
        int8_t v = env.get(space.global_index(q->var));
        if (v < 0)
          throw QbfError("unbound variable " + space.var_name(q->var) + " (" +
                         space.describe(q->var) + ")");
        return v == 1;
      }
      case QKind::Not: return !eval(q->a.get());
      case QKind::And: return eval(q->a.get()) && eval(q->b.get());
      case QKind::Or: return eval(q->a.get()) || eval(q->b.get());
      case QKind::Implies: return !eval(q->a.get()) || eval(q->b.get());
      case QKind::Forall: return block(q, 0, true);
      case QKind::Exists: return block(q, 0, false);
    }
    return false;
  }

  bool block(const Qbf* q, uint32_t tag, bool universal) {
    if (tag == space.vars_per_level()) return eval(q->a.get());
    uint64_t idx = space.global_index(QVar{q->level, tag});
    for (int v = 0; v <= 1; ++v) {
      env.set(idx, v == 1);
      bool r = block(q, tag + 1, universal);
      if (r != universal) {
        env.clear(idx);
        return r;
      }
    }
    env.clear(idx);
    return universal;
  }
};

}  // namespace

bool eval_naive(const QbfPtr& q, const VarSpace& space, const QbfAssignment& env) {
  NaiveEval ev{space, {}};
  for (const auto& [idx, v] : env.entries()) ev.env.set(idx, v);
  return ev.eval(q.get());
}

namespace {

void collect_bound(const Qbf* q, std::vector<LevelId>& out) {
  if (!q) return;
  if (q->kind == QKind::Forall || q->kind == QKind::Exists) out.push_back(q->level);
  collect_bound(q->a.get(), out);
  collect_bound(q->b.get(), out);
}

void collect_free(const Qbf* q, std::set<uint32_t>& bound, std::set<std::pair<uint32_t, uint32_t>>& out) {
  if (!q) return;
  switch (q->kind) {
    case QKind::Var:
      if (!bound.count(q->var.level.ordinal)) out.insert({q->var.level.ordinal, q->var.tag});
      break;
    case QKind::Forall:
    case QKind::Exists: {
      bool inserted = bound.insert(q->level.ordinal).second;
      collect_free(q->a.get(), bound, out);
      if (inserted) bound.erase(q->level.ordinal);
      break;
    }
    default:
      collect_free(q->a.get(), bound, out);
      collect_free(q->b.get(), bound, out);
      break;
  }
}

QbfPtr subst(const Qbf* q, const VarSpace& space, const QbfAssignment& env) {
  switch (q->kind) {
    case QKind::Const: return q_const(q->value);
    case QKind::Var: {
      auto v = env.lookup(space.global_index(q->var));
      if (v) return q_const(*v);
      return q_var(q->var);
    }
    case QKind::Not: return q_not(subst(q->a.get(), space, env));
    case QKind::And: return q_and(subst(q->a.get(), space, env), subst(q->b.get(), space, env));
    case QKind::Or: return q_or(subst(q->a.get(), space, env), subst(q->b.get(), space, env));
    case QKind::Implies:
      return q_implies(subst(q->a.get(), space, env), subst(q->b.get(), space, env));
    case QKind::Forall: return q_forall(q->level, subst(q->a.get(), space, env));
    case QKind::Exists: return q_exists(q->level, subst(q->a.get(), space, env));
  }
  return q_const(false);
}

}  // namespace

std::vector<LevelId> bound_levels(const QbfPtr& q) {
  std::vector<LevelId> out;
  collect_bound(q.get(), out);
  return out;
}

std::vector<QVar> free_vars(const QbfPtr& q) {
  std::set<uint32_t> bound;
  std::set<std::pair<uint32_t, uint32_t>> acc;
  collect_free(q.get(), bound, acc);
  std::vector<QVar> out;
  for (auto [lvl, tag] : acc) out.push_back(QVar{LevelId{lvl}, tag});
  return out;
}

bool is_closed(const QbfPtr& q) { return free_vars(q).empty(); }

QbfPtr substitute(const QbfPtr& q, const VarSpace& space, const QbfAssignment& env) {
  for (const LevelId& lvl : bound_levels(q)) {
    for (uint32_t tag = 0; tag < space.vars_per_level(); ++tag) {
      if (env.lookup(space.global_index(QVar{lvl, tag})))
        throw QbfError("substitution would touch bound level " + std::to_string(lvl.ordinal));
    }
  }
  return subst(q.get(), space, env);
}

}  // namespace lca
