// Quantified Boolean formula IR with leveled variables. One level holds one
// quantified copy of the state variables: every tracked atom plus one belief
// variable per closure member of every agent. Quantifier blocks always bind a
// whole level.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lca/model.hpp"

namespace lca {

struct LevelId {
  uint32_t ordinal = 0;
  auto operator<=>(const LevelId&) const = default;
};

struct QVar {
  LevelId level;
  uint32_t tag = 0;  // index into the per-level variable layout
  auto operator<=>(const QVar&) const = default;
};

// The per-level variable layout shared by all levels: atoms in declaration
// order, then per agent (declaration order) the closure members in closure
// order. Also provides deterministic ASCII names for the exporters.
class VarSpace {
 public:
  explicit VarSpace(const Context& ctx);
  // Anonymous space for standalone QBF work (tests, random instances).
  explicit VarSpace(uint32_t vars_per_level);

  uint32_t vars_per_level() const { return static_cast<uint32_t>(names_.size()); }
  uint64_t global_index(QVar v) const {
    return static_cast<uint64_t>(v.level.ordinal) * vars_per_level() + v.tag;
  }
  uint32_t atom_tag(int atom_idx) const { return static_cast<uint32_t>(atom_idx); }
  uint32_t member_tag(int agent_idx, int member_idx) const {
    return member_base_[agent_idx] + static_cast<uint32_t>(member_idx);
  }
  // "x<level>_<tag>"; stable across runs.
  std::string var_name(QVar v) const;
  const std::string& tag_label(uint32_t tag) const { return names_[tag]; }
  std::string describe(QVar v) const;

 private:
  std::vector<std::string> names_;  // human-readable tag labels
  std::vector<uint32_t> member_base_;
};

class Qbf;
using QbfPtr = std::shared_ptr<const Qbf>;

enum class QKind : uint8_t { Const, Var, Not, And, Or, Implies, Forall, Exists };

class Qbf {
 public:
  QKind kind = QKind::Const;
  bool value = false;  // Const
  QVar var;            // Var
  LevelId level;       // Forall / Exists
  QbfPtr a, b;         // operands; quantifier matrix in a
};

// Connective constructors fold constants; quantifier constructors keep the
// block node even over a constant matrix.
QbfPtr q_const(bool v);
QbfPtr q_var(QVar v);
QbfPtr q_not(QbfPtr a);
QbfPtr q_and(QbfPtr a, QbfPtr b);
QbfPtr q_or(QbfPtr a, QbfPtr b);
QbfPtr q_implies(QbfPtr a, QbfPtr b);
QbfPtr q_iff_vars(QVar x, QVar y);  // (x -> y) & (y -> x)
QbfPtr q_forall(LevelId level, QbfPtr matrix);
QbfPtr q_exists(LevelId level, QbfPtr matrix);

class QbfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Partial assignment of variables, keyed by global index.
class QbfAssignment {
 public:
  void set(QVar v, bool value, const VarSpace& space) { map_[space.global_index(v)] = value; }
  std::optional<bool> lookup(uint64_t global_index) const {
    auto it = map_.find(global_index);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  const std::unordered_map<uint64_t, bool>& entries() const { return map_; }

 private:
  std::unordered_map<uint64_t, bool> map_;
};

// Reference QBF semantics by quantifier expansion: a universal block is the
// conjunction over both values of each level variable in layout order, an
// existential block the disjunction. Exponential; desk scale only. Throws
// QbfError naming the variable when an unbound variable is reached.
bool eval_naive(const QbfPtr& q, const VarSpace& space, const QbfAssignment& env = {});

// Constant-folds the assigned variables away; env must only mention variables
// not bound by any block of q.
QbfPtr substitute(const QbfPtr& q, const VarSpace& space, const QbfAssignment& env);

// Levels bound by quantifier blocks anywhere in q (in syntactic order).
std::vector<LevelId> bound_levels(const QbfPtr& q);
// Variables occurring free in q.
std::vector<QVar> free_vars(const QbfPtr& q);
bool is_closed(const QbfPtr& q);

}  // namespace lca
