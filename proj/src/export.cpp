// Exporters to QCIR-G14 (non-prenex) and QDIMACS (prenex CNF via Tseitin).

#include <map>
#include <sstream>

#include "lca/solve.hpp"

namespace lca {

namespace {

struct QcirWriter {
  const VarSpace& space;
  std::ostringstream gates;
  std::map<const Qbf*, std::string> memo;
  int next_gate = 1;
  std::string true_gate, false_gate;

  std::string fresh_gate() { return "g" + std::to_string(next_gate++); }

  std::string constant(bool v) {
    std::string& g = v ? true_gate : false_gate;
    if (g.empty()) {
      g = fresh_gate();
      gates << g << " = " << (v ? "and()" : "or()") << "\n";
    }
    return g;
  }

  static std::string negate(const std::string& lit) {
    return lit[0] == '-' ? lit.substr(1) : "-" + lit;
  }

  // Chains of one connective collapse into a single n-ary gate.
  void flatten(const Qbf* q, QKind k, std::vector<const Qbf*>& out) {
    if (q->kind == k) {
      flatten(q->a.get(), k, out);
      flatten(q->b.get(), k, out);
    } else {
      out.push_back(q);
    }
  }

  std::string emit(const Qbf* q) {
    auto it = memo.find(q);
    if (it != memo.end()) return it->second;
    std::string lit;
    switch (q->kind) {
      case QKind::Const: lit = constant(q->value); break;
      case QKind::Var: lit = space.var_name(q->var); break;
      case QKind::Not: lit = negate(emit(q->a.get())); break;
      case QKind::And:
      case QKind::Or: {
        std::vector<const Qbf*> args;
        flatten(q, q->kind, args);
        std::string joined;
        for (const Qbf* a : args) {
          if (!joined.empty()) joined += ", ";
          joined += emit(a);
        }
        lit = fresh_gate();
        gates << lit << " = " << (q->kind == QKind::And ? "and(" : "or(") << joined << ")\n";
        break;
      }
      case QKind::Implies: {
        std::string a = emit(q->a.get());
        std::string b = emit(q->b.get());
        lit = fresh_gate();
        gates << lit << " = or(" << negate(a) << ", " << b << ")\n";
        break;
      }
      case QKind::Forall:
      case QKind::Exists: {
        std::string m = emit(q->a.get());
        if (space.vars_per_level() == 0) {
          lit = m;
          break;
        }
        lit = fresh_gate();
        gates << lit << " = " << (q->kind == QKind::Forall ? "forall(" : "exists(");
        for (uint32_t tag = 0; tag < space.vars_per_level(); ++tag) {
          if (tag) gates << ", ";
          gates << space.var_name(QVar{q->level, tag});
        }
        gates << "; " << m << ")\n";
        break;
      }
    }
    memo[q] = lit;
    return lit;
  }
};

}  // namespace

std::string export_qcir(const QbfPtr& q, const VarSpace& space) {
  QcirWriter w{space, {}, {}, 1, {}, {}};
  std::string out_lit = w.emit(q.get());
  std::ostringstream out;
  out << "#QCIR-G14\n";
  out << "# variable naming: x<level>_<tag>\n";
  for (uint32_t tag = 0; tag < space.vars_per_level(); ++tag)
    out << "# tag " << tag << " : " << space.tag_label(tag) << "\n";
  out << "output(" << out_lit << ")\n";
  out << w.gates.str();
  return out.str();
}

// ---------------------------------------------------------------------------
// QDIMACS.

namespace {

// Negation normal form with every quantifier block in positive position.
QbfPtr nnf(const Qbf* q, bool positive) {
  switch (q->kind) {
    case QKind::Const: return q_const(positive ? q->value : !q->value);
    case QKind::Var: return positive ? q_var(q->var) : q_not(q_var(q->var));
    case QKind::Not: return nnf(q->a.get(), !positive);
    case QKind::And: {
      QbfPtr a = nnf(q->a.get(), positive);
      QbfPtr b = nnf(q->b.get(), positive);
      return positive ? q_and(std::move(a), std::move(b)) : q_or(std::move(a), std::move(b));
    }
    case QKind::Or: {
      QbfPtr a = nnf(q->a.get(), positive);
      QbfPtr b = nnf(q->b.get(), positive);
      return positive ? q_or(std::move(a), std::move(b)) : q_and(std::move(a), std::move(b));
    }
    case QKind::Implies: {
      QbfPtr a = nnf(q->a.get(), !positive);
      QbfPtr b = nnf(q->b.get(), positive);
      return positive ? q_or(std::move(a), std::move(b)) : q_and(std::move(a), std::move(b));
    }
    case QKind::Forall: {
      QbfPtr m = nnf(q->a.get(), positive);
      return positive ? q_forall(q->level, std::move(m)) : q_exists(q->level, std::move(m));
    }
    case QKind::Exists: {
      QbfPtr m = nnf(q->a.get(), positive);
      return positive ? q_exists(q->level, std::move(m)) : q_forall(q->level, std::move(m));
    }
  }
  return q_const(false);
}

// Hoists blocks in syntactic (pre-)order and strips them from the matrix.
void collect_prefix(const Qbf* q, std::vector<std::pair<bool, LevelId>>& prefix) {
  if (!q) return;
  if (q->kind == QKind::Forall || q->kind == QKind::Exists)
    prefix.emplace_back(q->kind == QKind::Forall, q->level);
  collect_prefix(q->a.get(), prefix);
  collect_prefix(q->b.get(), prefix);
}

QbfPtr strip_blocks(const Qbf* q) {
  switch (q->kind) {
    case QKind::Const: return q_const(q->value);
    case QKind::Var: return q_var(q->var);
    case QKind::Not: return q_not(strip_blocks(q->a.get()));
    case QKind::And: return q_and(strip_blocks(q->a.get()), strip_blocks(q->b.get()));
    case QKind::Or: return q_or(strip_blocks(q->a.get()), strip_blocks(q->b.get()));
    case QKind::Implies: return q_implies(strip_blocks(q->a.get()), strip_blocks(q->b.get()));
    case QKind::Forall:
    case QKind::Exists: return strip_blocks(q->a.get());
  }
  return q_const(false);
}

struct Tseitin {
  const VarSpace& space;
  std::map<uint64_t, int> var_of;  // global index -> dimacs variable
  int next_var = 1;
  std::vector<std::vector<int>> clauses;
  std::map<const Qbf*, int> memo;

  int dimacs_var(QVar v) {
    uint64_t idx = space.global_index(v);
    auto it = var_of.find(idx);
    if (it != var_of.end()) return it->second;
    return var_of.emplace(idx, next_var++).first->second;
  }

  int aux() { return next_var++; }

  int lit(const Qbf* q) {
    auto it = memo.find(q);
    if (it != memo.end()) return it->second;
    int out = 0;
    switch (q->kind) {
      case QKind::Var: out = dimacs_var(q->var); break;
      case QKind::Not: out = -lit(q->a.get()); break;
      case QKind::And: {
        int a = lit(q->a.get());
        int b = lit(q->b.get());
        out = aux();
        clauses.push_back({-out, a});
        clauses.push_back({-out, b});
        clauses.push_back({out, -a, -b});
        break;
      }
      case QKind::Or: {
        int a = lit(q->a.get());
        int b = lit(q->b.get());
        out = aux();
        clauses.push_back({-a, out});
        clauses.push_back({-b, out});
        clauses.push_back({-out, a, b});
        break;
      }
      default: throw QbfError("unexpected node in a Tseitin matrix");
    }
    memo[q] = out;
    return out;
  }
};

std::string constant_stub(bool value) {
  if (value) return "p cnf 1 1\ne 1 0\n1 -1 0\n";
  return "p cnf 1 2\ne 1 0\n1 0\n-1 0\n";
}

}  // namespace

std::string export_qdimacs(const QbfPtr& q, const VarSpace& space) {
  QbfPtr normalized = nnf(q.get(), true);
  std::vector<std::pair<bool, LevelId>> prefix;
  collect_prefix(normalized.get(), prefix);
  QbfPtr matrix = strip_blocks(normalized.get());
  if (matrix->kind == QKind::Const) return constant_stub(matrix->value);

  Tseitin ts{space, {}, 1, {}, {}};
  // Number the prefix variables first, level-major in hoisting order.
  std::vector<std::pair<bool, std::vector<int>>> blocks;
  for (const auto& [universal, level] : prefix) {
    std::vector<int> vars;
    for (uint32_t tag = 0; tag < space.vars_per_level(); ++tag)
      vars.push_back(ts.dimacs_var(QVar{level, tag}));
    if (!vars.empty()) blocks.emplace_back(universal, std::move(vars));
  }
  int root = ts.lit(matrix.get());
  ts.clauses.push_back({root});

  // Auxiliary variables join the innermost existential block.
  int first_aux = 1;
  for (const auto& [universal, vars] : blocks) first_aux += static_cast<int>(vars.size());
  std::vector<int> aux_vars;
  for (int v = first_aux; v < ts.next_var; ++v) aux_vars.push_back(v);
  if (!aux_vars.empty()) {
    if (!blocks.empty() && !blocks.back().first) {
      for (int v : aux_vars) blocks.back().second.push_back(v);
    } else {
      blocks.emplace_back(false, std::move(aux_vars));
    }
  }

  std::ostringstream out;
  out << "p cnf " << ts.next_var - 1 << " " << ts.clauses.size() << "\n";
  // Merge adjacent blocks of the same kind.
  for (size_t i = 0; i < blocks.size();) {
    bool universal = blocks[i].first;
    out << (universal ? "a" : "e");
    size_t j = i;
    for (; j < blocks.size() && blocks[j].first == universal; ++j)
      for (int v : blocks[j].second) out << " " << v;
    out << " 0\n";
    i = j;
  }
  for (const auto& clause : ts.clauses) {
    for (int l : clause) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

}  // namespace lca
