// Command-line front end: query checking, vocabulary-wide validity scans,
// QBF export, and the scaling benchmark.
//
// Exit codes: 0 = TRUE/VALID, 1 = FALSE/INVALID, 2 = any error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lca/attitudes.hpp"
#include "lca/bench.hpp"
#include "lca/instance.hpp"
#include "lca/solve.hpp"
#include "lca/translate.hpp"

namespace {

using namespace lca;

bool log_enabled() {
  const char* v = std::getenv("LCA_LOG");
  return v && *v && std::string(v) != "0";
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cerr << "[lca] " << msg << "\n";
}

struct CommonFlags {
  std::string backend = "bdd";
  bool strict_macros = false;
  size_t node_budget = kDefaultNodeBudget;
  int enum_cap = kDefaultEnumCapExponent;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_backend) {
  if (with_backend)
    cmd->add_option("--backend", flags.backend, "bdd | naive | both")
        ->check(CLI::IsMember({"bdd", "naive", "both"}));
  cmd->add_flag("--strict-macros", flags.strict_macros,
                "restrict the link formulas to the declared vocabulary");
  cmd->add_option("--node-budget", flags.node_budget, "BDD node budget");
  cmd->add_option("--enum-cap", flags.enum_cap,
                  "state-space exponent cap for the naive backend");
}

bool solve_symbolic(const Instance& inst, const Context& ctx, const CommonFlags& flags) {
  TranslationSession session(ctx, TranslateOptions{flags.strict_macros});
  QbfPtr body = session.tr(expand_derived(inst.query), session.root_level());
  // The description of the initial state fixes the root level completely, so
  // the outer existential block is eliminated by substitution.
  QbfAssignment env = state_assignment(ctx, session.space(), inst.initial, session.root_level());
  QbfPtr closed = substitute(body, session.space(), env);
  log_line("translated: " + std::to_string(session.levels_used()) + " levels, " +
           std::to_string(session.space().vars_per_level()) + " vars per level");
  return solve_bdd(closed, session.space(), flags.node_budget);
}

int cmd_check(const std::string& path, const CommonFlags& flags) {
  Instance inst = load_instance(path);
  if (!inst.query) throw InstanceError("instance file has no query");
  Context ctx(inst.vocabulary);
  auto start = std::chrono::steady_clock::now();
  bool verdict = false;
  if (flags.backend == "naive") {
    verdict = check_explicit(inst.initial, ctx, expand_derived(inst.query), flags.enum_cap);
  } else if (flags.backend == "bdd") {
    verdict = solve_symbolic(inst, ctx, flags);
  } else {
    bool symbolic = solve_symbolic(inst, ctx, flags);
    bool naive = check_explicit(inst.initial, ctx, expand_derived(inst.query), flags.enum_cap);
    if (symbolic != naive)
      throw std::runtime_error("backend disagreement: bdd=" + std::string(symbolic ? "TRUE" : "FALSE") +
                               " naive=" + std::string(naive ? "TRUE" : "FALSE"));
    verdict = symbolic;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (verdict ? "TRUE" : "FALSE") << "\n";
  std::ostringstream line;
  line << "backend=" << flags.backend << " exponent=" << ctx.exponent() << " time=" << std::fixed
       << std::setprecision(3) << secs << "s";
  std::cout << line.str() << "\n";
  return verdict ? 0 : 1;
}

int cmd_validity(const std::string& path, const std::string& formula_text,
                 const CommonFlags& flags) {
  Instance inst = load_instance(path);
  Context ctx(inst.vocabulary);
  FormulaPtr f = parse_formula(formula_text);
  TranslationSession session(ctx, TranslateOptions{flags.strict_macros});
  QbfPtr body = session.tr(expand_derived(f), session.root_level());

  uint32_t max_level = 0;
  for (const LevelId& l : bound_levels(body)) max_level = std::max(max_level, l.ordinal);
  max_level = std::max(max_level, session.root_level().ordinal);
  const VarSpace& space = session.space();
  BddManager mgr(static_cast<uint32_t>((max_level + 1) * space.vars_per_level()),
                 flags.node_budget);
  BddManager::Ref r = build_bdd(mgr, body, space);
  if (r == BddManager::kTrue) {
    std::cout << "VALID\n";
    return 0;
  }
  std::cout << "INVALID\n";
  // A falsifying assignment of the root level is a counterexample state.
  auto witness = mgr.any_sat(mgr.bdd_not(r));
  if (witness) {
    State s;
    for (int a = 0; a < ctx.atom_count(); ++a)
      if ((*witness)[space.global_index(QVar{session.root_level(), space.atom_tag(a)})])
        s.valuation.insert(ctx.atoms()[a]);
    for (int ai = 0; ai < ctx.agent_count(); ++ai) {
      FormulaSet base;
      const auto& members = ctx.members(ai);
      for (int mi = 0; mi < static_cast<int>(members.size()); ++mi)
        if ((*witness)[space.global_index(QVar{session.root_level(), space.member_tag(ai, mi)})])
          base.insert(members[mi]);
      s.bases[ctx.agents()[ai]] = std::move(base);
    }
    std::cout << "counterexample:\n";
    std::cout << "  valuation:";
    for (const auto& a : s.valuation) std::cout << " " << a.str();
    std::cout << "\n";
    for (const auto& [agent, base] : s.bases) {
      std::cout << "  base[" << agent.name << "]:";
      for (const auto& m : base) std::cout << " " << print_formula(m) << " ;";
      std::cout << "\n";
    }
  }
  return 1;
}

int cmd_export(const std::string& path, const std::string& format, const std::string& out_path,
               const CommonFlags& flags) {
  Instance inst = load_instance(path);
  if (!inst.query) throw InstanceError("instance file has no query");
  Context ctx(inst.vocabulary);
  QbfPtr q = reduce(ctx, inst.initial, inst.query, TranslateOptions{flags.strict_macros});
  VarSpace space(ctx);
  std::string text = format == "qcir" ? export_qcir(q, space) : export_qdimacs(q, space);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
  uint32_t levels = 0;
  for (const LevelId& l : bound_levels(q)) levels = std::max(levels, l.ordinal + 1);
  std::cout << "wrote " << out_path << ": format=" << format << " levels=" << levels
            << " vars_per_level=" << space.vars_per_level() << " total_vars="
            << static_cast<uint64_t>(levels) * space.vars_per_level() << "\n";
  return 0;
}

int cmd_bench(const std::string& agents_list, const std::string& backend,
              const std::string& csv_path, const CommonFlags& flags) {
  std::vector<int> ns;
  std::stringstream ss(agents_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) ns.push_back(std::stoi(item));
  }
  BenchOptions options;
  options.node_budget = flags.node_budget;
  options.enum_cap = flags.enum_cap;
  if (backend == "naive")
    options.backend = Backend::Naive;
  else if (backend == "both")
    options.backend = Backend::Both;
  else if (backend == "export-only")
    options.export_only = true;
  BenchReport report = run_bench(ns, options);
  std::cout << format_table(report);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    out << format_csv(report);
  }
  for (const auto& row : report.rows)
    if (row.result.rfind("error", 0) == 0) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for a multi-agent logic of beliefs, attraction and repulsion "
               "over belief bases"};
  app.require_subcommand(1);

  CommonFlags flags;

  std::string check_file;
  CLI::App* check = app.add_subcommand("check", "decide a query on an instance file");
  check->add_option("file", check_file, "instance JSON file")->required();
  add_common(check, flags, true);

  std::string validity_file, validity_formula;
  CLI::App* validity =
      app.add_subcommand("validity", "decide whether a formula holds at every state");
  validity->add_option("file", validity_file, "instance JSON file (vocabulary part)")->required();
  validity->add_option("formula", validity_formula, "formula text")->required();
  add_common(validity, flags, false);

  std::string export_file, export_format = "qcir", export_out = "out.qcir";
  CLI::App* exp = app.add_subcommand("export", "write the reduction of a query to a file");
  exp->add_option("file", export_file, "instance JSON file")->required();
  exp->add_option("--format", export_format, "qcir | qdimacs")
      ->check(CLI::IsMember({"qcir", "qdimacs"}));
  exp->add_option("-o,--out", export_out, "output path")->required();
  add_common(exp, flags, false);

  std::string bench_agents = "1,10,20", bench_backend = "bdd", bench_csv;
  CLI::App* bench = app.add_subcommand("bench", "run the scaling benchmark");
  bench->add_option("--agents", bench_agents, "comma-separated agent counts");
  bench->add_option("--backend", bench_backend, "bdd | naive | both | export-only")
      ->check(CLI::IsMember({"bdd", "naive", "both", "export-only"}));
  bench->add_option("--csv", bench_csv, "also write the report as CSV");
  add_common(bench, flags, false);

  try {
    app.parse(argc, argv);
    if (check->parsed()) return cmd_check(check_file, flags);
    if (validity->parsed()) return cmd_validity(validity_file, validity_formula, flags);
    if (exp->parsed()) return cmd_export(export_file, export_format, export_out, flags);
    if (bench->parsed()) return cmd_bench(bench_agents, bench_backend, bench_csv, flags);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
