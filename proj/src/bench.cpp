#include "lca/bench.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include "lca/attitudes.hpp"
#include "lca/solve.hpp"
#include "lca/translate.hpp"

namespace lca {

namespace {

std::string child_name(int n, int i) { return n == 1 ? "1" : std::to_string(i + 1); }

FormulaPtr conj_others_not_tidy(const std::vector<FormulaPtr>& td, int i) {
  FormulaPtr out;
  for (size_t j = 0; j < td.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    FormulaPtr lit = mk_not(td[j]);
    out = out ? mk_and(std::move(out), std::move(lit)) : std::move(lit);
  }
  return out;  // null when there is a single child
}

FormulaPtr disj_others_tidy(const std::vector<FormulaPtr>& td, int i) {
  FormulaPtr out;
  for (size_t j = 0; j < td.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    out = out ? mk_or(std::move(out), td[j]) : td[j];
  }
  return out;
}

}  // namespace

TidyScenario generate_tidy(int n) {
  if (n < 1) throw ModelError("the scenario needs at least one agent");
  TidyScenario sc;
  sc.n = n;

  std::vector<AgentId> agents;
  std::vector<FormulaPtr> td, ti, cr, tv;
  for (int i = 0; i < n; ++i) {
    AgentId a{child_name(n, i)};
    agents.push_back(a);
    td.push_back(mk_atom(plain_atom("td_" + a.name)));
    ti.push_back(mk_atom(plain_atom("ti_" + a.name)));
    cr.push_back(mk_atom(plain_atom("cr_" + a.name)));
    tv.push_back(mk_atom(plain_atom("tv_" + a.name)));
  }

  sc.vocabulary.agents = agents;
  for (int i = 0; i < n; ++i) {
    const AgentId& a = agents[i];
    sc.vocabulary.atoms.push_back(td[i]->atom);
    sc.vocabulary.atoms.push_back(ti[i]->atom);
    sc.vocabulary.atoms.push_back(cr[i]->atom);
    sc.vocabulary.atoms.push_back(tv[i]->atom);
    // Tidying alone is tiring; being tired and losing TV are bad; crepes are
    // good. For one child "alone" degenerates to plain tidying.
    FormulaPtr others = conj_others_not_tidy(td, i);
    FormulaPtr tiring_lhs = others ? mk_and(std::move(others), td[i]) : td[i];
    sc.vocabulary.gammas[a] = {
        mk_implies(std::move(tiring_lhs), ti[i]),
        mk_implies(ti[i], mk_atom(punish_atom(a))),
        mk_implies(cr[i], mk_atom(reward_atom(a))),
        mk_implies(mk_not(tv[i]), mk_atom(punish_atom(a))),
    };
  }
  for (const auto& a : agents) {
    sc.vocabulary.atoms.push_back(reward_atom(a));
    sc.vocabulary.atoms.push_back(punish_atom(a));
  }

  for (int i = 0; i < n; ++i) {
    FormulaSet base;
    for (const auto& f : sc.vocabulary.gammas[agents[i]]) base.insert(f);
    sc.initial.bases[agents[i]] = std::move(base);
  }

  // Every child realistically prefers having help over tidying up alone.
  FormulaPtr query;
  for (int i = 0; i < n; ++i) {
    FormulaPtr others = conj_others_not_tidy(td, i);
    FormulaPtr alone = others ? mk_and(std::move(others), td[i]) : td[i];
    FormulaPtr helped_disj = disj_others_tidy(td, i);
    FormulaPtr helped = helped_disj ? mk_implies(td[i], std::move(helped_disj)) : mk_not(td[i]);
    FormulaPtr pref = mk_pref(DKind::RPref, agents[i], std::move(alone), std::move(helped));
    query = query ? mk_and(std::move(query), std::move(pref)) : std::move(pref);
  }
  sc.preference_query = std::move(query);

  if (n == 1) {
    const AgentId& bob = agents[0];
    FormulaPtr a1 = mk_implies(mk_not(td[0]), mk_not(tv[0]));  // no tidying, no TV
    FormulaPtr a2 = mk_implies(td[0], cr[0]);                  // tidying earns crepes
    FormulaPtr a3 = mk_implies(td[0], ti[0]);                  // tidying is tiring
    std::vector<ProgramPtr> acts = {mk_expand(bob, a1), mk_expand(bob, a2), mk_forget(bob, a3)};
    ProgramPtr talk;
    for (size_t x = 0; x < acts.size(); ++x) {
      for (size_t y = 0; y < acts.size(); ++y) {
        if (x == y) continue;
        ProgramPtr pair = mk_seq(acts[x], acts[y]);
        talk = talk ? mk_choice(std::move(talk), std::move(pair)) : std::move(pair);
      }
    }
    sc.talk_program = std::move(talk);
    sc.talk_query = mk_box(sc.talk_program,
                           mk_pref(DKind::RPref, bob, mk_not(td[0]), td[0]));
    VocabularyProfile ext = sc.vocabulary;
    ext.gammas[bob].push_back(a1);
    ext.gammas[bob].push_back(a2);
    sc.talk_vocabulary = std::move(ext);
  }
  return sc;
}

Instance tidy_static_instance(const TidyScenario& sc) {
  return Instance{sc.vocabulary, sc.initial, sc.preference_query};
}

Instance tidy_talk_instance(const TidyScenario& sc) {
  if (!sc.talk_vocabulary) throw ModelError("the persuasion query exists only for n = 1");
  return Instance{*sc.talk_vocabulary, sc.initial, sc.talk_query};
}

BenchReport run_bench(const std::vector<int>& ns, const BenchOptions& options) {
  BenchReport report;
  for (int n : ns) {
    TidyScenario sc = generate_tidy(n);
    Context ctx(sc.vocabulary);
    BenchRow row;
    row.n = n;
    row.atoms = ctx.atom_count();
    row.gamma_per_agent = static_cast<int>(sc.vocabulary.gammas.begin()->second.size());
    row.exponent = ctx.exponent();
    auto start = std::chrono::steady_clock::now();
    try {
      if (options.export_only) {
        QbfPtr q = reduce(ctx, sc.initial, sc.preference_query);
        VarSpace space(ctx);
        row.result = export_qdimacs(q, space).empty() ? "error: empty export" : "exported";
      } else if (options.backend == Backend::Naive) {
        bool v = check_explicit(sc.initial, ctx, expand_derived(sc.preference_query),
                                options.enum_cap);
        row.result = v ? "true" : "false";
      } else {
        TranslationSession session(ctx);
        QbfPtr body = session.tr(expand_derived(sc.preference_query), session.root_level());
        QbfAssignment env = state_assignment(ctx, session.space(), sc.initial,
                                             session.root_level());
        QbfPtr closed = substitute(body, session.space(), env);
        bool v = solve_bdd(closed, session.space(), options.node_budget);
        if (options.backend == Backend::Both) {
          bool w = check_explicit(sc.initial, ctx, expand_derived(sc.preference_query),
                                  options.enum_cap);
          if (v != w) {
            row.result = "error: backend disagreement";
            row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                              .count();
            report.rows.push_back(row);
            continue;
          }
        }
        row.result = v ? "true" : "false";
      }
    } catch (const std::exception& e) {
      row.result = std::string("error: ") + e.what();
    }
    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.rows.push_back(row);
  }
  return report;
}

std::string format_table(const BenchReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(6) << "n" << std::setw(8) << "atoms" << std::setw(8) << "gamma"
      << std::setw(10) << "exponent" << std::setw(12) << "seconds" << "result\n";
  for (const auto& r : report.rows) {
    std::ostringstream sec;
    sec << std::fixed << std::setprecision(3) << r.seconds;
    out << std::left << std::setw(6) << r.n << std::setw(8) << r.atoms << std::setw(8)
        << r.gamma_per_agent << std::setw(10) << r.exponent << std::setw(12) << sec.str()
        << r.result << "\n";
  }
  return out.str();
}

std::string format_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "n,atoms,gamma,exponent,seconds,result\n";
  for (const auto& r : report.rows) {
    out << r.n << "," << r.atoms << "," << r.gamma_per_agent << "," << r.exponent << ","
        << std::fixed << std::setprecision(6) << r.seconds << "," << r.result << "\n";
  }
  return out.str();
}

}  // namespace lca
