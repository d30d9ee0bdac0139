// The tidy-room scenario family: one child with a messy room for n = 1,
// generalized to n children, with the preference queries and (for n = 1) the
// two-speech-act persuasion program. Plus the timing harness.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lca/instance.hpp"
#include "lca/model.hpp"

namespace lca {

struct TidyScenario {
  int n = 1;
  VocabularyProfile vocabulary;  // Gamma_i = B_i, four members per child
  State initial;                 // bases = vocabularies, empty valuation
  FormulaPtr preference_query;   // every child realistically prefers help over
                                 // tidying alone (for n = 1: not tidying over tidying)
  // n = 1 only: the persuasion program (any two distinct speech acts in
  // sequence), its reversal query, and the extended vocabulary that tracks
  // the speech-act formulas.
  ProgramPtr talk_program;
  FormulaPtr talk_query;
  std::optional<VocabularyProfile> talk_vocabulary;
};

TidyScenario generate_tidy(int n);

Instance tidy_static_instance(const TidyScenario& sc);  // preference query
Instance tidy_talk_instance(const TidyScenario& sc);    // n = 1 reversal query

enum class Backend { Bdd, Naive, Both };

struct BenchOptions {
  Backend backend = Backend::Bdd;
  size_t node_budget = 10'000'000;
  int enum_cap = kDefaultEnumCapExponent;
  bool export_only = false;  // translate and export, do not solve
};

struct BenchRow {
  int n = 0;
  int atoms = 0;
  int gamma_per_agent = 0;
  int exponent = 0;
  double seconds = 0.0;
  std::string result;  // "true", "false", or "error: ..."
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

BenchReport run_bench(const std::vector<int>& ns, const BenchOptions& options = {});

std::string format_table(const BenchReport& report);
std::string format_csv(const BenchReport& report);

}  // namespace lca
