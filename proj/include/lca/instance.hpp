// Instance files: JSON descriptions of a vocabulary profile, an initial
// state, and a query. Validation rejects base members outside the closure,
// untracked atoms, and undeclared agents.

#pragma once

#include <string>

#include "lca/model.hpp"

namespace lca {

struct Instance {
  VocabularyProfile vocabulary;  // atoms include the implicit rew/pun per agent
  State initial;
  FormulaPtr query;  // may be null for vocabulary-only files
};

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Instance load_instance(const std::string& path);
Instance parse_instance_text(const std::string& text);
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace lca
