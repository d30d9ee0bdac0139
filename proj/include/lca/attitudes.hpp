// Elimination of the derived cognitive-position operators (motivation,
// demotivation, indifference, ambivalence, their realistic variants and the
// two preference relations) into the five primitive modalities.

#pragma once

#include "lca/syntax.hpp"

namespace lca {

// Bottom-up rewrite; the result contains no Derived nodes. Identity on
// derived-free formulas.
FormulaPtr expand_derived(const FormulaPtr& f);

}  // namespace lca
