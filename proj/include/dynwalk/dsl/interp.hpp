#pragma once

#include "dynwalk/dsl/ast.hpp"
#include "dynwalk/graph.hpp"
#include "dynwalk/walk_state.hpp"

namespace dynwalk::dsl {

// Evaluates the weight function for one candidate edge. Loops are executed
// with a global iteration budget so data-dependent exits cannot hang a walk.
double eval_weight(const Program& prog, const Graph& g, const WalkerState& st, EdgeIndex e);

} // namespace dynwalk::dsl
