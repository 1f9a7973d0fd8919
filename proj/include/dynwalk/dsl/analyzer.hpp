#pragma once

#include <string>
#include <vector>

#include "dynwalk/dsl/ast.hpp"
#include "dynwalk/types.hpp"

namespace dynwalk::dsl {

// One control-flow path through the weight function.
struct Branch {
    ExprPtr value;                        // return expression, lets inlined
    std::vector<std::string> conditions;  // path conditions, printable
    std::vector<std::string> deps;        // influencing definitions (hyperparameters skipped)
    EstimationFlag flag = EstimationFlag::PerKernel;
};

struct AnalysisResult {
    EstimationFlag flag = EstimationFlag::None;
    std::string diagnostic;               // why the flag degraded to NONE
    std::vector<Branch> branches;
    std::vector<ExprPtr> unique_leaves;   // deduplicated branch values, first-seen order
    bool uses_prop = false;               // an indexed array reached a return value
    bool uses_label = false;
    std::vector<std::string> preprocess_plan; // e.g. {"MAX(h)", "SUM(h)"}
};

// Enumerates every control path of the weight function, inlines the
// definitions that flow into each return value, and flags each leaf:
// PER_STEP when it reads an indexed per-edge array, PER_KERNEL otherwise.
// Programs the bound derivation cannot handle (loops, `dist` inside a
// return expression, a denominator that may reach zero or depends on an
// indexed array) degrade to NONE with a diagnostic instead of failing.
AnalysisResult analyze(const Program& prog);

// Human-readable analysis table: per-branch conditions, return expressions,
// dependencies and flags, the preprocess plan, and the derived estimators.
std::string render_report(const Program& prog, const AnalysisResult& res);

} // namespace dynwalk::dsl
