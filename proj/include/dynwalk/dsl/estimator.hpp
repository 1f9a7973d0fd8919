#pragma once

#include <functional>

#include "dynwalk/dsl/analyzer.hpp"

namespace dynwalk::dsl {

// Everything a derived estimator may read at a sampling step: the walker
// state scalars plus the preprocessed per-node aggregates of the current
// node's out-edges.
struct EstimationInputs {
    double prop_max = 0.0;
    double prop_sum = 0.0;
    double label_max = 0.0;
    double label_sum = 0.0;
    double deg_cur = 1.0;
    double deg_prev = 1.0;
    double step = 0.0;
};

// Upper bound c >= max over neighbors of the transition weight, evaluated
// by interval arithmetic with h in [0, MAX(h)] and label in [0, MAX(label)];
// state scalars are exact. Returns the max over all branch leaves.
double eval_max_estimate(const AnalysisResult& res, const EstimationInputs& in);

// Weight-sum estimate: every indexed array in a leaf is replaced by its
// per-node SUM, the unique leaf values are averaged, and PER_KERNEL results
// are multiplied by the degree.
double eval_sum_estimate(const AnalysisResult& res, const EstimationInputs& in);

using Estimator = std::function<double(const EstimationInputs&)>;

// Executable helpers for the runtime's sampler selection. Both require
// res.flag != NONE.
Estimator derive_max_estimator(const AnalysisResult& res);
Estimator derive_sum_estimator(const AnalysisResult& res);

// Textual forms for the analysis report (indexed arrays substituted by
// their MAX/SUM aggregate names).
std::string render_max_estimator(const AnalysisResult& res);
std::string render_sum_estimator(const AnalysisResult& res);

} // namespace dynwalk::dsl
