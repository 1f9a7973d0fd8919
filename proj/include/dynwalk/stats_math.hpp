#pragma once

#include <cstdint>
#include <span>

namespace dynwalk {

struct GofResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t dof = 0;
};

// Pearson goodness-of-fit of observed counts against expected probabilities.
// Bins whose expected count falls below min_expected are pooled into one bin
// before computing the statistic.
GofResult chi_square_gof(std::span<const std::uint64_t> counts, std::span<const double> probs,
                         double min_expected = 5.0);

// Two-sample homogeneity test over two count vectors of equal bin layout;
// bins with fewer than min_pooled combined observations are pooled.
GofResult chi_square_two_sample(std::span<const std::uint64_t> a,
                                std::span<const std::uint64_t> b, double min_pooled = 10.0);

} // namespace dynwalk
