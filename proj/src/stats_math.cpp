#include "dynwalk/stats_math.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "dynwalk/types.hpp"

namespace dynwalk {

namespace {

double p_from_stat(double stat, std::size_t dof) {
    if (dof == 0) return 1.0;
    const boost::math::chi_squared_distribution<double> dist(static_cast<double>(dof));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

} // namespace

GofResult chi_square_gof(std::span<const std::uint64_t> counts, std::span<const double> probs,
                         double min_expected) {
    if (counts.size() != probs.size())
        throw Error("chi_square_gof: counts and probs must have the same length");
    const double n = static_cast<double>(
        std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    if (n == 0.0) throw Error("chi_square_gof: no observations");

    double stat = 0.0;
    std::size_t bins = 0;
    double pooled_obs = 0.0, pooled_exp = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = n * probs[i];
        if (expected < min_expected) {
            pooled_obs += static_cast<double>(counts[i]);
            pooled_exp += expected;
            continue;
        }
        const double diff = static_cast<double>(counts[i]) - expected;
        stat += diff * diff / expected;
        ++bins;
    }
    if (pooled_exp > 0.0) {
        const double diff = pooled_obs - pooled_exp;
        stat += diff * diff / pooled_exp;
        ++bins;
    }
    GofResult r;
    r.statistic = stat;
    r.dof = bins > 1 ? bins - 1 : 0;
    r.p_value = p_from_stat(stat, r.dof);
    return r;
}

GofResult chi_square_two_sample(std::span<const std::uint64_t> a,
                                std::span<const std::uint64_t> b, double min_pooled) {
    if (a.size() != b.size())
        throw Error("chi_square_two_sample: samples must have the same bin layout");
    const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
    const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
    if (na == 0.0 || nb == 0.0) throw Error("chi_square_two_sample: empty sample");

    const double ka = std::sqrt(nb / na);
    const double kb = std::sqrt(na / nb);

    double stat = 0.0;
    std::size_t bins = 0;
    double pa = 0.0, pb = 0.0;
    auto add_bin = [&](double ca, double cb) {
        const double diff = ka * ca - kb * cb;
        stat += diff * diff / (ca + cb);
        ++bins;
    };
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ca = static_cast<double>(a[i]);
        const double cb = static_cast<double>(b[i]);
        if (ca + cb == 0.0) continue;
        if (ca + cb < min_pooled) {
            pa += ca;
            pb += cb;
            continue;
        }
        add_bin(ca, cb);
    }
    if (pa + pb > 0.0) add_bin(pa, pb);

    GofResult r;
    r.statistic = stat;
    r.dof = bins > 1 ? bins - 1 : 0;
    r.p_value = p_from_stat(stat, r.dof);
    return r;
}

} // namespace dynwalk
