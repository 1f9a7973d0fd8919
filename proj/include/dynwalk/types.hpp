#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace dynwalk {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint64_t;
using Label = std::uint16_t;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();

// Failure surfaced to callers: malformed input files, invalid configuration,
// or a violated model contract (negative/non-finite weights and the like).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Granularity at which a workload's weight upper bound must be recomputed.
// PerKernel: one constant bound serves the whole run. PerStep: the bound is
// recomposed from per-node aggregates before every step. None: no bound can
// be derived; the runtime stays on the full-scan reservoir kernel.
enum class EstimationFlag { PerKernel, PerStep, None };

inline const char* estimation_flag_name(EstimationFlag f) {
    switch (f) {
    case EstimationFlag::PerKernel: return "PER_KERNEL";
    case EstimationFlag::PerStep: return "PER_STEP";
    case EstimationFlag::None: return "NONE";
    }
    return "?";
}

} // namespace dynwalk
