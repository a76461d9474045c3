#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dynpair/common.hpp"

namespace dynpair {

enum class IterationDirection { Growing, Shrinking };

// Rank of a fixpoint iteration; at_least marks a cap hit (the true rank is
// >= value, not known).
struct RankValue {
    int value = 0;
    bool at_least = false;

    std::string to_string() const {
        return at_least ? ">=" + std::to_string(value) : std::to_string(value);
    }
    bool operator==(const RankValue&) const = default;
};

// Outcome of iterating a monotone operator to a fixed point. stages holds
// seed, op(seed), ... including the repeated final stage when the iteration
// stabilized; rank is the number of strict steps.
template <typename S>
struct IterationResult {
    std::vector<S> stages;
    int rank = 0;
    bool capped = false;  // rank is a lower bound (AtLeast) when set
    const S& stable() const { return stages.back(); }
};

// Shared skeleton behind the growing (closure/expansion) and shrinking
// (derivative) rank computations. `equal` detects the fixed point; `leq` is
// only consulted once, to verify the first step respects the declared
// direction.
template <typename S, typename Op, typename Eq, typename Leq>
IterationResult<S> iterate_operator(Op op, S seed, int cap, IterationDirection direction,
                                    Eq equal, Leq leq) {
    if (cap < 1) throw SemanticError("iteration cap must be >= 1");
    IterationResult<S> result;
    result.stages.push_back(seed);

    S next = op(seed);
    bool ok = direction == IterationDirection::Growing ? leq(seed, next) : leq(next, seed);
    if (!ok)
        throw DirectionError(direction == IterationDirection::Growing
                                 ? "operator is not extensive on the seed"
                                 : "operator is not contractive on the seed");

    for (int n = 0;; ++n) {
        result.stages.push_back(next);
        if (equal(result.stages[result.stages.size() - 2], next)) {
            result.rank = n;
            return result;
        }
        if (n + 1 >= cap) {
            result.rank = cap;
            result.capped = true;
            return result;
        }
        next = op(next);
    }
}

}  // namespace dynpair
