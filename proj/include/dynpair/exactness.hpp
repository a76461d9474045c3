#pragma once

#include <compare>
#include <string>

namespace dynpair {

// How faithfully a relation represents its intended set. Flags only ever
// weaken along a computation: Exact never reappears after an approximation
// step.
struct ExactnessFlag {
    enum class Kind { Exact, OuterApprox, HeuristicStable };
    Kind kind = Kind::Exact;
    int depth = 0;           // OuterApprox: block depth of the approximation
    int witness_budget = 0;  // HeuristicStable: search budget that ran out

    static ExactnessFlag exact() { return {Kind::Exact, 0, 0}; }
    static ExactnessFlag outer_approx(int depth) { return {Kind::OuterApprox, depth, 0}; }
    static ExactnessFlag heuristic_stable(int budget) {
        return {Kind::HeuristicStable, 0, budget};
    }

    bool is_exact() const { return kind == Kind::Exact; }

    std::string to_string() const {
        switch (kind) {
            case Kind::Exact: return "exact";
            case Kind::OuterApprox: return "outer-approx(" + std::to_string(depth) + ")";
            case Kind::HeuristicStable:
                return "heuristic-stable(" + std::to_string(witness_budget) + ")";
        }
        return "?";
    }

    auto operator<=>(const ExactnessFlag&) const = default;
};

}  // namespace dynpair
