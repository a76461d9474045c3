#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dynpair/common.hpp"
#include "dynpair/fixpoint.hpp"

namespace dynpair {

enum class PathCount { Zero, One, Many };

// A deterministic automaton whose infinite runs from the initial state
// present a closed subset of Cantor space (label sequences). Determinism
// makes path multiplicity equal point multiplicity, which the derivative
// needs; nondeterministic input is rejected, not silently determinized.
class PathAutomaton {
public:
    PathAutomaton(std::vector<std::string> alphabet, int state_count, int initial,
                  std::vector<Edge> edges);

    bool empty() const { return state_count_ == 0; }
    int state_count() const { return state_count_; }
    int initial() const { return initial_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    int alphabet_size() const { return static_cast<int>(alphabet_.size()); }

    // Names of the surviving original states (pruning renumbers).
    const std::vector<std::string>& state_names() const { return state_names_; }
    void set_state_names(std::vector<std::string> names);

    // Prefixes of presented points, length exactly n.
    std::set<Word> prefixes(int n) const;

    bool operator==(const PathAutomaton&) const = default;

private:
    std::vector<std::string> alphabet_;
    int state_count_ = 0;
    int initial_ = -1;  // -1 iff empty
    std::vector<Edge> edges_;
    std::vector<std::string> state_names_;
};

// Per-state count of infinite paths: Zero states are pruned away, a state is
// One iff its reachable subgraph has out-degree exactly one everywhere, else
// Many.
std::map<int, PathCount> classify_states(const PathAutomaton& a);

// Restriction to Many states, pruned: exactly the limit points of the
// presented set (a point is isolated iff some prefix has a unique infinite
// extension).
PathAutomaton cb_derivative(const PathAutomaton& a);

struct DerivativeResult {
    RankValue rank;
    std::vector<PathAutomaton> stages;  // A^0 in A^1 in ... final repeated
    bool scattered = false;             // stable part empty
    const PathAutomaton& stable() const { return stages.back(); }
};

// Iterates the derivative to its fixed point. Each strict step removes a
// state, so the rank is bounded by the state count.
DerivativeResult cb_rank(const PathAutomaton& a, int cap = 0);  // cap 0: state count + 1

}  // namespace dynpair
