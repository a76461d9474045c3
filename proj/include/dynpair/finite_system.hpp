#pragma once

#include <string>
#include <vector>

#include "dynpair/edge_shift.hpp"

namespace dynpair {

// A finite set with a total self-map, viewed as a zero-dimensional compact
// system under the discrete metric. Closures are trivial, so every relation
// computation on it is exact.
struct FiniteSystem {
    std::vector<std::string> point_names;
    std::vector<int> map;  // map[i] = image of point i

    void validate() const;
    int size() const { return static_cast<int>(point_names.size()); }

    // Word model: one letter per point, edges = graph of the map. Only the
    // eventual cycles survive trimming; entropy through this model is 0.
    EdgeShift word_model() const;

    // Pairs (x, y) whose forward orbits collide: exists n with T^n x = T^n y.
    // Under the discrete metric this is both the asymptotic and the
    // regionally proximal relation.
    std::vector<std::pair<int, int>> orbit_collision_pairs() const;
};

}  // namespace dynpair
