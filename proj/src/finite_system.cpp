#include "dynpair/finite_system.hpp"

#include <set>

namespace dynpair {

void FiniteSystem::validate() const {
    if (point_names.empty()) throw SemanticError("finite system needs at least one point");
    std::set<std::string> seen(point_names.begin(), point_names.end());
    if (seen.size() != point_names.size()) throw SemanticError("duplicate point names");
    if (map.size() != point_names.size()) throw SemanticError("map must be total");
    for (int t : map)
        if (t < 0 || t >= size()) throw SemanticError("map target out of range");
}

EdgeShift FiniteSystem::word_model() const {
    validate();
    std::vector<Edge> edges;
    for (int p = 0; p < size(); ++p) edges.push_back(Edge{p, map[static_cast<size_t>(p)], p});
    return EdgeShift(point_names, size(), std::move(edges));
}

std::vector<std::pair<int, int>> FiniteSystem::orbit_collision_pairs() const {
    validate();
    // Orbits of an n-point system collide within n steps if they ever do.
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < size(); ++x)
        for (int y = 0; y < size(); ++y) {
            int a = x, b = y;
            bool collide = false;
            for (int n = 0; n <= size(); ++n) {
                if (a == b) {
                    collide = true;
                    break;
                }
                a = map[static_cast<size_t>(a)];
                b = map[static_cast<size_t>(b)];
            }
            if (collide) out.push_back({x, y});
        }
    return out;
}

}  // namespace dynpair
