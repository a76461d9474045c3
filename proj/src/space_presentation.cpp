#include "dynpair/space_presentation.hpp"

#include <algorithm>

namespace dynpair {

int SpacePresentation::add_base_point(const std::string& name) {
    if (base_ids_.contains(name) || family_ids_.contains(name))
        throw SemanticError("name already in use: " + name);
    int id = base_count();
    base_names_.push_back(name);
    base_ids_[name] = id;
    return id;
}

int SpacePresentation::add_family(const std::string& name, SymbolicPoint parent) {
    if (base_ids_.contains(name) || family_ids_.contains(name))
        throw SemanticError("name already in use: " + name);
    check_point(parent);
    int id = family_count();
    family_names_.push_back(name);
    family_ids_[name] = id;
    parents_.push_back(parent);
    return id;
}

int SpacePresentation::base_id(const std::string& name) const {
    auto it = base_ids_.find(name);
    if (it == base_ids_.end()) throw UnknownNameError("unknown base point: " + name);
    return it->second;
}

int SpacePresentation::family_id(const std::string& name) const {
    auto it = family_ids_.find(name);
    if (it == family_ids_.end()) throw UnknownNameError("unknown family: " + name);
    return it->second;
}

SymbolicPoint SpacePresentation::limit_of(int family) const {
    if (family < 0 || family >= family_count()) throw UnknownNameError("unknown family id");
    return parents_[static_cast<size_t>(family)];
}

SymbolicPoint SpacePresentation::limit_of(const std::string& name) const {
    return limit_of(family_id(name));
}

void SpacePresentation::check_point(SymbolicPoint p) const {
    if (p.kind == SymbolicPoint::Kind::Base) {
        if (p.id < 0 || p.id >= base_count()) throw UnknownNameError("unknown base point id");
    } else {
        if (p.id < 0 || p.id >= family_count()) throw UnknownNameError("unknown family id");
        if (p.index < 0) throw SemanticError("member index must be nonnegative");
    }
}

int SpacePresentation::depth_of(SymbolicPoint p) const {
    check_point(p);
    int d = 0;
    while (p.kind == SymbolicPoint::Kind::Member) {
        d += 1;
        p = parents_[static_cast<size_t>(p.id)];
    }
    return d;
}

int SpacePresentation::depth() const {
    int d = 0;
    for (int f = 0; f < family_count(); ++f)
        d = std::max(d, depth_of(SymbolicPoint::member(f, 0)));
    return d;
}

int64_t SpacePresentation::isolation_exponent(SymbolicPoint p) const {
    if (p.kind == SymbolicPoint::Kind::Base) return 0;  // radius 1
    // A member's nearest neighbor is its parent, one private edge away.
    return scale_exponent(p.id) - p.index - 1;
}

int64_t SpacePresentation::scale_exponent(int family) const {
    return isolation_exponent(parents_[static_cast<size_t>(family)]) - 1;
}

Dyadic SpacePresentation::scale(int family) const {
    if (family < 0 || family >= family_count()) throw UnknownNameError("unknown family id");
    return Dyadic::power_of_two(scale_exponent(family));
}

Dyadic SpacePresentation::edge_weight(int family, int index) const {
    return Dyadic::power_of_two(scale_exponent(family) - index - 1);
}

Dyadic SpacePresentation::metrize(SymbolicPoint a, SymbolicPoint b) const {
    check_point(a);
    check_point(b);
    if (a == b) return Dyadic();

    // Path metric on the tree: members hang off their parent, base points
    // hang off a virtual root with weight 1. Sum the edges outside the
    // common ancestor tail.
    auto chain = [&](SymbolicPoint p) {
        std::vector<std::pair<SymbolicPoint, Dyadic>> steps;  // (point, weight of edge above it)
        while (p.kind == SymbolicPoint::Kind::Member) {
            steps.push_back({p, edge_weight(p.id, p.index)});
            p = parents_[static_cast<size_t>(p.id)];
        }
        steps.push_back({p, Dyadic::power_of_two(0)});  // base -> virtual root
        return steps;
    };
    auto ca = chain(a);
    auto cb = chain(b);

    // Drop the common suffix (shared ancestors); the virtual root is always
    // shared one step beyond the last entries.
    while (!ca.empty() && !cb.empty() && ca.back().first == cb.back().first) {
        ca.pop_back();
        cb.pop_back();
    }
    Dyadic d;
    for (const auto& [pt, w] : ca) d += w;
    for (const auto& [pt, w] : cb) d += w;
    return d;
}

std::string SpacePresentation::point_name(SymbolicPoint p) const {
    check_point(p);
    if (p.kind == SymbolicPoint::Kind::Base) return base_names_[static_cast<size_t>(p.id)];
    return family_names_[static_cast<size_t>(p.id)] + "[" + std::to_string(p.index) + "]";
}

}  // namespace dynpair
