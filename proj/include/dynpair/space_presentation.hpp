#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "dynpair/common.hpp"
#include "dynpair/dyadic.hpp"

namespace dynpair {

// A point of a presented space: either a named base point or the index-k
// member of a family.
struct SymbolicPoint {
    enum class Kind { Base, Member };
    Kind kind = Kind::Base;
    int id = 0;      // base id or family id
    int index = 0;   // member index, unused for bases

    static SymbolicPoint base(int id) { return {Kind::Base, id, 0}; }
    static SymbolicPoint member(int family, int index) { return {Kind::Member, family, index}; }

    auto operator<=>(const SymbolicPoint&) const = default;
};

// Exact finite presentation of a countable compact metrizable space: finitely
// many base points plus finitely many families, where family f contributes an
// injective sequence f(0), f(1), ... of fresh points converging to its parent
// point. Parents may be base points or members of previously declared
// families; the parent relation is acyclic with finite depth.
class SpacePresentation {
public:
    int add_base_point(const std::string& name);
    // parent must already exist.
    int add_family(const std::string& name, SymbolicPoint parent);

    int base_count() const { return static_cast<int>(base_names_.size()); }
    int family_count() const { return static_cast<int>(family_names_.size()); }
    const std::string& base_name(int id) const { return base_names_.at(static_cast<size_t>(id)); }
    const std::string& family_name(int id) const { return family_names_.at(static_cast<size_t>(id)); }
    int base_id(const std::string& name) const;
    int family_id(const std::string& name) const;

    // The declared limit of the family's member sequence.
    SymbolicPoint limit_of(int family) const;
    SymbolicPoint limit_of(const std::string& family_name) const;

    // Nesting depth: base points have depth 0, members of a family whose
    // parent has depth d have depth d+1.
    int depth_of(SymbolicPoint p) const;
    int depth() const;  // max over families of member depth

    void check_point(SymbolicPoint p) const;  // throws UnknownNameError

    // Tree metric compatible with the declared convergence: member f(k) sits
    // at distance 2^(-k-1) * scale(f) from its parent along an edge private
    // to f, scale(f) = half the parent's isolation radius, and distinct base
    // points are 2 apart through a virtual root. Exact dyadic arithmetic.
    Dyadic metrize(SymbolicPoint a, SymbolicPoint b) const;

    // scale(f) as a power of two; isolation radius of a member is its edge
    // weight, of a base point 1.
    Dyadic scale(int family) const;

    std::string point_name(SymbolicPoint p) const;

    bool operator==(const SpacePresentation&) const = default;

private:
    Dyadic edge_weight(int family, int index) const;
    int64_t scale_exponent(int family) const;
    int64_t isolation_exponent(SymbolicPoint p) const;

    std::vector<std::string> base_names_;
    std::vector<std::string> family_names_;
    std::vector<SymbolicPoint> parents_;  // per family
    std::map<std::string, int> base_ids_;
    std::map<std::string, int> family_ids_;
};

}  // namespace dynpair
