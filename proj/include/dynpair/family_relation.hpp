#pragma once

#include <memory>
#include <optional>
#include <set>
#include <variant>

#include "dynpair/exactness.hpp"
#include "dynpair/space_presentation.hpp"

namespace dynpair {

// {f(k) : k >= from}, plus the limit point when with_limit is set. The
// closed/open distinction is what the closure operator manipulates; ranks
// depend on keeping tails open until a closure step.
struct TailSet {
    int family = 0;
    int from = 0;
    bool with_limit = false;

    auto operator<=>(const TailSet&) const = default;
};

// Atom kinds of the relation algebra. ALIGNED ties equal indices of two
// families; the rest are rectangles built from single points and tails.
struct AlignedAtom {
    int f = 0;
    int g = 0;
    int from = 0;
    auto operator<=>(const AlignedAtom&) const = default;
};
struct PairAtom {
    SymbolicPoint a;
    SymbolicPoint b;
    auto operator<=>(const PairAtom&) const = default;
};
struct PointTailAtom {
    SymbolicPoint p;
    TailSet t;
    auto operator<=>(const PointTailAtom&) const = default;
};
struct TailPointAtom {
    TailSet t;
    SymbolicPoint p;
    auto operator<=>(const TailPointAtom&) const = default;
};
struct TailTailAtom {
    TailSet s;
    TailSet t;
    auto operator<=>(const TailTailAtom&) const = default;
};

using Atom = std::variant<AlignedAtom, PairAtom, PointTailAtom, TailPointAtom, TailTailAtom>;

Atom transpose(const Atom& a);

// A symmetric relation on a presented countable space, stored as a finite
// union of atoms. Symmetry is structural: inserting an atom also inserts its
// transpose. Atoms dominated by a stronger atom of the same shape are
// dropped, so equal relations produced by the same operator sequence compare
// equal as atom sets.
class FamilyRelation {
public:
    explicit FamilyRelation(std::shared_ptr<const SpacePresentation> space,
                            ExactnessFlag flag = ExactnessFlag::exact());

    // Inserts atom and its transpose with dominance pruning; true if the
    // atom set changed.
    bool insert(const Atom& atom);
    bool member(SymbolicPoint x, SymbolicPoint y) const;

    const std::set<Atom>& atoms() const { return atoms_; }
    const SpacePresentation& space() const { return *space_; }
    std::shared_ptr<const SpacePresentation> space_ptr() const { return space_; }

    bool tail_contains(const TailSet& t, SymbolicPoint q) const;

    // Containment of single atoms: every atom of other is dominated by (or
    // is a pair inside) this relation.
    bool contains(const FamilyRelation& other) const;

    bool operator==(const FamilyRelation& o) const {
        return atoms_ == o.atoms_ && *space_ == *o.space_;
    }

    ExactnessFlag flag;

private:
    bool insert_one(const Atom& atom);

    std::shared_ptr<const SpacePresentation> space_;
    std::set<Atom> atoms_;
};

// Least fixed point of the atom composition rules; exact transitive closure
// within the algebra. Also reports the number of composition steps taken so
// the documented termination bound can be asserted.
FamilyRelation transitive_saturate(const FamilyRelation& r, long* steps = nullptr);

// Adds the limit pair of every ALIGNED atom and closes every tail inside a
// rectangle. The result is a closed set; the operator is idempotent.
FamilyRelation topological_closure(const FamilyRelation& r);

// Union with the diagonal: ALIGNED(f,f,0) per family, (b,b) per base point.
FamilyRelation add_diagonal(const FamilyRelation& r);

// Exact decision of "relation = X^2", with a concrete missing pair as
// witness otherwise. Decidable because membership beyond the largest index
// mentioned by any atom is governed by tail atoms alone.
struct FullnessResult {
    bool full = false;
    std::optional<std::pair<SymbolicPoint, SymbolicPoint>> witness;
};
FullnessResult check_full(const FamilyRelation& r);

}  // namespace dynpair
