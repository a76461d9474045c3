#pragma once

#include <variant>

#include "dynpair/block_relation.hpp"
#include "dynpair/family_relation.hpp"
#include "dynpair/fixpoint.hpp"

namespace dynpair {

// A symmetric closed relation on either backend.
using Relation = std::variant<FamilyRelation, BlockRelation>;

// One expansion step: close(saturate(R) + diagonal). Equivalent to closing
// E+ union the diagonal, since the diagonal is closed and saturating R with
// the diagonal present adds nothing beyond the diagonal itself.
Relation gamma_step(const Relation& r);

FamilyRelation gamma_step(const FamilyRelation& r);
BlockRelation gamma_step(const BlockRelation& r);

struct RankResult {
    RankValue rank;
    std::vector<Relation> stages;  // Gamma^0, Gamma^1, ... final stage repeated
    ExactnessFlag flag;
    const Relation& stable() const { return stages.back(); }
};

constexpr int kDefaultRankCap = 64;
constexpr int kDefaultMaxDepth = 4;

// Iterates gamma_step until two consecutive stages are equal or the cap is
// hit. Rejects asymmetric block input rather than symmetrizing; family
// relations are symmetric by construction. On the family backend the result
// is exact: a finitely presented strictly increasing chain stabilizes at a
// finite stage, so limit-ordinal stages cannot occur.
RankResult gamma_rank(const Relation& r, int cap = kDefaultRankCap);

// Classification verdicts with machine-checkable witnesses.
struct Verdict {
    enum class Kind { Full, NotFull, RealizableCertified, RefutedAtDepth, UnknownAtBudget };
    Kind kind = Kind::UnknownAtBudget;
    int depth = 0;  // RefutedAtDepth
    std::optional<std::pair<std::string, std::string>> witness;

    std::string kind_string() const;
};

// Exact backend: the relation is full iff it equals X^2.
Verdict classify_full(const FamilyRelation& r);

// Exact backend: realizable iff the Gamma fixpoint of r is X^2; otherwise a
// missing pair of the stable relation witnesses the refutation.
Verdict classify_realizable(const FamilyRelation& r, int cap = kDefaultRankCap);

// Applies gamma_rank to an assignment's relation; the flag is inherited.
RankResult p_rank(const Relation& r, int cap = kDefaultRankCap);

}  // namespace dynpair
