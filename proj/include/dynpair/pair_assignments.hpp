#pragma once

#include <map>

#include "dynpair/block_relation.hpp"
#include "dynpair/gamma_engine.hpp"
#include "dynpair/sliding_block_code.hpp"

namespace dynpair {

enum class AssignmentKind { IE, RP, ASY };

std::string assignment_kind_name(AssignmentKind k);
AssignmentKind assignment_kind_from_name(const std::string& name);

// Budget knobs for the independence search behind IE statuses.
struct IEParams {
    int density_num = 1;   // r = density_num / density_den
    int density_den = 4;
    int interval_length = 8;   // l: reference interval for the density threshold
    int horizon = 12;          // H: window scanned by the exhaustive refutation
    long max_choice_sets = 100000;  // bound on the F-enumeration

    void validate() const;
};

// Three-valued outcome per ordered block pair. Certification carries an
// arithmetic-progression gap (density 1/g); refutation carries the
// cardinality threshold t whose subsets of the horizon window were
// exhausted.
struct PairStatus {
    enum class Kind { CertifiedIE, RefutedAtHorizon, UnknownAtBudget };
    Kind kind = Kind::UnknownAtBudget;
    int value = 0;  // gap g, or threshold t

    std::string to_string() const;
    bool operator==(const PairStatus&) const = default;
};

struct AssignmentResult {
    AssignmentKind kind = AssignmentKind::RP;
    BlockRelation relation;
    // IE only: status per ordered block pair, row-major.
    std::vector<PairStatus> per_pair;

    const PairStatus& status(int i, int j) const {
        return per_pair.at(static_cast<size_t>(i) * static_cast<size_t>(relation.block_count()) +
                           static_cast<size_t>(j));
    }
};

// IE statuses for every ordered pair of allowed (2k+1)-blocks. A pair is
// certified when placements of the two blocks along an arithmetic
// progression are universally realizable (verified by explicit pattern path
// checks at three positions plus a subset-reachability argument covering
// every length); it is refuted when every size-t subset of the horizon
// window fails an independence test. The relation keeps certified and
// unresolved pairs, so it outer-approximates the true pair set; the flag is
// Exact only when every status is resolved.
AssignmentResult ie_pairs(const EdgeShift& shift, int depth, const IEParams& params = {});

// Exact depth-k projection of the regionally proximal relation: (u, v) is
// included iff configurations through [u] and [v] can be steered to read an
// identical window at some shift n >= 0. Product-graph reachability.
AssignmentResult rp_pairs(const EdgeShift& shift, int depth);

// Exact depth-k projection of the forward-asymptotic relation: (u, v) is
// included iff configurations through [u] and [v] eventually read identical
// labels forever (reachability to the synchronized-product live part).
AssignmentResult asy_pairs(const EdgeShift& shift, int depth);

AssignmentResult compute_assignment(const EdgeShift& shift, AssignmentKind kind, int depth,
                                    const IEParams& params = {});

struct AxiomReport {
    bool passed = true;
    std::vector<std::string> failures;
};

// Shift-invariance at block level: every pair in the set extends by one
// step to a pair in the set (block overlap condition).
AxiomReport check_axiom_invariance(const AssignmentResult& result);

// Factor functoriality: the blockwise image of every source pair (computed
// at depth k + w) lies in the image assignment at depth k.
AxiomReport check_axiom_factor(AssignmentKind kind, const SlidingBlockCode& code,
                               const EdgeShift& source, int depth,
                               const IEParams& params = {});

// Positive entropy iff some off-diagonal pair is certified independent.
struct EntropyLinkReport {
    enum class Outcome { Pass, Fail, Inconclusive };
    Outcome outcome = Outcome::Inconclusive;
    bool has_offdiagonal_ie = false;
    bool positive_entropy = false;
};
EntropyLinkReport entropy_link_check(const EdgeShift& shift, int depth,
                                     const IEParams& params = {});

// RP equals the block diagonal at every depth <= max_depth.
struct EquicontinuityReport {
    bool equicontinuous = true;
    std::optional<std::pair<Word, Word>> witness;  // an off-diagonal RP pair
};
EquicontinuityReport equicontinuity_check(const EdgeShift& shift, int max_depth);

// Block-backend classification. Fullness is certified only through per-pair
// IE certificates (the progression argument is depth-uniform); a missing
// pair refutes fullness soundly for every kind.
Verdict classify_full(const AssignmentResult& result);

// Runs the assignment at depths start_depth..max_depth; a stable Gamma
// fixpoint that omits an allowed block pair refutes realizability soundly
// (the true pair set is contained in the computed one, and Gamma is
// monotone). Without a refutation the verdict is certified only via
// fullness.
Verdict classify_realizable(const EdgeShift& shift, AssignmentKind kind, int cap = kDefaultRankCap,
                            int start_depth = 1, int max_depth = kDefaultMaxDepth,
                            const IEParams& params = {});

}  // namespace dynpair
