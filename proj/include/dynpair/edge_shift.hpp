#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dynpair/common.hpp"

namespace dynpair {

// Input description of an SFT: alphabet plus finitely many forbidden words.
struct SftSpec {
    std::vector<std::string> alphabet;
    std::vector<Word> forbidden;   // each of length >= 1, no duplicates

    void validate() const;         // throws SemanticError
};

// A finite labeled graph presenting a two-sided subshift: points are the
// label sequences of bi-infinite paths. The presentation is trimmed at
// construction (every state keeps at least one incoming and one outgoing
// edge), so every state lies on a bi-infinite path and every finite path
// label is a word of the subshift. A trimmed-to-nothing graph presents the
// empty shift; that is a value, not an error.
class EdgeShift {
public:
    EdgeShift(std::vector<std::string> alphabet, int state_count, std::vector<Edge> edges);

    bool empty() const { return state_count_ == 0; }
    int state_count() const { return state_count_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    int alphabet_size() const { return static_cast<int>(alphabet_.size()); }

    const std::vector<std::vector<int>>& out_edges() const { return out_edges_; }

    bool deterministic() const;

    // True iff the word labels some path. Words of length 0 are allowed in a
    // nonempty shift.
    bool allows(const Word& w) const;

    // States reachable by reading w starting anywhere.
    std::vector<int> end_states(const Word& w) const;
    // States from which w can be read.
    std::vector<int> start_states(const Word& w) const;

    // All length-n words of the presented subshift, n >= 1.
    std::set<Word> words(int n) const;

    // |words(n)| without materializing the set; exact while the count fits a
    // double's integer range, which covers every desk-scale use here.
    double word_count(int n) const;

    // Natural log of the spectral radius of the adjacency matrix, computed
    // per strongly connected component (power iteration on A + I, tolerance
    // 1e-10, at most 1e5 rounds) and cross-checked against log|words(n)|/n
    // at n in {20, 40, 60}. Throws EmptyShiftError on the empty shift.
    double entropy() const;

    // Least g <= bound such that every ordered state pair is joined by a
    // path of length exactly g; absent if none below the bound. bound == 0
    // selects the Wielandt primitivity bound (n-1)^2 + 1.
    std::optional<int> mixing_gap(int bound = 0) const;

    // Right-resolving presentation of the same subshift via the subset
    // construction (started from the all-states subset) followed by
    // trimming. Capped at 2^16 subset states.
    EdgeShift determinized() const;

    bool operator==(const EdgeShift&) const = default;

private:
    void build_adjacency();

    std::vector<std::string> alphabet_;
    int state_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_edges_;  // state -> edge indices
    std::vector<std::vector<int>> in_edges_;
};

// Higher-block construction: the returned shift's language is exactly the
// set of words over spec.alphabet avoiding every forbidden word.
EdgeShift build_edge_shift(const SftSpec& spec);

// Strongly connected components, Tarjan order; singleton components without
// a self-loop are their own (trivial) component.
std::vector<std::vector<int>> strongly_connected_components(int state_count,
                                                            const std::vector<Edge>& edges);

constexpr int kDeterminizeCap = 1 << 16;

}  // namespace dynpair
