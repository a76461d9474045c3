#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "dynpair/edge_shift.hpp"
#include "dynpair/exactness.hpp"

namespace dynpair {

// A symmetric-or-not set of ordered pairs of allowed (2k+1)-blocks of a
// shift, denoting the closed set  U ([u] x [v])  of configuration pairs
// whose central windows match a listed pair. Central cylinders partition the
// space, so the pair set determines the closed set exactly at its depth.
// Stored as a bit matrix over the full allowed-block index.
class BlockRelation {
public:
    BlockRelation(std::shared_ptr<const EdgeShift> shift, int depth,
                  ExactnessFlag flag = ExactnessFlag::exact());

    int depth() const { return depth_; }
    int block_length() const { return 2 * depth_ + 1; }
    const EdgeShift& shift() const { return *shift_; }
    std::shared_ptr<const EdgeShift> shift_ptr() const { return shift_; }

    const std::vector<Word>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    int block_index(const Word& b) const;  // -1 when not an allowed block

    bool pair(int i, int j) const;
    void set_pair(int i, int j);
    void set_pair_symmetric(int i, int j);

    // Membership by block words; throws UnknownNameError on a block that is
    // not allowed in the shift.
    bool member(const Word& u, const Word& v) const;
    void add_pair(const Word& u, const Word& v);

    bool symmetric() const;
    size_t pair_count() const;
    bool all_pairs() const;
    std::optional<std::pair<Word, Word>> first_missing() const;

    bool same_pairs(const BlockRelation& o) const {
        return depth_ == o.depth_ && rows_ == o.rows_;
    }
    bool subset_of(const BlockRelation& o) const;

    bool operator==(const BlockRelation& o) const {
        return depth_ == o.depth_ && rows_ == o.rows_ && *shift_ == *o.shift_ && flag == o.flag;
    }

    ExactnessFlag flag;

private:
    friend BlockRelation transitive_saturate_block(const BlockRelation&);

    std::shared_ptr<const EdgeShift> shift_;
    int depth_;
    std::vector<Word> blocks_;                 // sorted
    size_t words_per_row_ = 0;
    std::vector<std::vector<uint64_t>> rows_;  // bit matrix
};

// Exact transitive closure of the finite pair graph on blocks (chains of
// configuration pairs pass through whole cylinders, so this is the exact
// transitive closure of the represented closed set).
BlockRelation transitive_saturate_block(const BlockRelation& r);

// Finite unions of cylinder products are clopen; closure is the identity.
BlockRelation topological_closure_block(const BlockRelation& r);

// Adds (u, u) for every allowed block: the depth-k thickening of the
// diagonal.
BlockRelation add_diagonal_block(const BlockRelation& r);

// Depth k+1 relation whose pairs are the allowed (2k+3)-block pairs with
// central truncation in r. The represented closed set shrinks or stays
// equal; the flag weakens to OuterApprox(k+1).
BlockRelation refine(const BlockRelation& r);

}  // namespace dynpair
