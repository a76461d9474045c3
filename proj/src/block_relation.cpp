#include "dynpair/block_relation.hpp"

#include <algorithm>
#include <bit>

namespace dynpair {

BlockRelation::BlockRelation(std::shared_ptr<const EdgeShift> shift, int depth,
                             ExactnessFlag flag_)
    : flag(flag_), shift_(std::move(shift)), depth_(depth) {
    if (!shift_) throw SemanticError("block relation needs a shift");
    if (depth_ < 0) throw SemanticError("depth must be nonnegative");
    if (!shift_->empty()) {
        auto ws = shift_->words(block_length());
        blocks_.assign(ws.begin(), ws.end());
    }
    words_per_row_ = (blocks_.size() + 63) / 64;
    rows_.assign(blocks_.size(), std::vector<uint64_t>(words_per_row_, 0));
}

int BlockRelation::block_index(const Word& b) const {
    auto it = std::lower_bound(blocks_.begin(), blocks_.end(), b);
    if (it == blocks_.end() || *it != b) return -1;
    return static_cast<int>(it - blocks_.begin());
}

bool BlockRelation::pair(int i, int j) const {
    return (rows_[static_cast<size_t>(i)][static_cast<size_t>(j) / 64] >>
            (static_cast<size_t>(j) % 64)) & 1u;
}

void BlockRelation::set_pair(int i, int j) {
    rows_[static_cast<size_t>(i)][static_cast<size_t>(j) / 64] |=
        uint64_t{1} << (static_cast<size_t>(j) % 64);
}

void BlockRelation::set_pair_symmetric(int i, int j) {
    set_pair(i, j);
    set_pair(j, i);
}

bool BlockRelation::member(const Word& u, const Word& v) const {
    int i = block_index(u);
    int j = block_index(v);
    if (i < 0)
        throw UnknownNameError("block \"" + word_to_string(u, shift_->alphabet()) +
                               "\" is not allowed in the shift");
    if (j < 0)
        throw UnknownNameError("block \"" + word_to_string(v, shift_->alphabet()) +
                               "\" is not allowed in the shift");
    return pair(i, j);
}

void BlockRelation::add_pair(const Word& u, const Word& v) {
    int i = block_index(u);
    int j = block_index(v);
    if (i < 0 || j < 0) throw UnknownNameError("pair uses a block not allowed in the shift");
    set_pair(i, j);
}

bool BlockRelation::symmetric() const {
    for (int i = 0; i < block_count(); ++i)
        for (int j = i + 1; j < block_count(); ++j)
            if (pair(i, j) != pair(j, i)) return false;
    return true;
}

size_t BlockRelation::pair_count() const {
    size_t n = 0;
    for (const auto& row : rows_)
        for (uint64_t w : row) n += static_cast<size_t>(std::popcount(w));
    return n;
}

bool BlockRelation::all_pairs() const {
    return pair_count() == static_cast<size_t>(block_count()) * static_cast<size_t>(block_count());
}

std::optional<std::pair<Word, Word>> BlockRelation::first_missing() const {
    for (int i = 0; i < block_count(); ++i)
        for (int j = 0; j < block_count(); ++j)
            if (!pair(i, j))
                return {{blocks_[static_cast<size_t>(i)], blocks_[static_cast<size_t>(j)]}};
    return std::nullopt;
}

bool BlockRelation::subset_of(const BlockRelation& o) const {
    if (depth_ != o.depth_ || blocks_ != o.blocks_) return false;
    for (size_t i = 0; i < rows_.size(); ++i)
        for (size_t w = 0; w < words_per_row_; ++w)
            if (rows_[i][w] & ~o.rows_[i][w]) return false;
    return true;
}

BlockRelation transitive_saturate_block(const BlockRelation& r) {
    BlockRelation out = r;
    const int n = out.block_count();
    // Warshall over bit rows: paths of length >= 1.
    for (int k = 0; k < n; ++k) {
        const auto krow = out.rows_[static_cast<size_t>(k)];
        for (int i = 0; i < n; ++i) {
            if (!out.pair(i, k)) continue;
            auto& irow = out.rows_[static_cast<size_t>(i)];
            for (size_t w = 0; w < krow.size(); ++w) irow[w] |= krow[w];
        }
    }
    return out;
}

BlockRelation topological_closure_block(const BlockRelation& r) { return r; }

BlockRelation add_diagonal_block(const BlockRelation& r) {
    BlockRelation out = r;
    for (int i = 0; i < out.block_count(); ++i) out.set_pair(i, i);
    return out;
}

BlockRelation refine(const BlockRelation& r) {
    BlockRelation out(r.shift_ptr(), r.depth() + 1, ExactnessFlag::outer_approx(r.depth() + 1));
    for (int i = 0; i < out.block_count(); ++i) {
        const Word& u = out.blocks()[static_cast<size_t>(i)];
        Word mu(u.begin() + 1, u.end() - 1);
        int iu = r.block_index(mu);
        if (iu < 0) continue;  // cannot happen on a trimmed shift
        for (int j = 0; j < out.block_count(); ++j) {
            const Word& v = out.blocks()[static_cast<size_t>(j)];
            Word mv(v.begin() + 1, v.end() - 1);
            int jv = r.block_index(mv);
            if (jv >= 0 && r.pair(iu, jv)) out.set_pair(i, j);
        }
    }
    return out;
}

}  // namespace dynpair
