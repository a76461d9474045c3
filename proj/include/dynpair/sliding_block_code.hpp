#pragma once

#include <map>

#include "dynpair/edge_shift.hpp"

namespace dynpair {

// Shift-commuting map given by a local rule on centered (2w+1)-windows of
// the source subshift.
struct SlidingBlockCode {
    std::vector<std::string> target_alphabet;
    int window_radius = 0;                 // w
    std::map<Word, Letter> local_rule;     // (2w+1)-block -> target letter

    int window_length() const { return 2 * window_radius + 1; }
};

// Presentation of the image subshift (sofic in general): run the rule over
// an automaton whose states are (2w)-window contexts, then determinize and
// trim. Throws RuleNotTotalError if the rule misses an allowed source block.
EdgeShift apply_code(const SlidingBlockCode& code, const EdgeShift& source);

// Image of a single source word under the rule; defined for |w| >= 2w+1,
// result is shorter by 2w.
Word apply_code_to_word(const SlidingBlockCode& code, const Word& w);

}  // namespace dynpair
