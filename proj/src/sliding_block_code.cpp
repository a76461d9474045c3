#include "dynpair/sliding_block_code.hpp"

#include <algorithm>

namespace dynpair {

Word apply_code_to_word(const SlidingBlockCode& code, const Word& w) {
    const int n = code.window_length();
    if (static_cast<int>(w.size()) < n)
        throw SemanticError("word shorter than the code window");
    Word out;
    for (size_t i = 0; i + static_cast<size_t>(n) <= w.size(); ++i) {
        Word window(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + n);
        auto it = code.local_rule.find(window);
        if (it == code.local_rule.end())
            throw RuleNotTotalError("local rule undefined on an allowed block");
        out.push_back(it->second);
    }
    return out;
}

EdgeShift apply_code(const SlidingBlockCode& code, const EdgeShift& source) {
    if (source.empty())
        return EdgeShift(code.target_alphabet, 0, {});

    for (const Word& b : source.words(code.window_length())) {
        if (!code.local_rule.contains(b))
            throw RuleNotTotalError("local rule undefined on allowed block \"" +
                                    word_to_string(b, source.alphabet()) + "\"");
    }
    for (const auto& [block, letter] : code.local_rule) {
        if (static_cast<int>(block.size()) != code.window_length())
            throw SemanticError("rule block has the wrong window length");
        if (letter < 0 || letter >= static_cast<int>(code.target_alphabet.size()))
            throw SemanticError("rule output letter outside the target alphabet");
    }

    // States: (context word of length 2w, source state reachable by reading
    // it). Traversing a source edge emits the rule applied to context+letter.
    const int ctx_len = 2 * code.window_radius;
    std::map<std::pair<Word, int>, int> ids;
    std::vector<std::pair<Word, int>> states;
    auto intern = [&](const Word& w, int s) {
        auto [it, inserted] = ids.try_emplace({w, s}, static_cast<int>(states.size()));
        if (inserted) states.push_back({w, s});
        return it->second;
    };

    if (ctx_len == 0) {
        for (int s = 0; s < source.state_count(); ++s) intern({}, s);
    } else {
        for (const Word& w : source.words(ctx_len))
            for (int s : source.end_states(w)) intern(w, s);
    }

    std::vector<Edge> nfa_edges;
    for (int id = 0; id < static_cast<int>(states.size()); ++id) {
        const auto& [ctx, s] = states[static_cast<size_t>(id)];
        for (int ei : source.out_edges()[static_cast<size_t>(s)]) {
            const Edge& e = source.edges()[static_cast<size_t>(ei)];
            Word window = ctx;
            window.push_back(e.letter);
            Letter out = code.local_rule.at(window);
            Word next_ctx(window.begin() + (ctx_len == 0 ? 0 : 1), window.end());
            if (ctx_len == 0) next_ctx.clear();
            int tid = intern(next_ctx, e.target);
            nfa_edges.push_back(Edge{id, tid, out});
        }
    }

    EdgeShift nfa(code.target_alphabet, static_cast<int>(states.size()), std::move(nfa_edges));
    if (nfa.deterministic()) return nfa;
    return nfa.determinized();
}

}  // namespace dynpair
