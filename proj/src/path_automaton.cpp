#include "dynpair/path_automaton.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace dynpair {

PathAutomaton::PathAutomaton(std::vector<std::string> alphabet, int state_count, int initial,
                             std::vector<Edge> edges)
    : alphabet_(std::move(alphabet)), state_count_(state_count), initial_(initial),
      edges_(std::move(edges)) {
    if (state_count_ > 0 && (initial_ < 0 || initial_ >= state_count_))
        throw SemanticError("initial state out of range");
    std::set<std::pair<int, Letter>> seen;
    for (const Edge& e : edges_) {
        if (e.source < 0 || e.source >= state_count_ || e.target < 0 || e.target >= state_count_)
            throw SemanticError("edge endpoint out of range");
        if (e.letter < 0 || e.letter >= static_cast<int>(alphabet_.size()))
            throw SemanticError("edge letter out of range");
        if (!seen.insert({e.source, e.letter}).second)
            throw NondeterministicInputError(
                "two edges share a (state, letter); determinize the input first");
    }
    state_names_.resize(static_cast<size_t>(std::max(state_count_, 0)));
    for (int s = 0; s < state_count_; ++s) state_names_[static_cast<size_t>(s)] = "q" + std::to_string(s);

    // Prune: keep states reachable from the initial state that carry an
    // infinite forward path.
    if (state_count_ == 0) return;
    std::vector<bool> alive(static_cast<size_t>(state_count_), true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> outdeg(static_cast<size_t>(state_count_), 0);
        for (const Edge& e : edges_)
            if (alive[static_cast<size_t>(e.source)] && alive[static_cast<size_t>(e.target)])
                outdeg[static_cast<size_t>(e.source)]++;
        for (int s = 0; s < state_count_; ++s)
            if (alive[static_cast<size_t>(s)] && outdeg[static_cast<size_t>(s)] == 0) {
                alive[static_cast<size_t>(s)] = false;
                changed = true;
            }
    }
    std::vector<bool> reach(static_cast<size_t>(state_count_), false);
    if (alive[static_cast<size_t>(initial_)]) {
        std::queue<int> work;
        reach[static_cast<size_t>(initial_)] = true;
        work.push(initial_);
        while (!work.empty()) {
            int s = work.front();
            work.pop();
            for (const Edge& e : edges_)
                if (e.source == s && alive[static_cast<size_t>(e.target)] &&
                    !reach[static_cast<size_t>(e.target)]) {
                    reach[static_cast<size_t>(e.target)] = true;
                    work.push(e.target);
                }
        }
    }
    std::vector<int> renumber(static_cast<size_t>(state_count_), -1);
    int next = 0;
    std::vector<std::string> kept_names;
    for (int s = 0; s < state_count_; ++s)
        if (alive[static_cast<size_t>(s)] && reach[static_cast<size_t>(s)]) {
            renumber[static_cast<size_t>(s)] = next++;
            kept_names.push_back(state_names_[static_cast<size_t>(s)]);
        }
    std::vector<Edge> kept;
    for (const Edge& e : edges_) {
        int s = renumber[static_cast<size_t>(e.source)];
        int t = renumber[static_cast<size_t>(e.target)];
        if (s >= 0 && t >= 0) kept.push_back(Edge{s, t, e.letter});
    }
    int new_initial = renumber[static_cast<size_t>(initial_)];
    state_count_ = next;
    initial_ = state_count_ == 0 ? -1 : new_initial;
    edges_ = std::move(kept);
    state_names_ = std::move(kept_names);
    std::sort(edges_.begin(), edges_.end());
}

void PathAutomaton::set_state_names(std::vector<std::string> names) {
    if (static_cast<int>(names.size()) != state_count_)
        throw SemanticError("state name count mismatch");
    state_names_ = std::move(names);
}

std::set<Word> PathAutomaton::prefixes(int n) const {
    std::set<Word> out;
    if (empty()) return out;
    Word w;
    std::function<void(int)> rec = [&](int s) {
        if (static_cast<int>(w.size()) == n) {
            out.insert(w);
            return;
        }
        for (const Edge& e : edges_)
            if (e.source == s) {
                w.push_back(e.letter);
                rec(e.target);
                w.pop_back();
            }
    };
    rec(initial_);
    return out;
}

std::map<int, PathCount> classify_states(const PathAutomaton& a) {
    std::map<int, PathCount> out;
    // Pruning already removed Zero states; the reachable subgraph of a state
    // has out-degree one everywhere iff the state carries exactly one run.
    std::vector<int> outdeg(static_cast<size_t>(a.state_count()), 0);
    std::vector<std::vector<int>> succ(static_cast<size_t>(a.state_count()));
    for (const Edge& e : a.edges()) {
        outdeg[static_cast<size_t>(e.source)]++;
        succ[static_cast<size_t>(e.source)].push_back(e.target);
    }
    for (int s = 0; s < a.state_count(); ++s) {
        bool branching = false;
        std::vector<bool> seen(static_cast<size_t>(a.state_count()), false);
        std::queue<int> work;
        seen[static_cast<size_t>(s)] = true;
        work.push(s);
        while (!work.empty() && !branching) {
            int v = work.front();
            work.pop();
            if (outdeg[static_cast<size_t>(v)] > 1) branching = true;
            for (int t : succ[static_cast<size_t>(v)])
                if (!seen[static_cast<size_t>(t)]) {
                    seen[static_cast<size_t>(t)] = true;
                    work.push(t);
                }
        }
        out[s] = branching ? PathCount::Many : PathCount::One;
    }
    return out;
}

PathAutomaton cb_derivative(const PathAutomaton& a) {
    if (a.empty()) return a;
    auto counts = classify_states(a);
    std::vector<int> renumber(static_cast<size_t>(a.state_count()), -1);
    int next = 0;
    std::vector<std::string> names;
    for (int s = 0; s < a.state_count(); ++s)
        if (counts.at(s) == PathCount::Many) {
            renumber[static_cast<size_t>(s)] = next++;
            names.push_back(a.state_names()[static_cast<size_t>(s)]);
        }
    if (a.initial() < 0 || renumber[static_cast<size_t>(a.initial())] < 0)
        return PathAutomaton(a.alphabet(), 0, -1, {});
    std::vector<Edge> edges;
    for (const Edge& e : a.edges()) {
        int s = renumber[static_cast<size_t>(e.source)];
        int t = renumber[static_cast<size_t>(e.target)];
        if (s >= 0 && t >= 0) edges.push_back(Edge{s, t, e.letter});
    }
    PathAutomaton out(a.alphabet(), next, renumber[static_cast<size_t>(a.initial())],
                      std::move(edges));
    // Pruning inside the constructor can drop further states; names follow
    // by position only when nothing was dropped.
    if (out.state_count() == next) out.set_state_names(names);
    return out;
}

DerivativeResult cb_rank(const PathAutomaton& a, int cap) {
    if (cap <= 0) cap = a.state_count() + 1;
    auto iter = iterate_operator<PathAutomaton>(
        [](const PathAutomaton& x) { return cb_derivative(x); }, a, std::max(cap, 1),
        IterationDirection::Shrinking,
        [](const PathAutomaton& x, const PathAutomaton& y) {
            return x.state_count() == y.state_count() && x.edges() == y.edges() &&
                   x.initial() == y.initial();
        },
        [](const PathAutomaton& x, const PathAutomaton& y) {
            // Derivative output states inject into the input's states.
            return x.state_count() <= y.state_count();
        });
    DerivativeResult out;
    out.rank = RankValue{iter.rank, iter.capped};
    out.scattered = iter.stable().empty();
    out.stages = std::move(iter.stages);
    return out;
}

}  // namespace dynpair
