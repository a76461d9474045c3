#include "dynpair/edge_shift.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <numeric>
#include <queue>

namespace dynpair {

void SftSpec::validate() const {
    if (alphabet.empty()) throw SemanticError("alphabet must be nonempty");
    std::set<std::string> seen(alphabet.begin(), alphabet.end());
    if (seen.size() != alphabet.size()) throw SemanticError("duplicate letters in alphabet");
    std::set<Word> fs;
    for (const Word& f : forbidden) {
        if (f.empty()) throw SemanticError("forbidden word must have length >= 1");
        for (Letter a : f) {
            if (a < 0 || a >= static_cast<int>(alphabet.size()))
                throw SemanticError("forbidden word uses a letter outside the alphabet");
        }
        if (!fs.insert(f).second) throw SemanticError("duplicate forbidden word");
    }
}

EdgeShift::EdgeShift(std::vector<std::string> alphabet, int state_count, std::vector<Edge> edges)
    : alphabet_(std::move(alphabet)), state_count_(state_count), edges_(std::move(edges)) {
    for (const Edge& e : edges_) {
        if (e.source < 0 || e.source >= state_count_ || e.target < 0 || e.target >= state_count_)
            throw SemanticError("edge endpoint out of range");
        if (e.letter < 0 || e.letter >= static_cast<int>(alphabet_.size()))
            throw SemanticError("edge letter out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    // Trim: drop states with no outgoing or no incoming edge until stable.
    // Afterwards every state sits on a bi-infinite path.
    std::vector<bool> alive(static_cast<size_t>(state_count_), true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> outdeg(static_cast<size_t>(state_count_), 0);
        std::vector<int> indeg(static_cast<size_t>(state_count_), 0);
        for (const Edge& e : edges_) {
            if (alive[static_cast<size_t>(e.source)] && alive[static_cast<size_t>(e.target)]) {
                outdeg[static_cast<size_t>(e.source)]++;
                indeg[static_cast<size_t>(e.target)]++;
            }
        }
        for (int s = 0; s < state_count_; ++s) {
            if (alive[static_cast<size_t>(s)] && (outdeg[static_cast<size_t>(s)] == 0 ||
                                                  indeg[static_cast<size_t>(s)] == 0)) {
                alive[static_cast<size_t>(s)] = false;
                changed = true;
            }
        }
    }

    std::vector<int> renumber(static_cast<size_t>(state_count_), -1);
    int next = 0;
    for (int s = 0; s < state_count_; ++s)
        if (alive[static_cast<size_t>(s)]) renumber[static_cast<size_t>(s)] = next++;
    std::vector<Edge> kept;
    for (const Edge& e : edges_) {
        int s = renumber[static_cast<size_t>(e.source)];
        int t = renumber[static_cast<size_t>(e.target)];
        if (s >= 0 && t >= 0) kept.push_back(Edge{s, t, e.letter});
    }
    state_count_ = next;
    edges_ = std::move(kept);
    std::sort(edges_.begin(), edges_.end());
    build_adjacency();
}

void EdgeShift::build_adjacency() {
    out_edges_.assign(static_cast<size_t>(state_count_), {});
    in_edges_.assign(static_cast<size_t>(state_count_), {});
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        out_edges_[static_cast<size_t>(edges_[static_cast<size_t>(i)].source)].push_back(i);
        in_edges_[static_cast<size_t>(edges_[static_cast<size_t>(i)].target)].push_back(i);
    }
}

bool EdgeShift::deterministic() const {
    std::set<std::pair<int, Letter>> seen;
    for (const Edge& e : edges_)
        if (!seen.insert({e.source, e.letter}).second) return false;
    return true;
}

bool EdgeShift::allows(const Word& w) const {
    return !end_states(w).empty();
}

std::vector<int> EdgeShift::end_states(const Word& w) const {
    std::vector<bool> cur(static_cast<size_t>(state_count_), true);
    for (Letter a : w) {
        std::vector<bool> next(static_cast<size_t>(state_count_), false);
        bool any = false;
        for (const Edge& e : edges_) {
            if (e.letter == a && cur[static_cast<size_t>(e.source)]) {
                next[static_cast<size_t>(e.target)] = true;
                any = true;
            }
        }
        if (!any) return {};
        cur = std::move(next);
    }
    std::vector<int> out;
    for (int s = 0; s < state_count_; ++s)
        if (cur[static_cast<size_t>(s)]) out.push_back(s);
    return out;
}

std::vector<int> EdgeShift::start_states(const Word& w) const {
    std::vector<bool> cur(static_cast<size_t>(state_count_), true);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        std::vector<bool> prev(static_cast<size_t>(state_count_), false);
        bool any = false;
        for (const Edge& e : edges_) {
            if (e.letter == *it && cur[static_cast<size_t>(e.target)]) {
                prev[static_cast<size_t>(e.source)] = true;
                any = true;
            }
        }
        if (!any) return {};
        cur = std::move(prev);
    }
    std::vector<int> out;
    for (int s = 0; s < state_count_; ++s)
        if (cur[static_cast<size_t>(s)]) out.push_back(s);
    return out;
}

namespace {

// Subset automaton rooted at the all-states subset. Deterministic by
// construction; a path from the root spells a word iff the word labels some
// path of the underlying graph, so distinct root paths are distinct words.
struct SubsetDfa {
    std::vector<std::vector<int>> next;  // [subset][letter] -> subset id or -1
    int root = 0;
};

SubsetDfa build_subset_dfa(const EdgeShift& shift) {
    const int nletters = shift.alphabet_size();
    std::map<std::vector<bool>, int> ids;
    std::vector<std::vector<bool>> subsets;
    SubsetDfa dfa;

    std::vector<bool> all(static_cast<size_t>(shift.state_count()), true);
    ids[all] = 0;
    subsets.push_back(all);
    dfa.next.push_back(std::vector<int>(static_cast<size_t>(nletters), -1));

    std::queue<int> work;
    work.push(0);
    while (!work.empty()) {
        int id = work.front();
        work.pop();
        std::vector<bool> cur = subsets[static_cast<size_t>(id)];
        for (Letter a = 0; a < nletters; ++a) {
            std::vector<bool> succ(static_cast<size_t>(shift.state_count()), false);
            bool any = false;
            for (const Edge& e : shift.edges()) {
                if (e.letter == a && cur[static_cast<size_t>(e.source)]) {
                    succ[static_cast<size_t>(e.target)] = true;
                    any = true;
                }
            }
            if (!any) continue;
            auto [it, inserted] = ids.try_emplace(succ, static_cast<int>(subsets.size()));
            if (inserted) {
                if (static_cast<int>(subsets.size()) >= kDeterminizeCap)
                    throw ResourceLimitError("determinization exceeds the 2^16 state cap");
                subsets.push_back(succ);
                dfa.next.push_back(std::vector<int>(static_cast<size_t>(nletters), -1));
                work.push(it->second);
            }
            dfa.next[static_cast<size_t>(id)][static_cast<size_t>(a)] = it->second;
        }
    }
    return dfa;
}

}  // namespace

std::set<Word> EdgeShift::words(int n) const {
    if (n < 1) throw SemanticError("word length must be >= 1");
    std::set<Word> out;
    if (empty()) return out;
    SubsetDfa dfa = build_subset_dfa(*this);
    Word w;
    std::function<void(int)> rec = [&](int id) {
        if (static_cast<int>(w.size()) == n) {
            out.insert(w);
            return;
        }
        for (Letter a = 0; a < alphabet_size(); ++a) {
            int nxt = dfa.next[static_cast<size_t>(id)][static_cast<size_t>(a)];
            if (nxt < 0) continue;
            w.push_back(a);
            rec(nxt);
            w.pop_back();
        }
    };
    rec(dfa.root);
    return out;
}

double EdgeShift::word_count(int n) const {
    if (n < 1) throw SemanticError("word length must be >= 1");
    if (empty()) return 0.0;
    SubsetDfa dfa = build_subset_dfa(*this);
    std::vector<double> cur(dfa.next.size(), 0.0);
    cur[static_cast<size_t>(dfa.root)] = 1.0;
    for (int step = 0; step < n; ++step) {
        std::vector<double> nxt(dfa.next.size(), 0.0);
        for (size_t id = 0; id < dfa.next.size(); ++id) {
            if (cur[id] == 0.0) continue;
            for (int t : dfa.next[id])
                if (t >= 0) nxt[static_cast<size_t>(t)] += cur[id];
        }
        cur = std::move(nxt);
    }
    return std::accumulate(cur.begin(), cur.end(), 0.0);
}

std::vector<std::vector<int>> strongly_connected_components(int state_count,
                                                            const std::vector<Edge>& edges) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(state_count));
    for (const Edge& e : edges) adj[static_cast<size_t>(e.source)].push_back(e.target);

    std::vector<int> index(static_cast<size_t>(state_count), -1);
    std::vector<int> low(static_cast<size_t>(state_count), 0);
    std::vector<bool> on_stack(static_cast<size_t>(state_count), false);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int counter = 0;

    // Iterative Tarjan; recursion depth is unbounded on long chains.
    struct Frame {
        int v;
        size_t child;
    };
    for (int root = 0; root < state_count; ++root) {
        if (index[static_cast<size_t>(root)] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<size_t>(root)] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < adj[static_cast<size_t>(f.v)].size()) {
                int w = adj[static_cast<size_t>(f.v)][f.child++];
                if (index[static_cast<size_t>(w)] == -1) {
                    index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<size_t>(w)] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<size_t>(w)]) {
                    low[static_cast<size_t>(f.v)] =
                        std::min(low[static_cast<size_t>(f.v)], index[static_cast<size_t>(w)]);
                }
            } else {
                if (low[static_cast<size_t>(f.v)] == index[static_cast<size_t>(f.v)]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<size_t>(w)] = false;
                        comp.push_back(w);
                    } while (w != f.v);
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[static_cast<size_t>(frames.back().v)] = std::min(
                        low[static_cast<size_t>(frames.back().v)], low[static_cast<size_t>(v)]);
            }
        }
    }
    return comps;
}

namespace {

// Dominant eigenvalue of a nonnegative irreducible block via power iteration
// on A + I (the shift kills periodicity), Rayleigh quotient convergence.
double perron_root(const std::vector<std::vector<double>>& a) {
    const size_t n = a.size();
    std::vector<double> v(n, 1.0);
    double lambda = 0.0;
    constexpr double kTol = 1e-10;
    constexpr int kMaxIters = 100000;
    for (int it = 0; it < kMaxIters; ++it) {
        std::vector<double> w(n, 0.0);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) w[i] += a[i][j] * v[j];
            w[i] += v[i];  // the +I shift
        }
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < n; ++i) {
            num += v[i] * w[i];
            den += v[i] * v[i];
        }
        double next = num / den;
        double scale = *std::max_element(w.begin(), w.end());
        for (double& x : w) x /= scale;
        v = std::move(w);
        if (std::abs(next - lambda) <= kTol * std::max(1.0, std::abs(next))) return next - 1.0;
        lambda = next;
    }
    return lambda - 1.0;
}

}  // namespace

double EdgeShift::entropy() const {
    if (empty()) throw EmptyShiftError("entropy of the empty shift is undefined");
    // Spectral radius counts paths; it equals word growth only on
    // right-resolving presentations, so determinize first when needed.
    if (!deterministic()) return determinized().entropy();

    auto comps = strongly_connected_components(state_count_, edges_);
    double radius = 0.0;
    for (const auto& comp : comps) {
        std::vector<int> pos(static_cast<size_t>(state_count_), -1);
        for (size_t i = 0; i < comp.size(); ++i) pos[static_cast<size_t>(comp[i])] = static_cast<int>(i);
        std::vector<std::vector<double>> a(comp.size(), std::vector<double>(comp.size(), 0.0));
        bool has_edge = false;
        for (const Edge& e : edges_) {
            int i = pos[static_cast<size_t>(e.source)];
            int j = pos[static_cast<size_t>(e.target)];
            if (i >= 0 && j >= 0) {
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] += 1.0;
                has_edge = true;
            }
        }
        if (!has_edge) continue;  // transient singleton, eigenvalue 0
        radius = std::max(radius, perron_root(a));
    }
    double h = std::log(std::max(radius, 1.0));

    // Cross-check against word growth: log|words(n)|/n dominates h by
    // submultiplicativity and approaches it like C/n, where C absorbs at
    // most a polynomial factor of degree < state count (Jordan blocks of
    // reducible presentations).
    for (int n : {20, 40, 60}) {
        double rate = std::log(word_count(n)) / n;
        double c_max = state_count_ * std::log(n + 1.0) + std::log(state_count_ + 1.0) + 1.0;
        if (rate + 1e-9 < h || rate - h > c_max / n)
            throw Error("entropy cross-check failed: spectral radius and word growth disagree");
    }
    return h;
}

std::optional<int> EdgeShift::mixing_gap(int bound) const {
    if (empty()) throw EmptyShiftError("mixing gap of the empty shift is undefined");
    if (bound <= 0) bound = (state_count_ - 1) * (state_count_ - 1) + 1;  // Wielandt
    const size_t n = static_cast<size_t>(state_count_);
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const Edge& e : edges_) reach[static_cast<size_t>(e.source)][static_cast<size_t>(e.target)] = true;
    std::vector<std::vector<bool>> step = reach;
    for (int g = 1; g <= bound; ++g) {
        if (g > 1) {
            std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
            for (const Edge& e : edges_) {
                const auto& row = step[static_cast<size_t>(e.target)];
                auto& out = next[static_cast<size_t>(e.source)];
                for (size_t j = 0; j < n; ++j)
                    if (row[j]) out[j] = true;
            }
            step = std::move(next);
        }
        bool full = true;
        for (size_t i = 0; i < n && full; ++i)
            for (size_t j = 0; j < n && full; ++j)
                if (!step[i][j]) full = false;
        if (full) return g;
    }
    return std::nullopt;
}

EdgeShift EdgeShift::determinized() const {
    if (empty()) return *this;
    SubsetDfa dfa = build_subset_dfa(*this);
    std::vector<Edge> es;
    for (int id = 0; id < static_cast<int>(dfa.next.size()); ++id)
        for (Letter a = 0; a < alphabet_size(); ++a) {
            int t = dfa.next[static_cast<size_t>(id)][static_cast<size_t>(a)];
            if (t >= 0) es.push_back(Edge{id, t, a});
        }
    return EdgeShift(alphabet_, static_cast<int>(dfa.next.size()), std::move(es));
}

EdgeShift build_edge_shift(const SftSpec& spec) {
    spec.validate();
    const int nletters = static_cast<int>(spec.alphabet.size());
    size_t m = 1;
    for (const Word& f : spec.forbidden) m = std::max(m, f.size());

    std::set<Word> forbidden(spec.forbidden.begin(), spec.forbidden.end());
    auto contains_forbidden = [&](const Word& w) {
        for (const Word& f : forbidden) {
            if (f.size() > w.size()) continue;
            for (size_t i = 0; i + f.size() <= w.size(); ++i)
                if (std::equal(f.begin(), f.end(), w.begin() + static_cast<long>(i))) return true;
        }
        return false;
    };

    // States are the allowed (m-1)-words; an edge appends one letter and
    // keeps the trailing window. m == 1 degenerates to a single state with a
    // loop per surviving letter.
    std::vector<Word> states;
    std::map<Word, int> ids;
    Word scratch;
    std::function<void(void)> gen = [&]() {
        if (scratch.size() == m - 1) {
            if (!contains_forbidden(scratch)) {
                ids[scratch] = static_cast<int>(states.size());
                states.push_back(scratch);
            }
            return;
        }
        for (Letter a = 0; a < nletters; ++a) {
            scratch.push_back(a);
            gen();
            scratch.pop_back();
        }
    };
    gen();

    std::vector<Edge> edges;
    for (int sid = 0; sid < static_cast<int>(states.size()); ++sid) {
        for (Letter a = 0; a < nletters; ++a) {
            Word ext = states[static_cast<size_t>(sid)];
            ext.push_back(a);
            if (contains_forbidden(ext)) continue;
            Word succ(ext.begin() + 1, ext.end());
            auto it = ids.find(succ);
            if (it == ids.end()) continue;
            edges.push_back(Edge{sid, it->second, a});
        }
    }
    return EdgeShift(spec.alphabet, static_cast<int>(states.size()), std::move(edges));
}

}  // namespace dynpair
