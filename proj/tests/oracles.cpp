#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace dynpair::oracle {

std::set<Word> enumerate_words(int alphabet_size, int n, const std::vector<Word>& forbidden) {
    std::set<Word> out;
    Word w;
    auto contains_forbidden = [&](const Word& word) {
        for (const Word& f : forbidden)
            for (size_t i = 0; i + f.size() <= word.size(); ++i)
                if (std::equal(f.begin(), f.end(), word.begin() + static_cast<long>(i)))
                    return true;
        return false;
    };
    std::function<void()> rec = [&]() {
        if (static_cast<int>(w.size()) == n) {
            if (!contains_forbidden(w)) out.insert(w);
            return;
        }
        for (Letter a = 0; a < alphabet_size; ++a) {
            w.push_back(a);
            rec();
            w.pop_back();
        }
    };
    rec();
    return out;
}

double golden_ratio_bisection(double tolerance) {
    auto f = [](double x) { return x * x - x - 1.0; };
    double lo = 1.0, hi = 2.0;
    while (hi - lo > tolerance) {
        double mid = (lo + hi) / 2;
        if (f(mid) > 0)
            hi = mid;
        else
            lo = mid;
    }
    return (lo + hi) / 2;
}

RefEvaluator::RefEvaluator(const SpacePresentation& space, int horizon)
    : space_(space), horizon_(horizon) {
    for (int b = 0; b < space.base_count(); ++b) points_.push_back(SymbolicPoint::base(b));
    for (int f = 0; f < space.family_count(); ++f)
        for (int k = 0; k <= horizon; ++k) points_.push_back(SymbolicPoint::member(f, k));
}

int RefEvaluator::index_of(SymbolicPoint p) const {
    auto it = std::find(points_.begin(), points_.end(), p);
    if (it == points_.end()) throw UnknownNameError("point outside the reference universe");
    return static_cast<int>(it - points_.begin());
}

RefEvaluator::PairSet RefEvaluator::restrict(const FamilyRelation& r) const {
    PairSet out;
    for (int i = 0; i < static_cast<int>(points_.size()); ++i)
        for (int j = 0; j < static_cast<int>(points_.size()); ++j)
            if (r.member(points_[static_cast<size_t>(i)], points_[static_cast<size_t>(j)]))
                out.insert({i, j});
    return out;
}

RefEvaluator::PairSet RefEvaluator::transitive(PairSet s) const {
    const int n = static_cast<int>(points_.size());
    std::vector<std::vector<bool>> m(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
    for (const auto& [i, j] : s) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!m[static_cast<size_t>(i)][static_cast<size_t>(k)]) continue;
            for (int j = 0; j < n; ++j)
                if (m[static_cast<size_t>(k)][static_cast<size_t>(j)])
                    m[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
        }
    PairSet out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m[static_cast<size_t>(i)][static_cast<size_t>(j)]) out.insert({i, j});
    return out;
}

RefEvaluator::PairSet RefEvaluator::close(PairSet s) const {
    // Detect full tails against the limit table: a run of pairs over the
    // upper half of the index window forces the limit pair in.
    const int lo = horizon_ / 2;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int f = 0; f < space_.family_count(); ++f) {
            int lim_f = index_of(space_.limit_of(f));
            for (int g = 0; g < space_.family_count(); ++g) {
                bool aligned = true;
                for (int k = lo; k <= horizon_ && aligned; ++k)
                    aligned = s.contains({index_of(SymbolicPoint::member(f, k)),
                                          index_of(SymbolicPoint::member(g, k))});
                if (aligned)
                    changed |= s.insert({lim_f, index_of(space_.limit_of(g))}).second;
            }
            for (int z = 0; z < static_cast<int>(points_.size()); ++z) {
                bool row = true, col = true;
                for (int k = lo; k <= horizon_ && (row || col); ++k) {
                    int mk = index_of(SymbolicPoint::member(f, k));
                    row = row && s.contains({mk, z});
                    col = col && s.contains({z, mk});
                }
                if (row) changed |= s.insert({lim_f, z}).second;
                if (col) changed |= s.insert({z, lim_f}).second;
            }
        }
    }
    return s;
}

RefEvaluator::PairSet RefEvaluator::gamma_step(const PairSet& s) const {
    PairSet out = transitive(s);
    for (int i = 0; i < static_cast<int>(points_.size()); ++i) out.insert({i, i});
    return close(out);
}

std::vector<RefEvaluator::PairSet> RefEvaluator::gamma_stages(const PairSet& seed, int cap) const {
    std::vector<PairSet> stages{seed};
    for (int n = 0; n < cap; ++n) {
        PairSet next = gamma_step(stages.back());
        stages.push_back(next);
        if (next == stages[stages.size() - 2]) break;
    }
    return stages;
}

namespace {

std::vector<Word> all_words_of_lengths(const EdgeShift& shift, int lo, int hi) {
    std::vector<Word> out;
    Word w;
    std::function<void(int)> gen = [&](int target) {
        if (static_cast<int>(w.size()) == target) {
            out.push_back(w);
            return;
        }
        for (Letter a = 0; a < shift.alphabet_size(); ++a) {
            w.push_back(a);
            gen(target);
            w.pop_back();
        }
    };
    for (int n = lo; n <= hi; ++n) gen(n);
    return out;
}

}  // namespace

BlockRelation rp_eventually_periodic_oracle(const EdgeShift& shift, int depth, int prefix_bound,
                                            int max_period, int horizon) {
    auto shift_ptr = std::make_shared<const EdgeShift>(shift);
    BlockRelation out(shift_ptr, depth);
    if (shift.empty()) return out;
    const int nblocks = out.block_count();

    // Every window at shift n >= 0 sits inside the central block plus its
    // right ray, so a witness is determined by (block, transient, tail); the
    // left half always completes on a trimmed presentation.
    std::vector<Word> prefixes = all_words_of_lengths(shift, 0, prefix_bound);
    std::vector<Word> tails = all_words_of_lengths(shift, 1, max_period);

    // windows_by_block[u][n] = central windows readable at shift n along
    // some eventually periodic right ray through [u].
    std::vector<std::vector<std::vector<bool>>> windows_by_block(
        static_cast<size_t>(nblocks),
        std::vector<std::vector<bool>>(static_cast<size_t>(horizon + 1),
                                       std::vector<bool>(static_cast<size_t>(nblocks), false)));

    const int need = horizon + 2 * depth + 1;
    std::set<Word> seen;
    for (int u = 0; u < nblocks; ++u) {
        const Word& block = out.blocks()[static_cast<size_t>(u)];
        seen.clear();
        for (const Word& alpha : prefixes) {
            for (const Word& tail : tails) {
                Word ray = block;
                ray.insert(ray.end(), alpha.begin(), alpha.end());
                while (static_cast<int>(ray.size()) < need)
                    ray.insert(ray.end(), tail.begin(), tail.end());
                ray.resize(static_cast<size_t>(need));
                if (!seen.insert(ray).second) continue;
                if (!shift.allows(ray)) continue;
                // position m of the configuration = ray[m + depth]
                for (int n = 0; n <= horizon; ++n) {
                    Word window(ray.begin() + n, ray.begin() + n + 2 * depth + 1);
                    int wid = out.block_index(window);
                    if (wid >= 0)
                        windows_by_block[static_cast<size_t>(u)][static_cast<size_t>(n)]
                                        [static_cast<size_t>(wid)] = true;
                }
            }
        }
    }

    for (int i = 0; i < nblocks; ++i)
        for (int j = 0; j < nblocks; ++j) {
            bool related = false;
            for (int n = 0; n <= horizon && !related; ++n) {
                const auto& a = windows_by_block[static_cast<size_t>(i)][static_cast<size_t>(n)];
                const auto& b = windows_by_block[static_cast<size_t>(j)][static_cast<size_t>(n)];
                for (int t = 0; t < nblocks && !related; ++t)
                    related = a[static_cast<size_t>(t)] && b[static_cast<size_t>(t)];
            }
            if (related) out.set_pair(i, j);
        }
    return out;
}

BlockRelation asy_eventually_periodic_oracle(const EdgeShift& shift, int depth, int prefix_bound,
                                             int mid_bound, int max_period) {
    auto shift_ptr = std::make_shared<const EdgeShift>(shift);
    BlockRelation out(shift_ptr, depth);
    if (shift.empty()) return out;
    const int nstates = shift.state_count();
    const int nblocks = out.block_count();

    // reach[u][e] = states reachable from the end states of u by e free steps.
    std::vector<std::vector<std::vector<bool>>> reach(
        static_cast<size_t>(nblocks),
        std::vector<std::vector<bool>>(static_cast<size_t>(prefix_bound + 1)));
    for (int u = 0; u < nblocks; ++u) {
        std::vector<bool> cur(static_cast<size_t>(nstates), true);
        for (Letter a : out.blocks()[static_cast<size_t>(u)]) {
            std::vector<bool> next(static_cast<size_t>(nstates), false);
            for (const Edge& e : shift.edges())
                if (e.letter == a && cur[static_cast<size_t>(e.source)])
                    next[static_cast<size_t>(e.target)] = true;
            cur = std::move(next);
        }
        reach[static_cast<size_t>(u)][0] = cur;
        for (int e = 1; e <= prefix_bound; ++e) {
            std::vector<bool> next(static_cast<size_t>(nstates), false);
            for (const Edge& ed : shift.edges())
                if (reach[static_cast<size_t>(u)][static_cast<size_t>(e - 1)]
                         [static_cast<size_t>(ed.source)])
                    next[static_cast<size_t>(ed.target)] = true;
            reach[static_cast<size_t>(u)][static_cast<size_t>(e)] = std::move(next);
        }
    }

    // Distinct "attachment sets": states from which mid + tail^R is readable.
    std::set<std::vector<bool>> targets;
    std::vector<Word> mids = all_words_of_lengths(shift, 0, mid_bound);
    std::vector<Word> tails = all_words_of_lengths(shift, 1, max_period);

    for (const Word& mid : mids) {
        for (const Word& tail : tails) {
            Word ray = mid;
            for (int i = 0; i < nstates + 2; ++i) ray.insert(ray.end(), tail.begin(), tail.end());
            // Backward sweep: states from which the ray prefix is readable.
            std::vector<bool> t(static_cast<size_t>(nstates), true);
            for (auto it = ray.rbegin(); it != ray.rend(); ++it) {
                std::vector<bool> prev(static_cast<size_t>(nstates), false);
                for (const Edge& e : shift.edges())
                    if (e.letter == *it && t[static_cast<size_t>(e.target)])
                        prev[static_cast<size_t>(e.source)] = true;
                t = std::move(prev);
            }
            if (std::find(t.begin(), t.end(), true) != t.end()) targets.insert(t);
        }
    }

    for (const auto& target : targets) {
        for (int e = 0; e <= prefix_bound; ++e) {
            std::vector<int> attached;
            for (int u = 0; u < nblocks; ++u) {
                const auto& r = reach[static_cast<size_t>(u)][static_cast<size_t>(e)];
                bool hit = false;
                for (int s = 0; s < nstates && !hit; ++s)
                    hit = r[static_cast<size_t>(s)] && target[static_cast<size_t>(s)];
                if (hit) attached.push_back(u);
            }
            for (int u : attached)
                for (int v : attached) out.set_pair(u, v);
        }
    }
    return out;
}

std::set<std::pair<Word, Word>> chain_closure(const std::set<std::pair<Word, Word>>& pairs) {
    std::set<std::pair<Word, Word>> out = pairs;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<Word, Word>> additions;
        for (const auto& [a, b] : out)
            for (const auto& [c, d] : out)
                if (b == c && !out.contains({a, d})) additions.push_back({a, d});
        for (auto& p : additions) changed |= out.insert(std::move(p)).second;
    }
    return out;
}

PathAutomaton encode_space_as_automaton(const SpacePresentation& space) {
    // Uniformized encoding: every point class (base or family) gets an
    // anchor with a 0-loop; child families attach through 1-selectors along
    // the whole class, so nesting levels turn into derivative steps.
    std::vector<Edge> edges;
    int next_state = 0;
    auto fresh = [&]() { return next_state++; };

    int initial = fresh();
    // anchor per class: classes are bases then families.
    const int nclasses = space.base_count() + space.family_count();
    std::vector<int> anchor(static_cast<size_t>(nclasses));
    for (int c = 0; c < nclasses; ++c) anchor[static_cast<size_t>(c)] = fresh();

    auto class_of_point = [&](SymbolicPoint p) {
        return p.kind == SymbolicPoint::Kind::Base ? p.id : space.base_count() + p.id;
    };

    for (int c = 0; c < nclasses; ++c)
        edges.push_back(Edge{anchor[static_cast<size_t>(c)], anchor[static_cast<size_t>(c)], 0});

    // Root selector chain over base anchors.
    int cursor = initial;
    for (int b = 0; b < space.base_count(); ++b) {
        edges.push_back(Edge{cursor, anchor[static_cast<size_t>(b)], 0});
        if (b + 1 < space.base_count()) {
            int nxt = fresh();
            edges.push_back(Edge{cursor, nxt, 1});
            cursor = nxt;
        }
    }

    // Family selector chains at their parents' class anchors.
    std::vector<std::vector<int>> children(static_cast<size_t>(nclasses));
    for (int f = 0; f < space.family_count(); ++f)
        children[static_cast<size_t>(class_of_point(space.limit_of(f)))].push_back(f);
    for (int c = 0; c < nclasses; ++c) {
        int at = anchor[static_cast<size_t>(c)];
        const auto& fams = children[static_cast<size_t>(c)];
        for (size_t i = 0; i < fams.size(); ++i) {
            int sel = fresh();
            edges.push_back(Edge{at, sel, 1});
            edges.push_back(
                Edge{sel, anchor[static_cast<size_t>(space.base_count() + fams[i])], 0});
            at = sel;
        }
    }

    return PathAutomaton({"0", "1"}, next_state, initial, edges);
}

}  // namespace dynpair::oracle
