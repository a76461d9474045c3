#include "dynpair/pair_assignments.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace dynpair {

std::string assignment_kind_name(AssignmentKind k) {
    switch (k) {
        case AssignmentKind::IE: return "ie";
        case AssignmentKind::RP: return "rp";
        case AssignmentKind::ASY: return "asy";
    }
    return "?";
}

AssignmentKind assignment_kind_from_name(const std::string& name) {
    if (name == "ie") return AssignmentKind::IE;
    if (name == "rp") return AssignmentKind::RP;
    if (name == "asy") return AssignmentKind::ASY;
    throw SemanticError("unknown assignment kind: " + name);
}

void IEParams::validate() const {
    if (density_num < 1 || density_den < 1 || density_num > density_den)
        throw SemanticError("density must be a rational in (0, 1]");
    if (interval_length < 1) throw SemanticError("interval length must be positive");
    if (horizon < interval_length)
        throw SemanticError("horizon must be at least the interval length");
    if (max_choice_sets < 1) throw SemanticError("choice-set budget must be positive");
}

std::string PairStatus::to_string() const {
    switch (kind) {
        case Kind::CertifiedIE: return "certified(gap=" + std::to_string(value) + ")";
        case Kind::RefutedAtHorizon: return "refuted(t=" + std::to_string(value) + ")";
        case Kind::UnknownAtBudget: return "unknown";
    }
    return "?";
}

namespace {

using StateSet = std::vector<uint8_t>;

StateSet all_states(const EdgeShift& shift) {
    return StateSet(static_cast<size_t>(shift.state_count()), 1);
}

bool set_empty(const StateSet& s) {
    return std::find(s.begin(), s.end(), uint8_t{1}) == s.end();
}

// Letter < 0 means free (any letter).
StateSet step(const EdgeShift& shift, const StateSet& s, Letter a) {
    StateSet out(s.size(), 0);
    for (const Edge& e : shift.edges())
        if ((a < 0 || e.letter == a) && s[static_cast<size_t>(e.source)])
            out[static_cast<size_t>(e.target)] = 1;
    return out;
}

StateSet read_word(const EdgeShift& shift, StateSet s, const Word& w) {
    for (Letter a : w) {
        s = step(shift, s, a);
        if (set_empty(s)) return s;
    }
    return s;
}

// Realizability of a partial constraint: cells[i] < 0 is a wildcard. Words
// of a trimmed graph always extend to configurations.
bool constraint_realizable(const EdgeShift& shift, const std::vector<int>& cells) {
    StateSet s = all_states(shift);
    for (int c : cells) {
        s = step(shift, s, c);
        if (set_empty(s)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// IE certification

// All 2^m placement patterns of {u, v} at m progression positions with step
// g are realizable (positions center the blocks g apart).
bool placement_patterns_ok(const EdgeShift& shift, const Word& u, const Word& v, int g, int m) {
    const int len = static_cast<int>(u.size());
    const int span = g * (m - 1) + len;
    for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> cells(static_cast<size_t>(span), -1);
        bool consistent = true;
        for (int p = 0; p < m && consistent; ++p) {
            const Word& b = (mask >> p) & 1 ? v : u;
            for (int i = 0; i < len; ++i) {
                int pos = p * g + i;
                int want = b[static_cast<size_t>(i)];
                if (cells[static_cast<size_t>(pos)] >= 0 &&
                    cells[static_cast<size_t>(pos)] != want) {
                    consistent = false;
                    break;
                }
                cells[static_cast<size_t>(pos)] = want;
            }
        }
        if (!consistent) return false;
        if (!constraint_realizable(shift, cells)) return false;
    }
    return true;
}

// Universal realizability of arbitrary-length placement sequences: iterate
// "read block, then g - len free steps" on state sets from the full set; the
// empty set must be unreachable. Subset search capped; a cap hit counts as
// not verified.
bool universal_placements_ok(const EdgeShift& shift, const Word& u, const Word& v, int g) {
    const int gap = g - static_cast<int>(u.size());
    if (gap < 0) return false;
    auto advance = [&](const StateSet& s, const Word& b) {
        StateSet t = read_word(shift, s, b);
        for (int i = 0; i < gap && !set_empty(t); ++i) t = step(shift, t, -1);
        return t;
    };
    std::set<StateSet> seen;
    std::queue<StateSet> work;
    StateSet root = all_states(shift);
    seen.insert(root);
    work.push(root);
    constexpr size_t kSubsetCap = 4096;
    while (!work.empty()) {
        StateSet s = work.front();
        work.pop();
        for (const Word* b : {&u, &v}) {
            StateSet t = advance(s, *b);
            if (set_empty(t)) return false;
            if (seen.insert(t).second) {
                if (seen.size() > kSubsetCap) return false;
                work.push(t);
            }
        }
    }
    return true;
}

bool is_full_shift(const EdgeShift& shift) {
    return shift.state_count() == 1 &&
           static_cast<int>(shift.edges().size()) == shift.alphabet_size();
}

std::optional<int> certify_ie(const EdgeShift& shift, const Word& u, const Word& v, int depth,
                              std::optional<int> mixing_gap) {
    if (!mixing_gap) return std::nullopt;
    const int len = 2 * depth + 1;
    // Full shifts realize every placement; the canonical gap is immediate.
    if (is_full_shift(shift)) return std::max(*mixing_gap + 2 * depth, len);
    // Canonical gap first; the fallback leaves a full mixing gap between
    // consecutive blocks, which the primitivity argument covers for every
    // placement length.
    for (int g : {*mixing_gap + 2 * depth, *mixing_gap + len}) {
        if (g < len) continue;
        if (!placement_patterns_ok(shift, u, v, g, 3)) continue;
        if (g - len >= *mixing_gap || universal_placements_ok(shift, u, v, g)) return g;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// IE refutation

// F (positions of block centers, relative) is an independence set iff every
// choice of u/v per position is realizable.
bool independence_set_ok(const EdgeShift& shift, const Word& u, const Word& v,
                         const std::vector<int>& positions, int depth) {
    const int len = 2 * depth + 1;
    const int m = static_cast<int>(positions.size());
    const int span = positions.back() + len;
    for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> cells(static_cast<size_t>(span), -1);
        bool consistent = true;
        for (int p = 0; p < m && consistent; ++p) {
            const Word& b = (mask >> p) & 1 ? v : u;
            for (int i = 0; i < len; ++i) {
                int pos = positions[static_cast<size_t>(p)] + i;
                int want = b[static_cast<size_t>(i)];
                if (cells[static_cast<size_t>(pos)] >= 0 &&
                    cells[static_cast<size_t>(pos)] != want) {
                    consistent = false;
                    break;
                }
                cells[static_cast<size_t>(pos)] = want;
            }
        }
        if (!consistent || !constraint_realizable(shift, cells)) return false;
    }
    return true;
}

// Exhausts every size-t subset of [0, horizon). All failing refutes every
// independence set that must contain t positions within a horizon window,
// hence every density above t / horizon; singletons are always independent,
// so t >= 2.
enum class RefuteOutcome { Refuted, NotRefuted, Budget };

RefuteOutcome refute_ie(const EdgeShift& shift, const Word& u, const Word& v, int depth,
                        const IEParams& params, int* threshold_out) {
    const int t = std::max(
        2, static_cast<int>(std::ceil(static_cast<double>(params.density_num) *
                                      params.interval_length / params.density_den)));
    *threshold_out = t;
    if (t > params.horizon) return RefuteOutcome::Budget;

    long count = 0;
    std::vector<int> positions(static_cast<size_t>(t));
    std::function<RefuteOutcome(int, int)> rec = [&](int idx, int start) -> RefuteOutcome {
        if (idx == t) {
            if (++count > params.max_choice_sets) return RefuteOutcome::Budget;
            return independence_set_ok(shift, u, v, positions, depth)
                       ? RefuteOutcome::NotRefuted
                       : RefuteOutcome::Refuted;
        }
        for (int p = start; p < params.horizon; ++p) {
            positions[static_cast<size_t>(idx)] = p;
            RefuteOutcome sub = rec(idx + 1, p + 1);
            if (sub != RefuteOutcome::Refuted) return sub;  // found independent F, or budget
        }
        return RefuteOutcome::Refuted;
    };
    // Normalize F to start at 0: independence is translation invariant.
    positions[0] = 0;
    std::function<RefuteOutcome(int, int)> rec_from_zero = [&](int idx, int start) {
        return rec(idx, start);
    };
    return rec_from_zero(1, 1);
}

}  // namespace

AssignmentResult ie_pairs(const EdgeShift& shift, int depth, const IEParams& params) {
    params.validate();
    auto shift_ptr = std::make_shared<const EdgeShift>(shift);
    AssignmentResult out{AssignmentKind::IE, BlockRelation(shift_ptr, depth), {}};
    if (shift.empty()) return out;

    std::optional<int> gap = shift.mixing_gap();
    bool any_unknown = false;
    const auto& blocks = out.relation.blocks();
    const int n = out.relation.block_count();
    out.per_pair.assign(static_cast<size_t>(n) * static_cast<size_t>(n), PairStatus{});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Word& u = blocks[static_cast<size_t>(i)];
            const Word& v = blocks[static_cast<size_t>(j)];
            PairStatus status;
            if (auto g = certify_ie(shift, u, v, depth, gap)) {
                status = {PairStatus::Kind::CertifiedIE, *g};
            } else {
                int threshold = 0;
                switch (refute_ie(shift, u, v, depth, params, &threshold)) {
                    case RefuteOutcome::Refuted:
                        status = {PairStatus::Kind::RefutedAtHorizon, threshold};
                        break;
                    case RefuteOutcome::NotRefuted:
                    case RefuteOutcome::Budget:
                        status = {PairStatus::Kind::UnknownAtBudget, 0};
                        any_unknown = true;
                        break;
                }
            }
            out.per_pair[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] =
                status;
            // Keep certified and unresolved pairs: the relation must contain
            // the true pair set for downstream refutations to be sound.
            if (status.kind != PairStatus::Kind::RefutedAtHorizon) out.relation.set_pair(i, j);
        }
    }
    out.relation.flag =
        any_unknown ? ExactnessFlag::heuristic_stable(params.horizon) : ExactnessFlag::exact();
    return out;
}

namespace {

// Product-graph machinery shared by RP and ASY. Pairs are indexed s * n + t.
struct ProductGraph {
    int n = 0;
    std::vector<std::vector<int>> free_pred;  // reversed free-step edges
    std::vector<uint8_t> equal_start;         // common (2k+1)-word exists
    std::vector<uint8_t> sync_live;           // common infinite word exists

    explicit ProductGraph(const EdgeShift& shift, int window) {
        n = shift.state_count();
        const size_t nn = static_cast<size_t>(n) * static_cast<size_t>(n);
        free_pred.assign(nn, {});
        for (const Edge& e : shift.edges())
            for (const Edge& f : shift.edges())
                free_pred[static_cast<size_t>(e.target * n + f.target)].push_back(
                    e.source * n + f.source);
        for (auto& v : free_pred) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }

        // equal_start: backward window-length DP over synchronized steps.
        std::vector<uint8_t> cur(nn, 1);
        for (int i = 0; i < window; ++i) {
            std::vector<uint8_t> nxt(nn, 0);
            for (const Edge& e : shift.edges())
                for (const Edge& f : shift.edges())
                    if (e.letter == f.letter && cur[static_cast<size_t>(e.target * n + f.target)])
                        nxt[static_cast<size_t>(e.source * n + f.source)] = 1;
            cur = std::move(nxt);
        }
        equal_start = std::move(cur);

        // sync_live: greatest set with a synchronized out-edge back into it.
        sync_live.assign(nn, 1);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t) {
                    size_t id = static_cast<size_t>(s * n + t);
                    if (!sync_live[id]) continue;
                    bool has = false;
                    for (int ei : shift.out_edges()[static_cast<size_t>(s)]) {
                        const Edge& e = shift.edges()[static_cast<size_t>(ei)];
                        for (int fi : shift.out_edges()[static_cast<size_t>(t)]) {
                            const Edge& f = shift.edges()[static_cast<size_t>(fi)];
                            if (e.letter == f.letter &&
                                sync_live[static_cast<size_t>(e.target * n + f.target)]) {
                                has = true;
                                break;
                            }
                        }
                        if (has) break;
                    }
                    if (!has) {
                        sync_live[id] = 0;
                        changed = true;
                    }
                }
        }
    }

    // Pairs that reach the target set through any number of free steps.
    std::vector<uint8_t> free_coreach(const std::vector<uint8_t>& target) const {
        std::vector<uint8_t> out = target;
        std::queue<int> work;
        for (size_t i = 0; i < out.size(); ++i)
            if (out[i]) work.push(static_cast<int>(i));
        while (!work.empty()) {
            int id = work.front();
            work.pop();
            for (int p : free_pred[static_cast<size_t>(id)])
                if (!out[static_cast<size_t>(p)]) {
                    out[static_cast<size_t>(p)] = 1;
                    work.push(p);
                }
        }
        return out;
    }
};

std::vector<StateSet> block_end_sets(const EdgeShift& shift, const std::vector<Word>& blocks) {
    std::vector<StateSet> out;
    out.reserve(blocks.size());
    for (const Word& b : blocks) out.push_back(read_word(shift, all_states(shift), b));
    return out;
}

bool meets(const ProductGraph& pg, const StateSet& a, const StateSet& b,
           const std::vector<uint8_t>& target) {
    for (int s = 0; s < pg.n; ++s) {
        if (!a[static_cast<size_t>(s)]) continue;
        for (int t = 0; t < pg.n; ++t)
            if (b[static_cast<size_t>(t)] && target[static_cast<size_t>(s * pg.n + t)]) return true;
    }
    return false;
}

}  // namespace

AssignmentResult rp_pairs(const EdgeShift& shift, int depth) {
    auto shift_ptr = std::make_shared<const EdgeShift>(shift);
    AssignmentResult out{AssignmentKind::RP, BlockRelation(shift_ptr, depth), {}};
    if (shift.empty()) return out;

    const int len = 2 * depth + 1;
    ProductGraph pg(shift, len);
    std::vector<uint8_t> reach_eq = pg.free_coreach(pg.equal_start);
    const auto& blocks = out.relation.blocks();
    std::vector<StateSet> ends = block_end_sets(shift, blocks);

    for (int i = 0; i < out.relation.block_count(); ++i) {
        for (int j = 0; j < out.relation.block_count(); ++j) {
            const Word& u = blocks[static_cast<size_t>(i)];
            const Word& v = blocks[static_cast<size_t>(j)];
            bool related = meets(pg, ends[static_cast<size_t>(i)], ends[static_cast<size_t>(j)],
                                 reach_eq);
            // Equal windows overlapping the central block: both blocks must
            // agree on the shared part and admit a common extension.
            for (int n = 0; n <= 2 * depth && !related; ++n) {
                if (!std::equal(u.begin() + n, u.end(), v.begin() + n)) continue;
                // Synchronized extension of length n from the end states.
                std::vector<uint8_t> cur(static_cast<size_t>(pg.n) * static_cast<size_t>(pg.n), 0);
                for (int s = 0; s < pg.n; ++s)
                    if (ends[static_cast<size_t>(i)][static_cast<size_t>(s)])
                        for (int t = 0; t < pg.n; ++t)
                            if (ends[static_cast<size_t>(j)][static_cast<size_t>(t)])
                                cur[static_cast<size_t>(s * pg.n + t)] = 1;
                for (int st = 0; st < n; ++st) {
                    std::vector<uint8_t> nxt(cur.size(), 0);
                    for (const Edge& e : shift.edges())
                        for (const Edge& f : shift.edges())
                            if (e.letter == f.letter &&
                                cur[static_cast<size_t>(e.source * pg.n + f.source)])
                                nxt[static_cast<size_t>(e.target * pg.n + f.target)] = 1;
                    cur = std::move(nxt);
                }
                related = std::find(cur.begin(), cur.end(), uint8_t{1}) != cur.end();
            }
            if (related) out.relation.set_pair(i, j);
        }
    }
    out.relation.flag = ExactnessFlag::exact();
    return out;
}

AssignmentResult asy_pairs(const EdgeShift& shift, int depth) {
    auto shift_ptr = std::make_shared<const EdgeShift>(shift);
    AssignmentResult out{AssignmentKind::ASY, BlockRelation(shift_ptr, depth), {}};
    if (shift.empty()) return out;

    ProductGraph pg(shift, 2 * depth + 1);
    std::vector<uint8_t> reach_live = pg.free_coreach(pg.sync_live);
    const auto& blocks = out.relation.blocks();
    std::vector<StateSet> ends = block_end_sets(shift, blocks);

    for (int i = 0; i < out.relation.block_count(); ++i)
        for (int j = 0; j < out.relation.block_count(); ++j)
            if (meets(pg, ends[static_cast<size_t>(i)], ends[static_cast<size_t>(j)], reach_live))
                out.relation.set_pair(i, j);
    out.relation.flag = ExactnessFlag::exact();
    return out;
}

AssignmentResult compute_assignment(const EdgeShift& shift, AssignmentKind kind, int depth,
                                    const IEParams& params) {
    switch (kind) {
        case AssignmentKind::IE: return ie_pairs(shift, depth, params);
        case AssignmentKind::RP: return rp_pairs(shift, depth);
        case AssignmentKind::ASY: return asy_pairs(shift, depth);
    }
    throw SemanticError("unknown assignment kind");
}

AxiomReport check_axiom_invariance(const AssignmentResult& result) {
    AxiomReport report;
    const BlockRelation& r = result.relation;
    const EdgeShift& shift = r.shift();
    const auto& blocks = r.blocks();
    for (int i = 0; i < r.block_count(); ++i) {
        for (int j = 0; j < r.block_count(); ++j) {
            if (!r.pair(i, j)) continue;
            const Word& u = blocks[static_cast<size_t>(i)];
            const Word& v = blocks[static_cast<size_t>(j)];
            bool extended = false;
            for (Letter a = 0; a < shift.alphabet_size() && !extended; ++a) {
                Word un(u.begin() + 1, u.end());
                un.push_back(a);
                int ui = r.block_index(un);
                if (ui < 0) continue;
                // One-step extension must also be a word.
                Word ue = u;
                ue.push_back(a);
                if (!shift.allows(ue)) continue;
                for (Letter b = 0; b < shift.alphabet_size() && !extended; ++b) {
                    Word vn(v.begin() + 1, v.end());
                    vn.push_back(b);
                    int vi = r.block_index(vn);
                    if (vi < 0) continue;
                    Word ve = v;
                    ve.push_back(b);
                    if (!shift.allows(ve)) continue;
                    if (r.pair(ui, vi)) extended = true;
                }
            }
            if (!extended) {
                report.passed = false;
                report.failures.push_back("pair (" + word_to_string(u, shift.alphabet()) + ", " +
                                          word_to_string(v, shift.alphabet()) +
                                          ") has no related one-step extension");
            }
        }
    }
    return report;
}

AxiomReport check_axiom_factor(AssignmentKind kind, const SlidingBlockCode& code,
                               const EdgeShift& source, int depth, const IEParams& params) {
    AxiomReport report;
    const int w = code.window_radius;
    EdgeShift image = apply_code(code, source);

    AssignmentResult src = compute_assignment(source, kind, depth + w, params);
    AssignmentResult img = compute_assignment(image, kind, depth, params);

    const auto& blocks = src.relation.blocks();
    for (int i = 0; i < src.relation.block_count(); ++i) {
        for (int j = 0; j < src.relation.block_count(); ++j) {
            if (!src.relation.pair(i, j)) continue;
            // For IE only certified pairs are asserted members; unresolved
            // ones carry no claim to push through the factor map.
            if (kind == AssignmentKind::IE &&
                src.status(i, j).kind != PairStatus::Kind::CertifiedIE)
                continue;
            Word iu = apply_code_to_word(code, blocks[static_cast<size_t>(i)]);
            Word iv = apply_code_to_word(code, blocks[static_cast<size_t>(j)]);
            if (!img.relation.member(iu, iv)) {
                report.passed = false;
                report.failures.push_back(
                    "image of (" + word_to_string(blocks[static_cast<size_t>(i)], source.alphabet()) +
                    ", " + word_to_string(blocks[static_cast<size_t>(j)], source.alphabet()) +
                    ") = (" + word_to_string(iu, image.alphabet()) + ", " +
                    word_to_string(iv, image.alphabet()) + ") is not in the image assignment");
            }
        }
    }
    return report;
}

EntropyLinkReport entropy_link_check(const EdgeShift& shift, int depth, const IEParams& params) {
    EntropyLinkReport report;
    AssignmentResult ie = ie_pairs(shift, depth, params);
    for (int i = 0; i < ie.relation.block_count(); ++i)
        for (int j = 0; j < ie.relation.block_count(); ++j) {
            if (i == j) continue;
            const PairStatus& st = ie.status(i, j);
            if (st.kind == PairStatus::Kind::UnknownAtBudget) {
                report.outcome = EntropyLinkReport::Outcome::Inconclusive;
                return report;
            }
            if (st.kind == PairStatus::Kind::CertifiedIE) report.has_offdiagonal_ie = true;
        }
    report.positive_entropy = shift.entropy() > 1e-9;
    report.outcome = report.has_offdiagonal_ie == report.positive_entropy
                         ? EntropyLinkReport::Outcome::Pass
                         : EntropyLinkReport::Outcome::Fail;
    return report;
}

EquicontinuityReport equicontinuity_check(const EdgeShift& shift, int max_depth) {
    EquicontinuityReport report;
    for (int k = 0; k <= max_depth; ++k) {
        AssignmentResult rp = rp_pairs(shift, k);
        for (int i = 0; i < rp.relation.block_count(); ++i)
            for (int j = 0; j < rp.relation.block_count(); ++j)
                if (rp.relation.pair(i, j) && i != j) {
                    report.equicontinuous = false;
                    report.witness = {rp.relation.blocks()[static_cast<size_t>(i)],
                                      rp.relation.blocks()[static_cast<size_t>(j)]};
                    return report;
                }
    }
    return report;
}

Verdict classify_full(const AssignmentResult& result) {
    const BlockRelation& r = result.relation;
    if (auto missing = r.first_missing()) {
        return {Verdict::Kind::NotFull, r.depth(),
                {{word_to_string(missing->first, r.shift().alphabet()),
                  word_to_string(missing->second, r.shift().alphabet())}}};
    }
    if (result.kind == AssignmentKind::IE) {
        bool all_certified = true;
        for (const PairStatus& status : result.per_pair)
            if (status.kind != PairStatus::Kind::CertifiedIE) all_certified = false;
        if (all_certified) return {Verdict::Kind::Full, r.depth(), std::nullopt};
    }
    // Every pair present at this depth, but presence alone does not certify
    // fullness of the underlying relation.
    return {Verdict::Kind::UnknownAtBudget, r.depth(), std::nullopt};
}

Verdict classify_realizable(const EdgeShift& shift, AssignmentKind kind, int cap, int start_depth,
                            int max_depth, const IEParams& params) {
    if (shift.empty()) throw EmptyShiftError("cannot classify the empty shift");
    if (start_depth < 1 || max_depth < start_depth)
        throw SemanticError("need 1 <= depth <= max-depth");

    for (int k = start_depth; k <= max_depth; ++k) {
        AssignmentResult result = compute_assignment(shift, kind, k, params);
        if (k == start_depth) {
            Verdict full = classify_full(result);
            if (full.kind == Verdict::Kind::Full)
                return {Verdict::Kind::RealizableCertified, k, std::nullopt};
        }
        RankResult rr = gamma_rank(Relation{result.relation}, cap);
        if (rr.rank.at_least) continue;
        const auto& stable = std::get<BlockRelation>(rr.stable());
        if (auto missing = stable.first_missing()) {
            return {Verdict::Kind::RefutedAtDepth, k,
                    {{word_to_string(missing->first, shift.alphabet()),
                      word_to_string(missing->second, shift.alphabet())}}};
        }
    }
    return {Verdict::Kind::UnknownAtBudget, max_depth, std::nullopt};
}

}  // namespace dynpair
