#include "dynpair/family_relation.hpp"

#include <algorithm>
#include <deque>

namespace dynpair {

namespace {

// One side of a rectangle atom.
using Side = std::variant<SymbolicPoint, TailSet>;

bool tail_dominates(const TailSet& a, const TailSet& b) {
    return a.family == b.family && a.from <= b.from &&
           (a.with_limit || !b.with_limit);
}

std::optional<std::pair<Side, Side>> rect_sides(const Atom& a) {
    if (const auto* p = std::get_if<PairAtom>(&a)) return {{Side{p->a}, Side{p->b}}};
    if (const auto* p = std::get_if<PointTailAtom>(&a)) return {{Side{p->p}, Side{p->t}}};
    if (const auto* p = std::get_if<TailPointAtom>(&a)) return {{Side{p->t}, Side{p->p}}};
    if (const auto* p = std::get_if<TailTailAtom>(&a)) return {{Side{p->s}, Side{p->t}}};
    return std::nullopt;
}

Atom make_rect(const Side& l, const Side& r) {
    if (std::holds_alternative<SymbolicPoint>(l)) {
        if (std::holds_alternative<SymbolicPoint>(r))
            return PairAtom{std::get<SymbolicPoint>(l), std::get<SymbolicPoint>(r)};
        return PointTailAtom{std::get<SymbolicPoint>(l), std::get<TailSet>(r)};
    }
    if (std::holds_alternative<SymbolicPoint>(r))
        return TailPointAtom{std::get<TailSet>(l), std::get<SymbolicPoint>(r)};
    return TailTailAtom{std::get<TailSet>(l), std::get<TailSet>(r)};
}

}  // namespace

Atom transpose(const Atom& a) {
    if (const auto* p = std::get_if<AlignedAtom>(&a)) return AlignedAtom{p->g, p->f, p->from};
    if (const auto* p = std::get_if<PairAtom>(&a)) return PairAtom{p->b, p->a};
    if (const auto* p = std::get_if<PointTailAtom>(&a)) return TailPointAtom{p->t, p->p};
    if (const auto* p = std::get_if<TailPointAtom>(&a)) return PointTailAtom{p->p, p->t};
    const auto& tt = std::get<TailTailAtom>(a);
    return TailTailAtom{tt.t, tt.s};
}

FamilyRelation::FamilyRelation(std::shared_ptr<const SpacePresentation> space, ExactnessFlag f)
    : flag(f), space_(std::move(space)) {
    if (!space_) throw SemanticError("relation needs a space");
}

bool FamilyRelation::tail_contains(const TailSet& t, SymbolicPoint q) const {
    if (q.kind == SymbolicPoint::Kind::Member && q.id == t.family && q.index >= t.from)
        return true;
    return t.with_limit && q == space_->limit_of(t.family);
}

bool FamilyRelation::insert_one(const Atom& atom) {
    // Validate symbols against the space.
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            auto check_tail = [&](const TailSet& t) {
                if (t.family < 0 || t.family >= space_->family_count())
                    throw UnknownNameError("tail over unknown family");
                if (t.from < 0) throw SemanticError("tail index must be nonnegative");
            };
            if constexpr (std::is_same_v<T, AlignedAtom>) {
                check_tail(TailSet{a.f, a.from, false});
                check_tail(TailSet{a.g, a.from, false});
            } else if constexpr (std::is_same_v<T, PairAtom>) {
                space_->check_point(a.a);
                space_->check_point(a.b);
            } else if constexpr (std::is_same_v<T, PointTailAtom>) {
                space_->check_point(a.p);
                check_tail(a.t);
            } else if constexpr (std::is_same_v<T, TailPointAtom>) {
                space_->check_point(a.p);
                check_tail(a.t);
            } else {
                check_tail(a.s);
                check_tail(a.t);
            }
        },
        atom);

    // Same-shape dominance: skip the new atom if a stronger one exists,
    // drop weaker ones it supersedes.
    auto dominates = [&](const Atom& x, const Atom& y) -> bool {
        if (x.index() != y.index()) return false;
        if (const auto* a = std::get_if<AlignedAtom>(&x)) {
            const auto& b = std::get<AlignedAtom>(y);
            return a->f == b.f && a->g == b.g && a->from <= b.from;
        }
        if (const auto* a = std::get_if<PointTailAtom>(&x)) {
            const auto& b = std::get<PointTailAtom>(y);
            return a->p == b.p && tail_dominates(a->t, b.t);
        }
        if (const auto* a = std::get_if<TailPointAtom>(&x)) {
            const auto& b = std::get<TailPointAtom>(y);
            return a->p == b.p && tail_dominates(a->t, b.t);
        }
        if (const auto* a = std::get_if<TailTailAtom>(&x)) {
            const auto& b = std::get<TailTailAtom>(y);
            return tail_dominates(a->s, b.s) && tail_dominates(a->t, b.t);
        }
        return x == y;  // PairAtom
    };

    for (const Atom& existing : atoms_)
        if (dominates(existing, atom)) return false;
    for (auto it = atoms_.begin(); it != atoms_.end();) {
        if (dominates(atom, *it))
            it = atoms_.erase(it);
        else
            ++it;
    }
    atoms_.insert(atom);
    return true;
}

bool FamilyRelation::insert(const Atom& atom) {
    bool a = insert_one(atom);
    bool b = insert_one(transpose(atom));
    return a || b;
}

bool FamilyRelation::member(SymbolicPoint x, SymbolicPoint y) const {
    space_->check_point(x);
    space_->check_point(y);
    for (const Atom& atom : atoms_) {
        bool hit = std::visit(
            [&](const auto& a) -> bool {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, AlignedAtom>) {
                    return x.kind == SymbolicPoint::Kind::Member && x.id == a.f &&
                           y.kind == SymbolicPoint::Kind::Member && y.id == a.g &&
                           x.index == y.index && x.index >= a.from;
                } else if constexpr (std::is_same_v<T, PairAtom>) {
                    return x == a.a && y == a.b;
                } else if constexpr (std::is_same_v<T, PointTailAtom>) {
                    return x == a.p && tail_contains(a.t, y);
                } else if constexpr (std::is_same_v<T, TailPointAtom>) {
                    return tail_contains(a.t, x) && y == a.p;
                } else {
                    return tail_contains(a.s, x) && tail_contains(a.t, y);
                }
            },
            atom);
        if (hit) return true;
    }
    return false;
}

bool FamilyRelation::contains(const FamilyRelation& other) const {
    for (const Atom& atom : other.atoms_) {
        if (const auto* p = std::get_if<PairAtom>(&atom)) {
            if (!member(p->a, p->b)) return false;
            continue;
        }
        bool dominated = false;
        for (const Atom& mine : atoms_) {
            if (mine == atom) {
                dominated = true;
                break;
            }
            if (mine.index() != atom.index()) continue;
            if (const auto* a = std::get_if<AlignedAtom>(&mine)) {
                const auto& b = std::get<AlignedAtom>(atom);
                dominated = a->f == b.f && a->g == b.g && a->from <= b.from;
            } else if (const auto* a = std::get_if<PointTailAtom>(&mine)) {
                const auto& b = std::get<PointTailAtom>(atom);
                dominated = a->p == b.p && tail_dominates(a->t, b.t);
            } else if (const auto* a = std::get_if<TailPointAtom>(&mine)) {
                const auto& b = std::get<TailPointAtom>(atom);
                dominated = a->p == b.p && tail_dominates(a->t, b.t);
            } else if (const auto* a = std::get_if<TailTailAtom>(&mine)) {
                const auto& b = std::get<TailTailAtom>(atom);
                dominated = tail_dominates(a->s, b.s) && tail_dominates(a->t, b.t);
            }
            if (dominated) break;
        }
        if (!dominated) return false;
    }
    return true;
}

namespace {

// Composition machinery for the saturation fixpoint.
struct Composer {
    const SpacePresentation& space;

    bool tail_has(const TailSet& t, SymbolicPoint q) const {
        if (q.kind == SymbolicPoint::Kind::Member && q.id == t.family && q.index >= t.from)
            return true;
        return t.with_limit && q == space.limit_of(t.family);
    }

    bool sides_intersect(const Side& a, const Side& b) const {
        if (const auto* p = std::get_if<SymbolicPoint>(&a)) {
            if (const auto* q = std::get_if<SymbolicPoint>(&b)) return *p == *q;
            return tail_has(std::get<TailSet>(b), *p);
        }
        const TailSet& s = std::get<TailSet>(a);
        if (const auto* q = std::get_if<SymbolicPoint>(&b)) return tail_has(s, *q);
        const TailSet& t = std::get<TailSet>(b);
        if (s.family == t.family) return true;  // tails of one family always meet
        if (s.with_limit && tail_has(t, space.limit_of(s.family))) return true;
        if (t.with_limit && tail_has(s, space.limit_of(t.family))) return true;
        return false;
    }

    // Intersection of a side with the member tail {g(k) : k >= from}:
    // nothing, one member index, or a whole subtail.
    struct MemberMeet {
        enum class Kind { Empty, Index, Tail } kind = Kind::Empty;
        int value = 0;  // index or tail start
    };
    MemberMeet meet_member_tail(const Side& side, int g, int from) const {
        if (const auto* p = std::get_if<SymbolicPoint>(&side)) {
            if (p->kind == SymbolicPoint::Kind::Member && p->id == g && p->index >= from)
                return {MemberMeet::Kind::Index, p->index};
            return {};
        }
        const TailSet& t = std::get<TailSet>(side);
        if (t.family == g) return {MemberMeet::Kind::Tail, std::max(from, t.from)};
        if (t.with_limit) {
            SymbolicPoint lim = space.limit_of(t.family);
            if (lim.kind == SymbolicPoint::Kind::Member && lim.id == g && lim.index >= from)
                return {MemberMeet::Kind::Index, lim.index};
        }
        return {};
    }

    std::vector<Atom> compose(const Atom& a, const Atom& b) const {
        std::vector<Atom> out;
        const auto* al = std::get_if<AlignedAtom>(&a);
        const auto* bl = std::get_if<AlignedAtom>(&b);

        if (al && bl) {
            if (al->g == bl->f)
                out.push_back(AlignedAtom{al->f, bl->g, std::max(al->from, bl->from)});
            return out;
        }
        if (al) {
            auto sides = rect_sides(b);
            auto meet = meet_member_tail(sides->first, al->g, al->from);
            if (meet.kind == MemberMeet::Kind::Index)
                out.push_back(make_rect(Side{SymbolicPoint::member(al->f, meet.value)},
                                        sides->second));
            else if (meet.kind == MemberMeet::Kind::Tail)
                out.push_back(make_rect(Side{TailSet{al->f, meet.value, false}}, sides->second));
            return out;
        }
        if (bl) {
            auto sides = rect_sides(a);
            auto meet = meet_member_tail(sides->second, bl->f, bl->from);
            if (meet.kind == MemberMeet::Kind::Index)
                out.push_back(make_rect(sides->first,
                                        Side{SymbolicPoint::member(bl->g, meet.value)}));
            else if (meet.kind == MemberMeet::Kind::Tail)
                out.push_back(make_rect(sides->first, Side{TailSet{bl->g, meet.value, false}}));
            return out;
        }
        auto sa = rect_sides(a);
        auto sb = rect_sides(b);
        if (sides_intersect(sa->second, sb->first))
            out.push_back(make_rect(sa->first, sb->second));
        return out;
    }
};

}  // namespace

FamilyRelation transitive_saturate(const FamilyRelation& r, long* steps) {
    FamilyRelation out = r;
    Composer comp{out.space()};
    long step_count = 0;

    std::deque<Atom> queue(out.atoms().begin(), out.atoms().end());
    while (!queue.empty()) {
        Atom a = queue.front();
        queue.pop_front();
        if (!out.atoms().contains(a)) continue;  // superseded by a dominator

        std::vector<Atom> snapshot(out.atoms().begin(), out.atoms().end());
        for (const Atom& b : snapshot) {
            for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
                for (const Atom& c : comp.compose(x, y)) {
                    ++step_count;
                    if (out.insert(c)) {
                        queue.push_back(c);
                        queue.push_back(transpose(c));
                    }
                }
            }
        }
    }
    if (steps) *steps = step_count;
    return out;
}

FamilyRelation topological_closure(const FamilyRelation& r) {
    FamilyRelation out(r.space_ptr(), r.flag);
    for (const Atom& atom : r.atoms()) {
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, AlignedAtom>) {
                    out.insert(atom);
                    out.insert(PairAtom{r.space().limit_of(a.f), r.space().limit_of(a.g)});
                } else if constexpr (std::is_same_v<T, PairAtom>) {
                    out.insert(atom);
                } else if constexpr (std::is_same_v<T, PointTailAtom>) {
                    out.insert(PointTailAtom{a.p, TailSet{a.t.family, a.t.from, true}});
                } else if constexpr (std::is_same_v<T, TailPointAtom>) {
                    out.insert(TailPointAtom{TailSet{a.t.family, a.t.from, true}, a.p});
                } else {
                    out.insert(TailTailAtom{TailSet{a.s.family, a.s.from, true},
                                            TailSet{a.t.family, a.t.from, true}});
                }
            },
            atom);
    }
    return out;
}

FamilyRelation add_diagonal(const FamilyRelation& r) {
    FamilyRelation out = r;
    for (int f = 0; f < r.space().family_count(); ++f) out.insert(AlignedAtom{f, f, 0});
    for (int b = 0; b < r.space().base_count(); ++b) {
        SymbolicPoint p = SymbolicPoint::base(b);
        out.insert(PairAtom{p, p});
    }
    return out;
}

FullnessResult check_full(const FamilyRelation& r) {
    const SpacePresentation& sp = r.space();

    // Membership of f(k) in any atom is decided by thresholds <= B, so the
    // finite box [0, B+2] determines fullness.
    int max_index = 0;
    auto see_point = [&](SymbolicPoint p) {
        if (p.kind == SymbolicPoint::Kind::Member) max_index = std::max(max_index, p.index);
    };
    for (const Atom& atom : r.atoms()) {
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, AlignedAtom>) {
                    max_index = std::max(max_index, a.from);
                } else if constexpr (std::is_same_v<T, PairAtom>) {
                    see_point(a.a);
                    see_point(a.b);
                } else if constexpr (std::is_same_v<T, PointTailAtom>) {
                    see_point(a.p);
                    max_index = std::max(max_index, a.t.from);
                } else if constexpr (std::is_same_v<T, TailPointAtom>) {
                    see_point(a.p);
                    max_index = std::max(max_index, a.t.from);
                } else {
                    max_index = std::max(max_index, std::max(a.s.from, a.t.from));
                }
            },
            atom);
    }
    for (int f = 0; f < sp.family_count(); ++f) see_point(sp.limit_of(f));
    const int box = max_index + 2;

    std::vector<std::vector<SymbolicPoint>> classes;
    for (int b = 0; b < sp.base_count(); ++b) classes.push_back({SymbolicPoint::base(b)});
    for (int f = 0; f < sp.family_count(); ++f) {
        std::vector<SymbolicPoint> pts;
        for (int k = 0; k <= box; ++k) pts.push_back(SymbolicPoint::member(f, k));
        classes.push_back(std::move(pts));
    }
    for (const auto& ca : classes)
        for (const auto& cb : classes)
            for (SymbolicPoint x : ca)
                for (SymbolicPoint y : cb)
                    if (!r.member(x, y)) return {false, {{x, y}}};
    return {true, std::nullopt};
}

}  // namespace dynpair
