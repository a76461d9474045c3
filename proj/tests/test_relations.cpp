#include <doctest.h>

#include "dynpair/block_relation.hpp"
#include "dynpair/edge_shift.hpp"
#include "dynpair/family_relation.hpp"
#include "oracles.hpp"

using namespace dynpair;

namespace {

std::shared_ptr<const SpacePresentation> chain_space() {
    // p, q, r with families f -> p, g -> q, h -> r.
    auto sp = std::make_shared<SpacePresentation>();
    sp->add_base_point("p");
    sp->add_base_point("q");
    sp->add_base_point("r");
    sp->add_family("f", SymbolicPoint::base(0));
    sp->add_family("g", SymbolicPoint::base(1));
    sp->add_family("h", SymbolicPoint::base(2));
    return sp;
}

std::shared_ptr<const EdgeShift> make_shift(std::vector<Word> forbidden,
                                            std::vector<std::string> alphabet = {"0", "1"}) {
    return std::make_shared<const EdgeShift>(
        build_edge_shift(SftSpec{std::move(alphabet), std::move(forbidden)}));
}

SymbolicPoint f_(int family, int k) { return SymbolicPoint::member(family, k); }
SymbolicPoint base_(int b) { return SymbolicPoint::base(b); }

}  // namespace

TEST_CASE("family saturation composes aligned chains") {
    auto sp = chain_space();
    FamilyRelation r(sp);
    r.insert(AlignedAtom{0, 1, 0});  // f ~ g
    r.insert(AlignedAtom{1, 2, 0});  // g ~ h
    FamilyRelation sat = transitive_saturate(r);

    // Compositions reach f ~ h at every index; cross-check against an
    // explicit chain search over points with index <= 8.
    for (int k = 0; k <= 8; ++k) {
        CHECK(sat.member(f_(0, k), f_(2, k)));
        CHECK(sat.member(f_(2, k), f_(0, k)));
    }
    oracle::RefEvaluator ref(*sp, 8);
    auto pairs = ref.restrict(r);
    // transitive closure on explicit points
    auto closed = pairs;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<int, int>> add;
        for (auto [a, b] : closed)
            for (auto [c, d] : closed)
                if (b == c && !closed.contains({a, d})) add.push_back({a, d});
        for (auto pr : add) changed |= closed.insert(pr).second;
    }
    CHECK(ref.restrict(sat) == closed);
}

TEST_CASE("family saturation is idempotent and leaves diagonal-only input unchanged") {
    auto sp = chain_space();
    FamilyRelation delta(sp);
    delta = add_diagonal(delta);
    FamilyRelation sat = transitive_saturate(delta);
    CHECK(sat.atoms() == delta.atoms());

    FamilyRelation r(sp);
    r.insert(AlignedAtom{0, 1, 2});
    FamilyRelation once = transitive_saturate(r);
    FamilyRelation twice = transitive_saturate(once);
    CHECK(once.atoms() == twice.atoms());
}

TEST_CASE("saturation composes aligned atoms with rectangles through tails and coincidences") {
    auto sp = std::make_shared<SpacePresentation>();
    sp->add_base_point("p");
    sp->add_base_point("z");
    sp->add_family("f", SymbolicPoint::base(0));
    sp->add_family("g", SymbolicPoint::base(0));

    SUBCASE("finite middle set selects matching indices") {
        FamilyRelation r(sp);
        r.insert(AlignedAtom{0, 1, 0});
        r.insert(PairAtom{f_(1, 5), base_(1)});  // g(5) ~ z
        FamilyRelation sat = transitive_saturate(r);
        CHECK(sat.member(f_(0, 5), base_(1)));   // f(5) ~ z through g(5)
        CHECK(!sat.member(f_(0, 4), base_(1)));
    }
    SUBCASE("tail middle yields a whole tail") {
        FamilyRelation r(sp);
        r.insert(AlignedAtom{0, 1, 3});
        r.insert(TailPointAtom{TailSet{1, 5, false}, base_(1)});  // otail(g,5) x {z}
        FamilyRelation sat = transitive_saturate(r);
        for (int k = 5; k <= 10; ++k) CHECK(sat.member(f_(0, k), base_(1)));
        CHECK(!sat.member(f_(0, 4), base_(1)));
        CHECK(!sat.member(base_(0), base_(1)));  // no limits before closure
    }
    SUBCASE("rectangles compose through a shared limit point") {
        // tail(f, 0) includes lim f = p; {p} x {z} then chains through it.
        FamilyRelation r(sp);
        r.insert(TailPointAtom{TailSet{0, 0, true}, base_(1)});
        r.insert(PairAtom{base_(1), f_(1, 7)});
        FamilyRelation sat = transitive_saturate(r);
        CHECK(sat.member(base_(0), f_(1, 7)));  // p ~ z ~ g(7)
        CHECK(sat.member(f_(0, 2), f_(1, 7)));
    }
}

TEST_CASE("topological closure adds limit pairs and closes tails") {
    auto sp = chain_space();
    SUBCASE("aligned atoms gain their limit pair") {
        FamilyRelation r(sp);
        r.insert(AlignedAtom{0, 1, 0});
        FamilyRelation closed = topological_closure(r);
        CHECK(closed.member(base_(0), base_(1)));
        CHECK(closed.member(base_(1), base_(0)));
        CHECK(!r.member(base_(0), base_(1)));
    }
    SUBCASE("open tails inside rectangles become closed tails") {
        FamilyRelation r(sp);
        r.insert(PointTailAtom{base_(2), TailSet{2, 2, false}});  // {z=r} x otail(h,2)
        FamilyRelation closed = topological_closure(r);
        CHECK(!r.member(base_(2), base_(2)));
        CHECK(closed.member(base_(2), base_(2)));  // lim h = r
        bool has_closed_tail = false;
        for (const Atom& a : closed.atoms())
            if (const auto* pt = std::get_if<PointTailAtom>(&a))
                has_closed_tail |= pt->t.with_limit && pt->t.from == 2;
        CHECK(has_closed_tail);
    }
    SUBCASE("closure is idempotent") {
        FamilyRelation r(sp);
        r.insert(AlignedAtom{0, 2, 1});
        r.insert(TailTailAtom{TailSet{0, 0, false}, TailSet{1, 4, false}});
        FamilyRelation once = topological_closure(r);
        CHECK(topological_closure(once).atoms() == once.atoms());
    }
}

TEST_CASE("add_diagonal") {
    auto sp = chain_space();
    SUBCASE("the empty relation gains exactly the diagonal") {
        FamilyRelation r(sp);
        FamilyRelation d = add_diagonal(r);
        for (int b = 0; b < 3; ++b) CHECK(d.member(base_(b), base_(b)));
        for (int f = 0; f < 3; ++f)
            for (int k = 0; k <= 5; ++k) CHECK(d.member(f_(f, k), f_(f, k)));
        CHECK(!d.member(base_(0), base_(1)));
        CHECK(!d.member(f_(0, 1), f_(0, 2)));
    }
    SUBCASE("idempotent") {
        FamilyRelation d = add_diagonal(FamilyRelation(sp));
        CHECK(add_diagonal(d).atoms() == d.atoms());
    }
    SUBCASE("golden mean at depth 1 gains one diagonal pair per allowed 3-block") {
        auto shift = make_shift({{1, 1}});
        BlockRelation r(shift, 1);
        CHECK(r.block_count() == 5);  // 000 001 010 100 101
        BlockRelation d = add_diagonal_block(r);
        CHECK(d.pair_count() == 5);
        for (int i = 0; i < d.block_count(); ++i) CHECK(d.pair(i, i));
    }
}

TEST_CASE("membership semantics") {
    auto sp = chain_space();
    FamilyRelation r(sp);
    r.insert(AlignedAtom{0, 1, 0});
    CHECK(r.member(f_(0, 3), f_(1, 3)));
    CHECK(!r.member(f_(0, 3), f_(1, 4)));
    CHECK_THROWS_AS(r.member(SymbolicPoint::member(9, 0), base_(0)), UnknownNameError);

    FamilyRelation d = add_diagonal(FamilyRelation(sp));
    CHECK(d.member(base_(0), base_(0)));
}

TEST_CASE("block relation saturation is the transitive closure of the pair graph") {
    auto shift3 = make_shift({}, {"a", "b", "c"});
    BlockRelation r3(shift3, 0);
    r3.add_pair({0}, {1});
    r3.add_pair({1}, {0});
    r3.add_pair({1}, {2});
    r3.add_pair({2}, {1});
    BlockRelation sat = transitive_saturate_block(r3);
    CHECK(sat.member({0}, {2}));
    CHECK(sat.member({2}, {0}));
    CHECK(sat.member({0}, {0}));

    // Cross-check the full pair set against breadth-first chain search.
    std::set<std::pair<Word, Word>> pairs{{{0}, {1}}, {{1}, {0}}, {{1}, {2}}, {{2}, {1}}};
    auto closed = oracle::chain_closure(pairs);
    for (int i = 0; i < sat.block_count(); ++i)
        for (int j = 0; j < sat.block_count(); ++j)
            CHECK(sat.pair(i, j) ==
                  closed.contains({sat.blocks()[static_cast<size_t>(i)],
                                   sat.blocks()[static_cast<size_t>(j)]}));
}

TEST_CASE("block closure is the identity") {
    auto shift = make_shift({{1, 1}});
    BlockRelation r(shift, 1);
    r.add_pair({0, 0, 0}, {0, 1, 0});
    r.add_pair({0, 1, 0}, {0, 0, 0});
    BlockRelation c = topological_closure_block(r);
    CHECK(c.same_pairs(r));
}

TEST_CASE("refine") {
    SUBCASE("the full relation refines to the full relation") {
        auto shift = make_shift({});
        BlockRelation r(shift, 0);
        for (int i = 0; i < r.block_count(); ++i)
            for (int j = 0; j < r.block_count(); ++j) r.set_pair(i, j);
        BlockRelation fine = refine(r);
        CHECK(fine.depth() == 1);
        CHECK(fine.all_pairs());
        CHECK(fine.flag == ExactnessFlag::outer_approx(1));
    }
    SUBCASE("the thickened diagonal keeps exactly the pairs equal on the central window") {
        auto shift = make_shift({});
        BlockRelation delta(shift, 0);
        for (int i = 0; i < delta.block_count(); ++i) delta.set_pair(i, i);
        BlockRelation fine = refine(delta);
        // Recompute by brute force from the refinement rule: 3-block pairs
        // whose middle letters agree.
        size_t expected = 0;
        for (const Word& u : shift->words(3))
            for (const Word& v : shift->words(3))
                if (u[1] == v[1]) ++expected;
        CHECK(expected == 32);
        CHECK(fine.pair_count() == expected);
        CHECK(fine.member({0, 0, 0}, {1, 0, 1}));
        CHECK(!fine.member({0, 0, 0}, {0, 1, 0}));
    }
    SUBCASE("the empty relation refines to the empty relation") {
        auto shift = make_shift({{1, 1}});
        BlockRelation r(shift, 0);
        CHECK(refine(r).pair_count() == 0);
    }
    SUBCASE("the represented set never grows: refined pairs project into the coarse relation") {
        auto shift = make_shift({{1, 1}});
        BlockRelation r(shift, 1);
        r.add_pair({0, 0, 1}, {0, 1, 0});
        r.add_pair({0, 1, 0}, {0, 0, 1});
        r = add_diagonal_block(r);
        BlockRelation fine = refine(r);
        for (int i = 0; i < fine.block_count(); ++i)
            for (int j = 0; j < fine.block_count(); ++j)
                if (fine.pair(i, j)) {
                    const Word& u = fine.blocks()[static_cast<size_t>(i)];
                    const Word& v = fine.blocks()[static_cast<size_t>(j)];
                    CHECK(r.member(Word(u.begin() + 1, u.end() - 1),
                                   Word(v.begin() + 1, v.end() - 1)));
                }
    }
}

TEST_CASE("operators are extensive and monotone on sampled relations") {
    auto sp = chain_space();
    FamilyRelation small(sp);
    small.insert(AlignedAtom{0, 1, 1});
    FamilyRelation big = small;
    big.insert(PairAtom{f_(1, 2), f_(2, 2)});

    std::vector<std::pair<SymbolicPoint, SymbolicPoint>> samples;
    for (int f = 0; f < 3; ++f)
        for (int k = 0; k <= 6; ++k) samples.push_back({f_(f, k), f_((f + 1) % 3, k)});
    for (int b = 0; b < 3; ++b) samples.push_back({base_(b), base_((b + 1) % 3)});

    auto check_contains = [&](const FamilyRelation& sub, const FamilyRelation& super) {
        for (auto [x, y] : samples) {
            if (sub.member(x, y)) CHECK(super.member(x, y));
        }
        CHECK(super.contains(sub));
    };
    check_contains(small, transitive_saturate(small));
    check_contains(small, topological_closure(small));
    check_contains(small, add_diagonal(small));
    check_contains(transitive_saturate(small), transitive_saturate(big));
    check_contains(topological_closure(small), topological_closure(big));
    check_contains(add_diagonal(small), add_diagonal(big));
}

TEST_CASE("saturation terminates within the documented step bound") {
    auto sp = chain_space();
    FamilyRelation r(sp);
    r.insert(AlignedAtom{0, 1, 0});
    r.insert(AlignedAtom{1, 2, 0});
    r.insert(PointTailAtom{base_(0), TailSet{2, 3, false}});
    long steps = 0;
    FamilyRelation sat = transitive_saturate(r, &steps);
    long atoms = static_cast<long>(sat.atoms().size());
    long families = sp->family_count();
    long max_index = 3 + 2;
    CHECK(steps <= atoms * atoms * families * families * max_index);
}

TEST_CASE("backend agreement on an encoded fixture") {
    // Space {p, q; f -> p, g -> q} with E = sym ALIGNED(f, g, 0), encoded
    // into the full 2-shift: p = all zeros, q = single one at the center,
    // f(k) = single one at position k+1, g(k) = ones at positions 0 and k+1.
    auto sp = std::make_shared<SpacePresentation>();
    sp->add_base_point("p");
    sp->add_base_point("q");
    sp->add_family("f", SymbolicPoint::base(0));
    sp->add_family("g", SymbolicPoint::base(1));
    FamilyRelation exact(sp);
    exact.insert(AlignedAtom{0, 1, 0});
    FamilyRelation exact_sat = transitive_saturate(exact);

    auto shift = make_shift({});
    auto encode = [&](SymbolicPoint pt, int depth) {
        Word block;
        for (int m = -depth; m <= depth; ++m) {
            bool one = false;
            if (pt.kind == SymbolicPoint::Kind::Base) {
                one = pt.id == 1 && m == 0;
            } else if (pt.id == 0) {
                one = m == pt.index + 1;
            } else {
                one = m == 0 || m == pt.index + 1;
            }
            block.push_back(one ? 1 : 0);
        }
        return block;
    };
    auto points_upto = [&](int max_index) {
        std::vector<SymbolicPoint> pts{base_(0), base_(1)};
        for (int f = 0; f < 2; ++f)
            for (int k = 0; k <= max_index; ++k) pts.push_back(f_(f, k));
        return pts;
    };

    SUBCASE("block saturation is sound for exact members at depth 1, indices <= 8") {
        const int depth = 1;
        BlockRelation block(shift, depth);
        for (int k = 0; k <= 8; ++k) {
            block.add_pair(encode(f_(0, k), depth), encode(f_(1, k), depth));
            block.add_pair(encode(f_(1, k), depth), encode(f_(0, k), depth));
        }
        BlockRelation block_sat = transitive_saturate_block(block);
        for (auto x : points_upto(8))
            for (auto y : points_upto(8))
                if (exact_sat.member(x, y))
                    CHECK(block_sat.member(encode(x, depth), encode(y, depth)));
    }
    SUBCASE("at depth 4 the encoding separates indices <= 2 and membership agrees exactly") {
        const int depth = 4;
        BlockRelation block(shift, depth);
        for (int k = 0; k <= 2; ++k) {
            block.add_pair(encode(f_(0, k), depth), encode(f_(1, k), depth));
            block.add_pair(encode(f_(1, k), depth), encode(f_(0, k), depth));
        }
        BlockRelation block_sat = transitive_saturate_block(block);
        for (auto x : points_upto(2))
            for (auto y : points_upto(2))
                CHECK(exact_sat.member(x, y) ==
                      block_sat.member(encode(x, depth), encode(y, depth)));
    }
}
