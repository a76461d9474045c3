#include <doctest.h>

#include "dynpair/text_formats.hpp"

using namespace dynpair;

TEST_CASE("SFT parsing") {
    SUBCASE("spec mode builds the golden mean shift") {
        EdgeShift shift = parse_sft("# golden mean\nalphabet: 0 1\nforbid: 11\n");
        CHECK(shift.state_count() == 2);
        CHECK(shift.edges().size() == 3);
    }
    SUBCASE("direct edge mode") {
        EdgeShift shift = parse_sft(
            "alphabet: 0 1\nstate: a\nstate: b\nedge: a a 0\nedge: a b 1\nedge: b a 0\n");
        CHECK(shift.state_count() == 2);
        CHECK(shift.edges().size() == 3);
    }
    SUBCASE("a forbidden word over the wrong alphabet is a semantic error") {
        CHECK_THROWS_AS(parse_sft("alphabet: 0 1\nforbid: 2\n"), SemanticError);
    }
    SUBCASE("an empty file is a parse error") {
        CHECK_THROWS_AS(parse_sft(""), ParseError);
        CHECK_THROWS_AS(parse_sft("# only a comment\n"), ParseError);
    }
    SUBCASE("mixing modes is rejected") {
        CHECK_THROWS_AS(parse_sft("alphabet: 0 1\nforbid: 11\nstate: a\n"), SemanticError);
    }
    SUBCASE("parse errors carry positions") {
        try {
            parse_sft("alphabet: 0 1\nnonsense: x\n");
            CHECK(false);
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
        }
    }
}

TEST_CASE("SFT serialization round-trips") {
    for (const char* text : {"alphabet: 0 1\nforbid: 11\n", "alphabet: 0 1\nforbid: 00\nforbid: 11\n",
                             "alphabet: a b c\n"}) {
        EdgeShift shift = parse_sft(text);
        EdgeShift reparsed = parse_sft(sft_to_text(shift));
        CHECK(reparsed == shift);
    }
}

TEST_CASE("code parsing") {
    std::string text =
        "code window=0\nsource-alphabet: 0 1\ntarget-alphabet: 0 1\n"
        "rule: 0 -> 0\nrule: 1 -> 0\n";
    SlidingBlockCode code = parse_code(text);
    CHECK(code.window_radius == 0);
    CHECK(code.local_rule.size() == 2);
    CHECK(code.local_rule.at({1}) == 0);
    SUBCASE("rule of wrong window length is rejected") {
        CHECK_THROWS_AS(parse_code("code window=1\nsource-alphabet: 0 1\ntarget-alphabet: 0\n"
                                   "rule: 0 -> 0\n"),
                        SemanticError);
    }
    SUBCASE("duplicate rules are rejected") {
        CHECK_THROWS_AS(parse_code("code window=0\nsource-alphabet: 0\ntarget-alphabet: 0\n"
                                   "rule: 0 -> 0\nrule: 0 -> 0\n"),
                        SemanticError);
    }
}

TEST_CASE("space parsing and round-trip") {
    std::string text = "point p\npoint q\nfamily f -> p\nfamily g -> f[3]\n";
    auto space = parse_space(text);
    CHECK(space->base_count() == 2);
    CHECK(space->family_count() == 2);
    CHECK(space->limit_of("g") == SymbolicPoint::member(0, 3));
    CHECK(*parse_space(space_to_text(*space)) == *space);

    SUBCASE("unknown parent") {
        CHECK_THROWS_AS(parse_space("family f -> nowhere\n"), UnknownNameError);
    }
    SUBCASE("malformed member reference") {
        CHECK_THROWS_AS(parse_space("point p\nfamily f -> p\nfamily g -> f[x]\n"), SemanticError);
    }
}

TEST_CASE("relation parsing") {
    auto space = parse_space("point p\npoint q\nfamily f -> p\nfamily g -> q\n");
    SUBCASE("family atoms") {
        ParsedRelation parsed =
            parse_relation("aligned f g\npair p q\nrect {p} tail(g,2)\nrect otail(f,1) otail(g,0)\n",
                           space.get(), nullptr);
        FamilyRelation r = build_family_relation(parsed, space);
        CHECK(r.member(SymbolicPoint::member(0, 4), SymbolicPoint::member(1, 4)));
        CHECK(r.member(SymbolicPoint::base(0), SymbolicPoint::base(1)));
        CHECK(r.member(SymbolicPoint::base(0), SymbolicPoint::member(1, 2)));
        CHECK(!r.member(SymbolicPoint::base(0), SymbolicPoint::member(1, 1)));  // below the tail
        CHECK(r.member(SymbolicPoint::member(0, 1), SymbolicPoint::member(1, 0)));
        CHECK(!r.member(SymbolicPoint::member(0, 0), SymbolicPoint::member(1, 5)));
    }
    SUBCASE("symmetry is auto-completed with a warning") {
        ParsedRelation parsed = parse_relation("pair p q\n", space.get(), nullptr);
        FamilyRelation r = build_family_relation(parsed, space);
        CHECK(r.member(SymbolicPoint::base(1), SymbolicPoint::base(0)));
        CHECK(parsed.warnings.size() == 1);
    }
    SUBCASE("round-trip through text") {
        ParsedRelation parsed =
            parse_relation("aligned f g 2\nrect {p} tail(g,0)\n", space.get(), nullptr);
        FamilyRelation r = build_family_relation(parsed, space);
        ParsedRelation reparsed = parse_relation(relation_to_text(r), space.get(), nullptr);
        FamilyRelation r2 = build_family_relation(reparsed, space);
        CHECK(r2 == r);
    }
    SUBCASE("block pairs need a shift and a consistent depth") {
        auto shift = std::make_shared<const EdgeShift>(
            build_edge_shift(SftSpec{{"0", "1"}, {{1, 1}}}));
        ParsedRelation parsed =
            parse_relation("blockpair 000 010\n", nullptr, shift.get());
        BlockRelation r = build_block_relation(parsed, shift);
        CHECK(r.depth() == 1);
        CHECK(r.member({0, 0, 0}, {0, 1, 0}));
        CHECK(r.member({0, 1, 0}, {0, 0, 0}));  // auto-completed
        CHECK(parsed.warnings.size() == 1);
        CHECK_THROWS_AS(parse_relation("blockpair 00 01\n", nullptr, shift.get()), SemanticError);
        ParsedRelation disallowed = parse_relation("blockpair 000 111\n", nullptr, shift.get());
        CHECK_THROWS_AS(build_block_relation(disallowed, shift), UnknownNameError);
    }
    SUBCASE("family atoms and block pairs cannot mix") {
        auto shift = std::make_shared<const EdgeShift>(build_edge_shift(SftSpec{{"0", "1"}, {}}));
        CHECK_THROWS_AS(parse_relation("pair p q\nblockpair 0 1\n", space.get(), shift.get()),
                        SemanticError);
    }
}

TEST_CASE("automaton parsing and round-trip") {
    std::string text =
        "alphabet: 0 1\nstate q0 initial\nstate q1\nedge q0 q0 0\nedge q0 q1 1\nedge q1 q1 0\n";
    PathAutomaton a = parse_automaton(text);
    CHECK(a.state_count() == 2);
    CHECK(a.initial() == 0);
    PathAutomaton b = parse_automaton(automaton_to_text(a));
    CHECK(b == a);

    SUBCASE("missing initial state") {
        CHECK_THROWS_AS(parse_automaton("state q0\nedge q0 q0 0\n"), SemanticError);
    }
    SUBCASE("alphabet inferred from edges when absent") {
        PathAutomaton c = parse_automaton("state q0 initial\nedge q0 q0 x\n");
        CHECK(c.alphabet() == std::vector<std::string>{"x"});
    }
}
