#include "dynpair/gamma_engine.hpp"

namespace dynpair {

FamilyRelation gamma_step(const FamilyRelation& r) {
    return topological_closure(add_diagonal(transitive_saturate(r)));
}

BlockRelation gamma_step(const BlockRelation& r) {
    return topological_closure_block(add_diagonal_block(transitive_saturate_block(r)));
}

Relation gamma_step(const Relation& r) {
    return std::visit([](const auto& rel) -> Relation { return gamma_step(rel); }, r);
}

namespace {

bool relations_equal(const Relation& a, const Relation& b) {
    if (const auto* fa = std::get_if<FamilyRelation>(&a)) {
        const auto* fb = std::get_if<FamilyRelation>(&b);
        return fb && fa->atoms() == fb->atoms();
    }
    const auto& ba = std::get<BlockRelation>(a);
    const auto& bb = std::get<BlockRelation>(b);
    return ba.same_pairs(bb);
}

bool relation_leq(const Relation& a, const Relation& b) {
    if (const auto* fa = std::get_if<FamilyRelation>(&a))
        return std::get<FamilyRelation>(b).contains(*fa);
    return std::get<BlockRelation>(a).subset_of(std::get<BlockRelation>(b));
}

}  // namespace

RankResult gamma_rank(const Relation& r, int cap) {
    if (const auto* br = std::get_if<BlockRelation>(&r)) {
        if (!br->symmetric())
            throw SemanticError("gamma rank requires a symmetric relation; "
                                "refusing to symmetrize implicitly");
    }
    auto iter = iterate_operator<Relation>(
        [](const Relation& x) { return gamma_step(x); }, r, cap, IterationDirection::Growing,
        relations_equal, relation_leq);

    RankResult out;
    out.rank = RankValue{iter.rank, iter.capped};
    out.stages = std::move(iter.stages);
    out.flag = std::visit([](const auto& rel) { return rel.flag; }, r);
    return out;
}

std::string Verdict::kind_string() const {
    switch (kind) {
        case Kind::Full: return "Full";
        case Kind::NotFull: return "NotFull";
        case Kind::RealizableCertified: return "RealizableCertified";
        case Kind::RefutedAtDepth: return "RefutedAtDepth";
        case Kind::UnknownAtBudget: return "UnknownAtBudget";
    }
    return "?";
}

Verdict classify_full(const FamilyRelation& r) {
    FullnessResult full = check_full(r);
    if (full.full) return {Verdict::Kind::Full, 0, std::nullopt};
    return {Verdict::Kind::NotFull, 0,
            {{r.space().point_name(full.witness->first), r.space().point_name(full.witness->second)}}};
}

Verdict classify_realizable(const FamilyRelation& r, int cap) {
    RankResult rr = gamma_rank(Relation{r}, cap);
    if (rr.rank.at_least) return {Verdict::Kind::UnknownAtBudget, 0, std::nullopt};
    const auto& stable = std::get<FamilyRelation>(rr.stable());
    FullnessResult full = check_full(stable);
    if (full.full) return {Verdict::Kind::RealizableCertified, 0, std::nullopt};
    return {Verdict::Kind::NotFull, 0,
            {{stable.space().point_name(full.witness->first),
              stable.space().point_name(full.witness->second)}}};
}

RankResult p_rank(const Relation& r, int cap) { return gamma_rank(r, cap); }

}  // namespace dynpair
