#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "dynpair/block_relation.hpp"
#include "dynpair/edge_shift.hpp"
#include "dynpair/family_relation.hpp"
#include "dynpair/finite_system.hpp"
#include "dynpair/path_automaton.hpp"
#include "dynpair/sliding_block_code.hpp"
#include "dynpair/space_presentation.hpp"

namespace dynpair {

// Line-oriented UTF-8 formats; '#' starts a comment. Alphabet letters are
// single-character tokens so that blocks read as plain letter strings.

// SFT files: an `alphabet:` line followed by either `forbid: <word>` lines
// (spec mode) or `state: <name>` / `edge: <src> <dst> <letter>` lines
// (direct edge-shift mode).
EdgeShift parse_sft(const std::string& text);
std::string sft_to_text(const EdgeShift& shift);  // direct mode, round-trips

// Code files: `code window=<w>` then `rule: <block> -> <letter>` lines.
SlidingBlockCode parse_code(const std::string& text);
std::string code_to_text(const SlidingBlockCode& code);

// Space files: `point p`, `family f -> p`, `family g -> f[3]`.
std::shared_ptr<const SpacePresentation> parse_space(const std::string& text);
std::string space_to_text(const SpacePresentation& space);

// Relation files: `aligned f g [k0]`, `pair p q`, `rect <side> <side>` with
// sides `{p,q}`, `tail(f,k)` or `otail(f,k)`, or `blockpair <u> <v>`.
// Family and block atoms cannot mix. Symmetry is auto-completed; when that
// adds anything, a warning is appended.
struct ParsedRelation {
    bool is_block = false;
    std::vector<Atom> atoms;                  // family backend
    std::vector<std::pair<Word, Word>> block_pairs;
    int block_depth = 0;
    std::vector<std::string> warnings;
};
ParsedRelation parse_relation(const std::string& text, const SpacePresentation* space,
                              const EdgeShift* shift);
FamilyRelation build_family_relation(ParsedRelation& parsed,
                                     std::shared_ptr<const SpacePresentation> space);
BlockRelation build_block_relation(ParsedRelation& parsed, std::shared_ptr<const EdgeShift> shift);
std::string relation_to_text(const FamilyRelation& r);

// Automaton files: optional `alphabet:` line, `state q0 [initial]`,
// `edge q0 q1 <letter>`.
PathAutomaton parse_automaton(const std::string& text);
std::string automaton_to_text(const PathAutomaton& a);

SymbolicPoint parse_point_name(const std::string& token, const SpacePresentation& space);

}  // namespace dynpair
