#include "dynpair/text_formats.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dynpair {

namespace {

struct Line {
    int number;
    std::string text;
};

std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        out.push_back({n, line.substr(start)});
    }
    return out;
}

std::vector<std::string> tokens_of(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

// Maps single-character letters; multi-character alphabet tokens are
// rejected at parse time so blocks stay plain strings.
struct LetterTable {
    std::vector<std::string> alphabet;
    std::map<char, Letter> by_char;

    void set(const std::vector<std::string>& letters, int line) {
        alphabet.clear();
        by_char.clear();
        for (const std::string& tok : letters) {
            if (tok.size() != 1)
                throw ParseError("alphabet letters must be single characters", line, 0);
            if (by_char.contains(tok[0])) throw SemanticError("duplicate letter: " + tok);
            by_char[tok[0]] = static_cast<Letter>(alphabet.size());
            alphabet.push_back(tok);
        }
    }

    Word word(const std::string& s, int line) const {
        Word w;
        for (char c : s) {
            auto it = by_char.find(c);
            if (it == by_char.end())
                throw SemanticError("letter '" + std::string(1, c) +
                                    "' is not in the alphabet (line " + std::to_string(line) + ")");
            w.push_back(it->second);
        }
        return w;
    }
};

}  // namespace

EdgeShift parse_sft(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty input", 1, 1);

    LetterTable letters;
    bool have_alphabet = false;
    SftSpec spec;
    std::vector<std::string> state_names;
    std::map<std::string, int> state_ids;
    std::vector<Edge> edges;
    bool direct = false, spec_mode = false;

    for (const Line& line : lines) {
        auto toks = tokens_of(line.text);
        const std::string& head = toks[0];
        if (head == "alphabet:") {
            letters.set({toks.begin() + 1, toks.end()}, line.number);
            spec.alphabet = letters.alphabet;
            have_alphabet = true;
        } else if (head == "forbid:") {
            if (!have_alphabet) throw ParseError("forbid before alphabet", line.number, 1);
            if (toks.size() != 2) throw ParseError("expected: forbid: <word>", line.number, 1);
            spec_mode = true;
            spec.forbidden.push_back(letters.word(toks[1], line.number));
        } else if (head == "state:") {
            if (toks.size() != 2) throw ParseError("expected: state: <name>", line.number, 1);
            direct = true;
            if (state_ids.contains(toks[1])) throw SemanticError("duplicate state: " + toks[1]);
            state_ids[toks[1]] = static_cast<int>(state_names.size());
            state_names.push_back(toks[1]);
        } else if (head == "edge:") {
            if (!have_alphabet) throw ParseError("edge before alphabet", line.number, 1);
            if (toks.size() != 4)
                throw ParseError("expected: edge: <src> <dst> <letter>", line.number, 1);
            direct = true;
            auto s = state_ids.find(toks[1]);
            auto t = state_ids.find(toks[2]);
            if (s == state_ids.end() || t == state_ids.end())
                throw SemanticError("edge references an undeclared state (line " +
                                    std::to_string(line.number) + ")");
            Word w = letters.word(toks[3], line.number);
            if (w.size() != 1) throw ParseError("edge letter must be one letter", line.number, 1);
            edges.push_back(Edge{s->second, t->second, w[0]});
        } else {
            throw ParseError("unknown directive: " + head, line.number, 1);
        }
    }
    if (!have_alphabet) throw ParseError("missing alphabet line", 1, 1);
    if (direct && spec_mode)
        throw SemanticError("cannot mix forbid: lines with state:/edge: lines");
    if (direct) return EdgeShift(letters.alphabet, static_cast<int>(state_names.size()), edges);
    return build_edge_shift(spec);
}

std::string sft_to_text(const EdgeShift& shift) {
    std::ostringstream out;
    out << "alphabet:";
    for (const std::string& a : shift.alphabet()) out << " " << a;
    out << "\n";
    for (int s = 0; s < shift.state_count(); ++s) out << "state: s" << s << "\n";
    for (const Edge& e : shift.edges())
        out << "edge: s" << e.source << " s" << e.target << " "
            << shift.alphabet()[static_cast<size_t>(e.letter)] << "\n";
    return out.str();
}

SlidingBlockCode parse_code(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty input", 1, 1);

    SlidingBlockCode code;
    LetterTable source_letters, target_letters;
    bool have_header = false, have_alphabets = false;
    for (const Line& line : lines) {
        auto toks = tokens_of(line.text);
        const std::string& head = toks[0];
        if (head == "code") {
            if (toks.size() != 2 || toks[1].rfind("window=", 0) != 0)
                throw ParseError("expected: code window=<w>", line.number, 1);
            code.window_radius = std::stoi(toks[1].substr(7));
            if (code.window_radius < 0)
                throw SemanticError("window radius must be nonnegative");
            have_header = true;
        } else if (head == "source-alphabet:") {
            source_letters.set({toks.begin() + 1, toks.end()}, line.number);
        } else if (head == "target-alphabet:") {
            target_letters.set({toks.begin() + 1, toks.end()}, line.number);
            code.target_alphabet = target_letters.alphabet;
            have_alphabets = true;
        } else if (head == "rule:") {
            if (!have_header || !have_alphabets)
                throw ParseError("rule before code/alphabet headers", line.number, 1);
            if (toks.size() != 4 || toks[2] != "->")
                throw ParseError("expected: rule: <block> -> <letter>", line.number, 1);
            Word block = source_letters.word(toks[1], line.number);
            if (static_cast<int>(block.size()) != code.window_length())
                throw SemanticError("rule block length does not match the window (line " +
                                    std::to_string(line.number) + ")");
            Word out = target_letters.word(toks[3], line.number);
            if (out.size() != 1) throw ParseError("rule output must be one letter", line.number, 1);
            if (code.local_rule.contains(block))
                throw SemanticError("duplicate rule for block " + toks[1]);
            code.local_rule[block] = out[0];
        } else {
            throw ParseError("unknown directive: " + head, line.number, 1);
        }
    }
    if (!have_header) throw ParseError("missing code header", 1, 1);
    if (!have_alphabets) throw ParseError("missing target-alphabet line", 1, 1);
    return code;
}

std::string code_to_text(const SlidingBlockCode& code) {
    std::ostringstream out;
    out << "code window=" << code.window_radius << "\n";
    out << "target-alphabet:";
    for (const std::string& a : code.target_alphabet) out << " " << a;
    out << "\n";
    // Source letters are recoverable from the rule blocks only when they are
    // single characters, which parse_code guarantees.
    return out.str();
}

std::shared_ptr<const SpacePresentation> parse_space(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty input", 1, 1);

    auto space = std::make_shared<SpacePresentation>();
    for (const Line& line : lines) {
        auto toks = tokens_of(line.text);
        const std::string& head = toks[0];
        if (head == "point") {
            if (toks.size() != 2) throw ParseError("expected: point <name>", line.number, 1);
            space->add_base_point(toks[1]);
        } else if (head == "family") {
            if (toks.size() != 4 || toks[2] != "->")
                throw ParseError("expected: family <name> -> <parent>", line.number, 1);
            space->add_family(toks[1], parse_point_name(toks[3], *space));
        } else {
            throw ParseError("unknown directive: " + head, line.number, 1);
        }
    }
    return space;
}

std::string space_to_text(const SpacePresentation& space) {
    std::ostringstream out;
    for (int b = 0; b < space.base_count(); ++b) out << "point " << space.base_name(b) << "\n";
    for (int f = 0; f < space.family_count(); ++f)
        out << "family " << space.family_name(f) << " -> "
            << space.point_name(space.limit_of(f)) << "\n";
    return out.str();
}

SymbolicPoint parse_point_name(const std::string& token, const SpacePresentation& space) {
    auto bracket = token.find('[');
    if (bracket == std::string::npos) return SymbolicPoint::base(space.base_id(token));
    if (token.back() != ']') throw SemanticError("malformed member reference: " + token);
    std::string family = token.substr(0, bracket);
    std::string idx = token.substr(bracket + 1, token.size() - bracket - 2);
    if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(c); }))
        throw SemanticError("malformed member index: " + token);
    return SymbolicPoint::member(space.family_id(family), std::stoi(idx));
}

namespace {

TailSet parse_tail(const std::string& token, const SpacePresentation& space, int line) {
    bool with_limit;
    std::string rest;
    if (token.rfind("tail(", 0) == 0) {
        with_limit = true;
        rest = token.substr(5);
    } else if (token.rfind("otail(", 0) == 0) {
        with_limit = false;
        rest = token.substr(6);
    } else {
        throw ParseError("expected tail(f,k) or otail(f,k), got " + token, line, 1);
    }
    if (rest.empty() || rest.back() != ')') throw ParseError("malformed tail: " + token, line, 1);
    rest.pop_back();
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw ParseError("malformed tail: " + token, line, 1);
    std::string family = rest.substr(0, comma);
    int from = std::stoi(rest.substr(comma + 1));
    if (from < 0) throw SemanticError("tail index must be nonnegative");
    return TailSet{space.family_id(family), from, with_limit};
}

std::vector<SymbolicPoint> parse_point_set(const std::string& token,
                                           const SpacePresentation& space, int line) {
    if (token.size() < 2 || token.front() != '{' || token.back() != '}')
        throw ParseError("expected {p,q,...}, got " + token, line, 1);
    std::vector<SymbolicPoint> out;
    std::string inner = token.substr(1, token.size() - 2);
    std::istringstream in(inner);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name.empty()) throw ParseError("empty point name in set", line, 1);
        out.push_back(parse_point_name(name, space));
    }
    if (out.empty()) throw ParseError("empty point set", line, 1);
    return out;
}

}  // namespace

ParsedRelation parse_relation(const std::string& text, const SpacePresentation* space,
                              const EdgeShift* shift) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty input", 1, 1);

    ParsedRelation parsed;
    bool family_mode = false;
    for (const Line& line : lines) {
        auto toks = tokens_of(line.text);
        const std::string& head = toks[0];
        if (head == "blockpair") {
            if (!shift) throw SemanticError("blockpair atoms need a shift (--sft)");
            if (toks.size() != 3)
                throw ParseError("expected: blockpair <u> <v>", line.number, 1);
            parsed.is_block = true;
            LetterTable letters;
            letters.set(shift->alphabet(), line.number);
            Word u = letters.word(toks[1], line.number);
            Word v = letters.word(toks[2], line.number);
            if (u.size() != v.size() || u.size() % 2 == 0)
                throw SemanticError("blocks must share an odd length (line " +
                                    std::to_string(line.number) + ")");
            parsed.block_depth = (static_cast<int>(u.size()) - 1) / 2;
            parsed.block_pairs.push_back({u, v});
            continue;
        }
        if (!space) throw SemanticError("family atoms need a space (--space)");
        family_mode = true;
        if (head == "aligned") {
            if (toks.size() != 3 && toks.size() != 4)
                throw ParseError("expected: aligned <f> <g> [k0]", line.number, 1);
            int from = toks.size() == 4 ? std::stoi(toks[3]) : 0;
            if (from < 0) throw SemanticError("aligned index must be nonnegative");
            parsed.atoms.push_back(
                AlignedAtom{space->family_id(toks[1]), space->family_id(toks[2]), from});
        } else if (head == "pair") {
            if (toks.size() != 3) throw ParseError("expected: pair <p> <q>", line.number, 1);
            parsed.atoms.push_back(PairAtom{parse_point_name(toks[1], *space),
                                            parse_point_name(toks[2], *space)});
        } else if (head == "rect") {
            if (toks.size() != 3) throw ParseError("expected: rect <side> <side>", line.number, 1);
            auto side = [&](const std::string& tok)
                -> std::variant<std::vector<SymbolicPoint>, TailSet> {
                if (!tok.empty() && tok.front() == '{') return parse_point_set(tok, *space, line.number);
                return parse_tail(tok, *space, line.number);
            };
            auto l = side(toks[1]);
            auto r = side(toks[2]);
            if (const auto* lp = std::get_if<std::vector<SymbolicPoint>>(&l)) {
                if (const auto* rp = std::get_if<std::vector<SymbolicPoint>>(&r)) {
                    for (SymbolicPoint a : *lp)
                        for (SymbolicPoint b : *rp) parsed.atoms.push_back(PairAtom{a, b});
                } else {
                    for (SymbolicPoint a : *lp)
                        parsed.atoms.push_back(PointTailAtom{a, std::get<TailSet>(r)});
                }
            } else if (const auto* rp = std::get_if<std::vector<SymbolicPoint>>(&r)) {
                for (SymbolicPoint b : *rp)
                    parsed.atoms.push_back(TailPointAtom{std::get<TailSet>(l), b});
            } else {
                parsed.atoms.push_back(TailTailAtom{std::get<TailSet>(l), std::get<TailSet>(r)});
            }
        } else {
            throw ParseError("unknown directive: " + head, line.number, 1);
        }
    }
    if (parsed.is_block && family_mode)
        throw SemanticError("cannot mix family atoms and block pairs in one relation");
    if (parsed.is_block) {
        for (const auto& [u, v] : parsed.block_pairs)
            if (static_cast<int>(u.size()) != 2 * parsed.block_depth + 1)
                throw SemanticError("all blocks must share one length");
    }
    return parsed;
}

FamilyRelation build_family_relation(ParsedRelation& parsed,
                                     std::shared_ptr<const SpacePresentation> space) {
    FamilyRelation r(std::move(space));
    std::set<Atom> given(parsed.atoms.begin(), parsed.atoms.end());
    bool completed = false;
    for (const Atom& a : parsed.atoms) {
        r.insert(a);  // structurally inserts the transpose as well
        if (!given.contains(transpose(a)) && !(transpose(a) == a)) completed = true;
    }
    if (completed)
        parsed.warnings.push_back("relation was not symmetric; transposed atoms were added");
    return r;
}

BlockRelation build_block_relation(ParsedRelation& parsed, std::shared_ptr<const EdgeShift> shift) {
    BlockRelation r(std::move(shift), parsed.block_depth);
    std::set<std::pair<Word, Word>> given(parsed.block_pairs.begin(), parsed.block_pairs.end());
    bool completed = false;
    for (const auto& [u, v] : parsed.block_pairs) {
        r.add_pair(u, v);
        if (!given.contains({v, u})) {
            r.add_pair(v, u);
            completed = true;
        }
    }
    if (completed)
        parsed.warnings.push_back("relation was not symmetric; transposed pairs were added");
    return r;
}

std::string relation_to_text(const FamilyRelation& r) {
    std::ostringstream out;
    const SpacePresentation& sp = r.space();
    auto tail_str = [&](const TailSet& t) {
        return std::string(t.with_limit ? "tail(" : "otail(") + sp.family_name(t.family) + "," +
               std::to_string(t.from) + ")";
    };
    for (const Atom& atom : r.atoms()) {
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<T, AlignedAtom>) {
                    out << "aligned " << sp.family_name(a.f) << " " << sp.family_name(a.g) << " "
                        << a.from << "\n";
                } else if constexpr (std::is_same_v<T, PairAtom>) {
                    out << "pair " << sp.point_name(a.a) << " " << sp.point_name(a.b) << "\n";
                } else if constexpr (std::is_same_v<T, PointTailAtom>) {
                    out << "rect {" << sp.point_name(a.p) << "} " << tail_str(a.t) << "\n";
                } else if constexpr (std::is_same_v<T, TailPointAtom>) {
                    out << "rect " << tail_str(a.t) << " {" << sp.point_name(a.p) << "}\n";
                } else {
                    out << "rect " << tail_str(a.s) << " " << tail_str(a.t) << "\n";
                }
            },
            atom);
    }
    return out.str();
}

PathAutomaton parse_automaton(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty input", 1, 1);

    LetterTable letters;
    bool have_alphabet = false;
    std::vector<std::string> state_names;
    std::map<std::string, int> state_ids;
    int initial = -1;
    struct RawEdge {
        std::string src, dst, letter;
        int line;
    };
    std::vector<RawEdge> raw_edges;

    for (const Line& line : lines) {
        auto toks = tokens_of(line.text);
        const std::string& head = toks[0];
        if (head == "alphabet:") {
            letters.set({toks.begin() + 1, toks.end()}, line.number);
            have_alphabet = true;
        } else if (head == "state") {
            if (toks.size() != 2 && !(toks.size() == 3 && toks[2] == "initial"))
                throw ParseError("expected: state <name> [initial]", line.number, 1);
            if (state_ids.contains(toks[1])) throw SemanticError("duplicate state: " + toks[1]);
            state_ids[toks[1]] = static_cast<int>(state_names.size());
            state_names.push_back(toks[1]);
            if (toks.size() == 3) {
                if (initial >= 0) throw SemanticError("multiple initial states");
                initial = state_ids[toks[1]];
            }
        } else if (head == "edge") {
            if (toks.size() != 4)
                throw ParseError("expected: edge <src> <dst> <letter>", line.number, 1);
            raw_edges.push_back({toks[1], toks[2], toks[3], line.number});
        } else {
            throw ParseError("unknown directive: " + head, line.number, 1);
        }
    }
    if (initial < 0) throw SemanticError("no initial state declared");
    if (!have_alphabet) {
        std::set<std::string> seen;
        for (const RawEdge& e : raw_edges) seen.insert(e.letter);
        letters.set({seen.begin(), seen.end()}, 1);
    }
    std::vector<Edge> edges;
    for (const RawEdge& e : raw_edges) {
        auto s = state_ids.find(e.src);
        auto t = state_ids.find(e.dst);
        if (s == state_ids.end() || t == state_ids.end())
            throw SemanticError("edge references an undeclared state (line " +
                                std::to_string(e.line) + ")");
        Word w = letters.word(e.letter, e.line);
        if (w.size() != 1) throw ParseError("edge letter must be one letter", e.line, 1);
        edges.push_back(Edge{s->second, t->second, w[0]});
    }
    PathAutomaton a(letters.alphabet, static_cast<int>(state_names.size()), initial, edges);
    return a;
}

std::string automaton_to_text(const PathAutomaton& a) {
    std::ostringstream out;
    out << "alphabet:";
    for (const std::string& l : a.alphabet()) out << " " << l;
    out << "\n";
    for (int s = 0; s < a.state_count(); ++s) {
        out << "state " << a.state_names()[static_cast<size_t>(s)];
        if (s == a.initial()) out << " initial";
        out << "\n";
    }
    for (const Edge& e : a.edges())
        out << "edge " << a.state_names()[static_cast<size_t>(e.source)] << " "
            << a.state_names()[static_cast<size_t>(e.target)] << " "
            << a.alphabet()[static_cast<size_t>(e.letter)] << "\n";
    return out.str();
}

}  // namespace dynpair
