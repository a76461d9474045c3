#include "dynpair/cli_driver.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynpair/pair_assignments.hpp"
#include "dynpair/report.hpp"
#include "dynpair/text_formats.hpp"

namespace dynpair {

namespace {

using nlohmann::json;

json input_entry(const std::string& path, const std::string& bytes) {
    return json{{"path", path}, {"digest", content_digest(bytes)}};
}

std::string command_echo(const std::vector<std::string>& args) {
    std::string out;
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) out += " ";
        out += args[i];
    }
    return out;
}

json base_report(const std::vector<std::string>& args) {
    return json{{"schemaVersion", kSchemaVersion}, {"command", command_echo(args)}};
}

void emit(std::ostream& out, const json& report) { out << report.dump(2) << "\n"; }

json verdict_json(const Verdict& v) {
    json j{{"kind", v.kind_string()}};
    if (v.kind == Verdict::Kind::RefutedAtDepth || v.kind == Verdict::Kind::RealizableCertified)
        j["depth"] = v.depth;
    if (v.witness) j["witness"] = json::array({v.witness->first, v.witness->second});
    return j;
}

json rank_json(const RankValue& r) {
    return json{{"value", r.value}, {"atLeast", r.at_least}};
}

IEParams ie_params_from(const std::string& density, int horizon, int interval) {
    IEParams p;
    auto slash = density.find('/');
    if (slash == std::string::npos) throw SemanticError("density must look like 1/4");
    p.density_num = std::stoi(density.substr(0, slash));
    p.density_den = std::stoi(density.substr(slash + 1));
    p.horizon = horizon;
    p.interval_length = interval;
    p.validate();
    return p;
}

int cmd_entropy(const std::vector<std::string>& args, const std::string& sft_path,
                std::ostream& out) {
    std::string bytes = read_file(sft_path);
    EdgeShift shift = parse_sft(bytes);
    json report = base_report(args);
    report["inputs"] = {{"sft", input_entry(sft_path, bytes)}};
    report["results"] = {{"entropy", format_real(shift.entropy())}};
    report["flags"] = {{"entropy", "exact"}};
    emit(out, report);
    return 0;
}

int cmd_words(const std::vector<std::string>& args, const std::string& sft_path, int length,
              std::ostream& out) {
    std::string bytes = read_file(sft_path);
    EdgeShift shift = parse_sft(bytes);
    if (!shift.empty() && shift.word_count(length) > 1e6)
        throw ResourceLimitError("word enumeration above 10^6 entries");
    json words = json::array();
    if (!shift.empty())
        for (const Word& w : shift.words(length))
            words.push_back(word_to_string(w, shift.alphabet()));
    json report = base_report(args);
    report["inputs"] = {{"sft", input_entry(sft_path, bytes)}};
    report["results"] = {{"count", words.size()}, {"words", words}};
    emit(out, report);
    return 0;
}

int cmd_pairs(const std::vector<std::string>& args, const std::string& sft_path,
              const std::string& kind_name, int depth, const IEParams& params, std::ostream& out) {
    (void)args;
    std::string bytes = read_file(sft_path);
    EdgeShift shift = parse_sft(bytes);
    AssignmentKind kind = assignment_kind_from_name(kind_name);
    AssignmentResult result = compute_assignment(shift, kind, depth, params);
    const auto& blocks = result.relation.blocks();
    for (int i = 0; i < result.relation.block_count(); ++i) {
        for (int j = 0; j < result.relation.block_count(); ++j) {
            std::string status, witness = "-";
            if (kind == AssignmentKind::IE) {
                const PairStatus& st = result.status(i, j);
                switch (st.kind) {
                    case PairStatus::Kind::CertifiedIE:
                        status = "certified";
                        witness = "gap=" + std::to_string(st.value);
                        break;
                    case PairStatus::Kind::RefutedAtHorizon:
                        status = "refuted";
                        witness = "t=" + std::to_string(st.value);
                        break;
                    case PairStatus::Kind::UnknownAtBudget: status = "unknown"; break;
                }
            } else {
                status = result.relation.pair(i, j) ? "member" : "nonmember";
            }
            out << word_to_string(blocks[static_cast<size_t>(i)], shift.alphabet()) << "\t"
                << word_to_string(blocks[static_cast<size_t>(j)], shift.alphabet()) << "\t"
                << status << "\t" << witness << "\n";
        }
    }
    return 0;
}

json stage_counts(const RankResult& rr) {
    json stages = json::array();
    for (const Relation& stage : rr.stages) {
        if (const auto* fam = std::get_if<FamilyRelation>(&stage))
            stages.push_back(fam->atoms().size());
        else
            stages.push_back(std::get<BlockRelation>(stage).pair_count());
    }
    return stages;
}

int cmd_rank(const std::vector<std::string>& args, const std::string& space_path,
             const std::string& sft_path, const std::string& relation_path, int cap,
             std::ostream& out, std::ostream& err) {
    std::string rel_bytes = read_file(relation_path);
    json report = base_report(args);
    json inputs{{"relation", input_entry(relation_path, rel_bytes)}};

    RankResult rr;
    json verdict;
    std::string backend;
    std::vector<std::string> warnings;
    if (!space_path.empty()) {
        backend = "family";
        std::string space_bytes = read_file(space_path);
        inputs["space"] = input_entry(space_path, space_bytes);
        auto space = parse_space(space_bytes);
        ParsedRelation parsed = parse_relation(rel_bytes, space.get(), nullptr);
        FamilyRelation rel = build_family_relation(parsed, space);
        warnings = parsed.warnings;
        rr = gamma_rank(Relation{rel}, cap);
        Verdict v = rr.rank.at_least
                        ? Verdict{Verdict::Kind::UnknownAtBudget, 0, std::nullopt}
                        : classify_realizable(rel, cap);
        verdict = verdict_json(v);
    } else {
        backend = "block";
        std::string sft_bytes = read_file(sft_path);
        inputs["sft"] = input_entry(sft_path, sft_bytes);
        auto shift = std::make_shared<const EdgeShift>(parse_sft(sft_bytes));
        ParsedRelation parsed = parse_relation(rel_bytes, nullptr, shift.get());
        BlockRelation rel = build_block_relation(parsed, shift);
        warnings = parsed.warnings;
        rr = gamma_rank(Relation{rel}, cap);
        const auto& stable = std::get<BlockRelation>(rr.stable());
        Verdict v;
        if (rr.rank.at_least) {
            v = {Verdict::Kind::UnknownAtBudget, 0, std::nullopt};
        } else if (auto missing = stable.first_missing()) {
            v = {Verdict::Kind::RefutedAtDepth, stable.depth(),
                 {{word_to_string(missing->first, shift->alphabet()),
                   word_to_string(missing->second, shift->alphabet())}}};
        } else {
            v = {Verdict::Kind::UnknownAtBudget, 0, std::nullopt};
        }
        verdict = verdict_json(v);
    }
    for (const std::string& w : warnings) err << "warning: " << w << "\n";

    report["inputs"] = inputs;
    report["results"] = {{"backend", backend},
                         {"rank", rank_json(rr.rank)},
                         {"stages", stage_counts(rr)},
                         {"verdict", verdict}};
    report["flags"] = {{"relation", rr.flag.to_string()}};
    emit(out, report);
    return 0;
}

int cmd_classify(const std::vector<std::string>& args, const std::string& sft_path,
                 const std::string& kind_name, int depth, int max_depth, int cap,
                 const IEParams& params, std::ostream& out) {
    std::string bytes = read_file(sft_path);
    EdgeShift shift = parse_sft(bytes);
    AssignmentKind kind = assignment_kind_from_name(kind_name);

    AssignmentResult at_depth = compute_assignment(shift, kind, depth, params);
    Verdict full = classify_full(at_depth);
    Verdict realizable = classify_realizable(shift, kind, cap, depth, max_depth, params);

    json report = base_report(args);
    report["inputs"] = {{"sft", input_entry(sft_path, bytes)}};
    report["results"] = {{"assignment", assignment_kind_name(kind)},
                         {"full", verdict_json(full)},
                         {"realizable", verdict_json(realizable)}};
    report["flags"] = {{"relation", at_depth.relation.flag.to_string()}};
    emit(out, report);
    return 0;
}

int cmd_cb_rank(const std::vector<std::string>& args, const std::string& automaton_path,
                std::ostream& out) {
    std::string bytes = read_file(automaton_path);
    PathAutomaton automaton = parse_automaton(bytes);
    DerivativeResult dr = cb_rank(automaton);
    json stages = json::array();
    for (const PathAutomaton& stage : dr.stages) stages.push_back(stage.state_count());
    json report = base_report(args);
    report["inputs"] = {{"automaton", input_entry(automaton_path, bytes)}};
    report["results"] = {{"rank", rank_json(dr.rank)},
                         {"scattered", dr.scattered},
                         {"stages", stages}};
    emit(out, report);
    return 0;
}

int cmd_check_axioms(const std::vector<std::string>& args, const std::string& sft_path,
                     const std::string& kind_name, int depth, const std::string& code_path,
                     const IEParams& params, std::ostream& out) {
    std::string bytes = read_file(sft_path);
    EdgeShift shift = parse_sft(bytes);
    AssignmentKind kind = assignment_kind_from_name(kind_name);

    json report = base_report(args);
    json inputs{{"sft", input_entry(sft_path, bytes)}};
    json results{{"assignment", assignment_kind_name(kind)}};

    AxiomReport invariance = check_axiom_invariance(compute_assignment(shift, kind, depth, params));
    results["invariance"] = {{"passed", invariance.passed}, {"failures", invariance.failures}};
    if (!code_path.empty()) {
        std::string code_bytes = read_file(code_path);
        inputs["code"] = input_entry(code_path, code_bytes);
        SlidingBlockCode code = parse_code(code_bytes);
        AxiomReport factor = check_axiom_factor(kind, code, shift, depth, params);
        results["factor"] = {{"passed", factor.passed}, {"failures", factor.failures}};
    }
    report["inputs"] = inputs;
    report["results"] = results;
    emit(out, report);
    return 0;
}

// Fixture file: optional comments, a `cmd:` line, a `--- expected` marker,
// then the expected stdout byte-for-byte.
struct Fixture {
    std::string name;
    std::vector<std::string> argv;
    std::string expected;
};

Fixture parse_fixture(const std::string& path) {
    std::string bytes = read_file(path);
    Fixture fx;
    fx.name = std::filesystem::path(path).filename().string();
    size_t pos = 0;
    bool have_cmd = false;
    while (pos < bytes.size()) {
        size_t eol = bytes.find('\n', pos);
        if (eol == std::string::npos) eol = bytes.size();
        std::string line = bytes.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.rfind("cmd:", 0) == 0) {
            std::istringstream in(line.substr(4));
            std::string tok;
            while (in >> tok) fx.argv.push_back(tok);
            have_cmd = true;
        } else if (line == "--- expected") {
            fx.expected = bytes.substr(pos);
            break;
        } else if (!line.empty() && line[0] != '#') {
            throw SemanticError("unexpected line in fixture " + fx.name + ": " + line);
        }
    }
    if (!have_cmd || fx.argv.empty())
        throw SemanticError("fixture " + fx.name + " has no cmd line");
    return fx;
}

void print_diff(std::ostream& err, const std::string& expected, const std::string& actual) {
    std::istringstream ein(expected), ain(actual);
    std::string eline, aline;
    int n = 0;
    while (true) {
        bool eok = static_cast<bool>(std::getline(ein, eline));
        bool aok = static_cast<bool>(std::getline(ain, aline));
        ++n;
        if (!eok && !aok) break;
        if (eok != aok || eline != aline) {
            err << "  first difference at line " << n << ":\n";
            err << "    expected: " << (eok ? eline : "<end of file>") << "\n";
            err << "    actual:   " << (aok ? aline : "<end of file>") << "\n";
            break;
        }
    }
}

int cmd_corpus(const std::string& dir, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw Error("MissingFixture: no such directory: " + dir);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".fixture")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error("MissingFixture: no .fixture files in " + dir);

    int failures = 0;
    for (const std::string& file : files) {
        Fixture fx = parse_fixture(file);
        std::ostringstream captured, captured_err;
        int code = run_cli(fx.argv, captured, captured_err);
        bool ok = code == 0 && captured.str() == fx.expected;
        if (ok) {
            out << "PASS " << fx.name << "\n";
        } else {
            ++failures;
            out << "FAIL " << fx.name << "\n";
            if (code != 0) err << "  exit code " << code << "\n";
            print_diff(err, fx.expected, captured.str());
        }
    }
    out << "corpus: " << (files.size() - static_cast<size_t>(failures)) << "/" << files.size()
        << " fixtures passed\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"dynamical pair relations on shifts of finite type"};
    app.set_version_flag("--version", std::string("dynpair schema ") + kSchemaVersion);

    std::string sft_path, space_path, relation_path, automaton_path, code_path, dir_path;
    std::string kind = "rp", density = "1/4";
    int length = 1, depth = 1, max_depth = kDefaultMaxDepth, cap = kDefaultRankCap;
    int horizon = 12, interval = 8;

    auto* entropy = app.add_subcommand("entropy", "topological entropy of an SFT");
    entropy->add_option("--sft", sft_path)->required();

    auto* words = app.add_subcommand("words", "enumerate the words of a given length");
    words->add_option("--sft", sft_path)->required();
    words->add_option("--length,-n", length)->required();

    auto* pairs = app.add_subcommand("pairs", "pair assignment at block depth, TSV");
    pairs->add_option("--sft", sft_path)->required();
    pairs->add_option("--kind", kind)->required();
    pairs->add_option("--depth", depth)->required();
    pairs->add_option("--density", density);
    pairs->add_option("--horizon", horizon);
    pairs->add_option("--interval", interval);

    auto* rank = app.add_subcommand("rank", "Gamma rank of a relation");
    rank->add_option("--space", space_path);
    rank->add_option("--sft", sft_path);
    rank->add_option("--relation", relation_path)->required();
    rank->add_option("--cap", cap);

    auto* classify = app.add_subcommand("classify", "fullness / realizability verdicts");
    classify->add_option("--sft", sft_path)->required();
    classify->add_option("--assignment", kind)->required();
    classify->add_option("--depth", depth);
    classify->add_option("--max-depth", max_depth);
    classify->add_option("--cap", cap);
    classify->add_option("--density", density);
    classify->add_option("--horizon", horizon);
    classify->add_option("--interval", interval);

    auto* cbrank = app.add_subcommand("cb-rank", "Cantor-Bendixson rank of a path automaton");
    cbrank->add_option("--automaton", automaton_path)->required();

    auto* axioms = app.add_subcommand("check-axioms", "invariance / factor axiom reports");
    axioms->add_option("--sft", sft_path)->required();
    axioms->add_option("--kind", kind)->required();
    axioms->add_option("--depth", depth);
    axioms->add_option("--code", code_path);
    axioms->add_option("--density", density);
    axioms->add_option("--horizon", horizon);
    axioms->add_option("--interval", interval);

    auto* corpus = app.add_subcommand("corpus", "run every fixture expectation file");
    corpus->add_option("--dir", dir_path)->required();

    app.require_subcommand(0, 1);

    std::vector<std::string> argv_r(args.rbegin(), args.rend());
    try {
        app.parse(argv_r);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (entropy->parsed()) return cmd_entropy(args, sft_path, out);
        if (words->parsed()) return cmd_words(args, sft_path, length, out);
        if (pairs->parsed())
            return cmd_pairs(args, sft_path, kind, depth,
                             ie_params_from(density, horizon, interval), out);
        if (rank->parsed()) {
            if (space_path.empty() == sft_path.empty())
                throw SemanticError("rank needs exactly one of --space or --sft");
            return cmd_rank(args, space_path, sft_path, relation_path, cap, out, err);
        }
        if (classify->parsed())
            return cmd_classify(args, sft_path, kind, depth, max_depth, cap,
                                ie_params_from(density, horizon, interval), out);
        if (cbrank->parsed()) return cmd_cb_rank(args, automaton_path, out);
        if (axioms->parsed())
            return cmd_check_axioms(args, sft_path, kind, depth, code_path,
                                    ie_params_from(density, horizon, interval), out);
        if (corpus->parsed()) return cmd_corpus(dir_path, out, err);
        err << app.help();
        return 1;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace dynpair
