// ============================================================================
// condlogic_main.cpp — command-line front end
// ============================================================================
//
// Subcommands:
//   parse              parse formulas, print canonical form
//   check-frame        load a frame, report its condition profile
//   validate           schema validity on a frame
//   check-proof        check proof files
//   corpus verify      replay the bundled derivation corpus
//   find-countermodel  search a frame class for a falsifying frame
//   correspondence     test condition ⟷ schema-validity agreement
//
// Exit codes: 0 = all checks passed, 1 = a check failed or nothing found,
// 2 = bad usage or unreadable/malformed input.
// ============================================================================

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "condlogic/corpus.hpp"
#include "condlogic/modelsearch.hpp"

#ifndef CONDLOGIC_DATA_DIR
#define CONDLOGIC_DATA_DIR "data/corpus"
#endif

namespace {

using nlohmann::json;
using namespace condlogic;

struct Options {
    bool json_out = false;
    bool quiet = false;
};

void emit(const Options& opt, const json& j, const std::string& text) {
    if (opt.json_out)
        std::cout << j.dump(2) << "\n";
    else if (!opt.quiet)
        std::cout << text;
}

std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json witness_json(const Frame& fr, const Witness& w) {
    json a = json::object();
    for (const auto& [name, mask] : w.assignment) a[name] = mask_to_string(fr, mask);
    return json{{"world", fr.world_names()[w.world]}, {"assignment", a}};
}

std::string witness_text(const Frame& fr, const Witness& w) {
    std::string out = "world " + fr.world_names()[w.world] + " with";
    for (const auto& [name, mask] : w.assignment)
        out += " " + name + "=" + mask_to_string(fr, mask);
    return out;
}

std::vector<Condition> parse_conditions(const std::vector<std::string>& names) {
    std::vector<Condition> out;
    for (const auto& n : names) {
        auto c = condition_from_name(n);
        if (!c) throw std::runtime_error("unknown frame condition '" + n + "'");
        out.push_back(*c);
    }
    return out;
}

// ---- parse ----------------------------------------------------------------

int cmd_parse(const Options& opt, const std::vector<std::string>& formulas) {
    json out = json::array();
    std::string text;
    bool all_ok = true;
    for (const auto& input : formulas) {
        json item{{"input", input}};
        try {
            FormulaPtr f = parse(input);
            item["ok"] = true;
            item["canonical"] = to_string(f);
            item["variables"] = variables(f);
            item["metavariables"] = metavariables(f);
            text += to_string(f) + "\n";
        } catch (const SyntaxError& e) {
            item["ok"] = false;
            item["error"] = e.what();
            item["position"] = e.pos;
            text += std::string("error: ") + e.what() + "\n";
            all_ok = false;
        }
        out.push_back(std::move(item));
    }
    emit(opt, out, text);
    return all_ok ? 0 : 1;
}

// ---- check-frame ----------------------------------------------------------

int cmd_check_frame(const Options& opt, const std::string& frame_spec,
                    const std::vector<std::string>& required) {
    const Frame fr = load_frame(frame_spec);
    const std::vector<Condition> must = parse_conditions(required);

    json out{{"frame", frame_spec},
             {"worlds", fr.world_names()},
             {"conditions", json::object()}};
    std::string text = "frame: " + frame_spec + " (" + std::to_string(fr.size()) +
                       " worlds)\n";
    bool ok = true;
    for (Condition c : all_conditions()) {
        auto w = check_condition(fr, c);
        const bool holds = !w.has_value();
        json cj{{"holds", holds}};
        std::string line = std::string("  ") + condition_name(c) + ": " +
                           (holds ? "holds" : "fails");
        if (w) {
            cj["world"] = fr.world_names()[w->world];
            cj["x"] = mask_to_string(fr, w->x);
            line += " at world " + fr.world_names()[w->world] +
                    ", X=" + mask_to_string(fr, w->x);
            if (w->y) {
                cj["y"] = mask_to_string(fr, *w->y);
                line += ", Y=" + mask_to_string(fr, *w->y);
            }
        }
        out["conditions"][condition_name(c)] = std::move(cj);
        text += line + "\n";
        if (!holds)
            for (Condition m : must)
                if (m == c || (m == Condition::ModPrime && c == Condition::Mod)) ok = false;
    }
    out["ok"] = ok;
    emit(opt, out, text);
    return ok ? 0 : 1;
}

// ---- validate -------------------------------------------------------------

int cmd_validate(const Options& opt, const std::string& frame_spec,
                 const std::vector<std::string>& formulas) {
    const Frame fr = load_frame(frame_spec);
    json out = json::array();
    std::string text;
    bool all_valid = true;
    for (const auto& input : formulas) {
        FormulaPtr f;
        try {
            f = parse(input);
        } catch (const SyntaxError& e) {
            throw std::runtime_error("cannot parse '" + input + "': " + e.what());
        }
        auto w = schema_valid_on_frame(fr, f);
        json item{{"formula", to_string(f)}, {"valid", !w.has_value()}};
        if (w) {
            item["witness"] = witness_json(fr, *w);
            text += to_string(f) + ": invalid (" + witness_text(fr, *w) + ")\n";
            all_valid = false;
        } else {
            text += to_string(f) + ": valid\n";
        }
        out.push_back(std::move(item));
    }
    emit(opt, out, text);
    return all_valid ? 0 : 1;
}

// ---- check-proof ----------------------------------------------------------

int cmd_check_proof(const Options& opt, const std::vector<std::string>& files,
                    const std::string& data_dir, bool with_corpus) {
    Catalog cat;
    RuleRegistry reg;
    if (with_corpus) {
        CorpusRun run = run_corpus(data_dir);
        if (!run.report.ok)
            throw std::runtime_error("corpus replay failed: " + run.report.failure);
        cat = std::move(run.catalog);
        reg = std::move(run.registry);
    } else {
        cat = builtin_catalog();
    }

    json out = json::array();
    std::string text;
    bool all_ok = true;
    for (const auto& file : files) {
        const Proof proof = proof_from_json(read_file_or_die(file));
        const CheckReport rep = check_proof(proof, cat, reg);
        out.push_back(json::parse(report_to_json(rep)));
        text += file + " (" + proof.name + " in " + proof.system + "): " +
                (rep.ok ? "ok" : "FAIL — " + rep.failure) + "\n";
        if (!rep.ok) all_ok = false;
    }
    emit(opt, out, text);
    return all_ok ? 0 : 1;
}

// ---- corpus verify --------------------------------------------------------

int cmd_corpus_verify(const Options& opt, const std::string& data_dir, bool keep_going) {
    const CorpusReport rep = verify_corpus(data_dir, keep_going);
    std::string text;
    for (const auto& st : rep.stages)
        text += (st.ok ? "ok   " : "FAIL ") + st.name + ": " + st.detail + "\n";
    for (const auto& pr : rep.proofs)
        text += (pr.ok ? "ok   " : "FAIL ") + pr.file + " (" + pr.name + " in " +
                pr.system + "): " + pr.detail + "\n";
    text += rep.ok ? "corpus: all checks passed\n" : "corpus: FAILED — " + rep.failure + "\n";
    emit(opt, json::parse(corpus_report_to_json(rep)), text);
    return rep.ok ? 0 : 1;
}

// ---- find-countermodel ----------------------------------------------------

int cmd_find_countermodel(const Options& opt, const std::string& target,
                          const std::vector<std::string>& conditions, int max_worlds,
                          std::uint64_t budget, std::int64_t seed) {
    SearchSpec spec;
    try {
        spec.target = parse(target);
    } catch (const SyntaxError& e) {
        throw std::runtime_error("cannot parse target '" + target + "': " + e.what());
    }
    spec.conditions = parse_conditions(conditions);
    spec.max_worlds = max_worlds;
    spec.budget = budget;
    if (seed >= 0) spec.seed = static_cast<std::uint64_t>(seed);

    const SearchResult res = find_countermodel(spec);
    json out{{"status", search_status_name(res.status)},
             {"worlds", res.worlds},
             {"steps", res.nodes}};
    std::string text = std::string("status: ") + search_status_name(res.status) +
                       " (size " + std::to_string(res.worlds) + ", " +
                       std::to_string(res.nodes) + " steps)\n";
    if (res.status == SearchStatus::Found) {
        out["frame"] = json::parse(frame_to_json(*res.frame));
        out["witness"] = witness_json(*res.frame, *res.witness);
        text += "falsified at " + witness_text(*res.frame, *res.witness) + "\n";
        if (!opt.json_out && !opt.quiet) text += frame_to_json(*res.frame) + "\n";
    }
    emit(opt, out, text);
    return res.status == SearchStatus::Found ? 0 : 1;
}

// ---- correspondence -------------------------------------------------------

int cmd_correspondence(const Options& opt, const std::string& cond_name,
                       const std::string& schema_text, int size, std::uint64_t samples,
                       std::uint64_t seed) {
    auto cond = condition_from_name(cond_name);
    if (!cond) throw std::runtime_error("unknown frame condition '" + cond_name + "'");
    FormulaPtr schema;
    try {
        schema = parse(schema_text);
    } catch (const SyntaxError& e) {
        throw std::runtime_error("cannot parse schema '" + schema_text + "': " + e.what());
    }
    const CorrespondenceReport rep = correspondence_check(size, *cond, schema, samples, seed);
    json out{{"condition", condition_name(*cond)},
             {"schema", to_string(schema)},
             {"size", size},
             {"mode", samples == 0 ? "exhaustive" : "sampled"},
             {"frames_checked", rep.frames_checked},
             {"violations", rep.violations}};
    std::string text = std::string(condition_name(*cond)) + " ⟷ " + to_string(schema) +
                       " on " + std::to_string(size) + "-world frames (" +
                       (samples == 0 ? "exhaustive" : "sampled") +
                       "): " + std::to_string(rep.violations) + " disagreement(s) in " +
                       std::to_string(rep.frames_checked) + " frames\n";
    if (!rep.examples.empty()) {
        out["example"] = json::parse(frame_to_json(rep.examples.front()));
        if (!opt.json_out) text += "example:\n" + frame_to_json(rep.examples.front()) + "\n";
    }
    emit(opt, out, text);
    return rep.violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for conditional logics over selection-function frames"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.json_out, "machine-readable output");
    app.add_flag("--quiet", opt.quiet, "suppress human-readable output");
    std::string data_dir = CONDLOGIC_DATA_DIR;
    app.add_option("--data", data_dir, "corpus data directory")
        ->envname("CONDLOGIC_DATA");

    // parse
    auto* p_parse = app.add_subcommand("parse", "parse formulas, print canonical form");
    std::vector<std::string> parse_formulas;
    p_parse->add_option("formula", parse_formulas, "formulas to parse")->required();

    // check-frame
    auto* p_frame = app.add_subcommand("check-frame", "report a frame's condition profile");
    std::string frame_spec;
    std::vector<std::string> required_conditions;
    p_frame->add_option("frame", frame_spec,
                        "frame file, builtin:lewis-g, or builtin:material-<n>")
        ->required();
    p_frame->add_option("--require", required_conditions,
                        "conditions that must hold (comma separated)")
        ->delimiter(',');

    // validate
    auto* p_val = app.add_subcommand("validate", "schema validity on a frame");
    std::string val_frame;
    std::vector<std::string> val_formulas;
    p_val->add_option("--frame", val_frame, "frame file or builtin name")->required();
    p_val->add_option("formula", val_formulas, "schemas to check")->required();

    // check-proof
    auto* p_proof = app.add_subcommand("check-proof", "check proof files");
    std::vector<std::string> proof_files;
    bool with_corpus = false;
    p_proof->add_option("file", proof_files, "proof files (json)")->required();
    p_proof->add_flag("--with-corpus", with_corpus,
                      "replay the corpus first so derived rules are available");

    // corpus verify
    auto* p_corpus = app.add_subcommand("corpus", "bundled derivation corpus");
    p_corpus->require_subcommand(1);
    auto* p_verify = p_corpus->add_subcommand("verify", "replay and check the corpus");
    bool keep_going = false;
    p_verify->add_flag("--keep-going", keep_going, "check remaining proofs after a failure");

    // find-countermodel
    auto* p_find = app.add_subcommand("find-countermodel",
                                      "search a frame class for a falsifying frame");
    std::string target;
    std::vector<std::string> class_conditions;
    int max_worlds = 4;
    std::uint64_t budget = 5'000'000;
    std::int64_t seed = -1;
    p_find->add_option("--target", target, "schema to falsify")->required();
    p_find->add_option("--conditions", class_conditions, "frame class (comma separated)")
        ->delimiter(',');
    p_find->add_option("--max-worlds", max_worlds, "largest size to try (1..5)");
    p_find->add_option("--budget", budget, "search step budget");
    p_find->add_option("--seed", seed, "shuffle value order (deterministic per seed)");

    // correspondence
    auto* p_corr = app.add_subcommand("correspondence",
                                      "test condition ⟷ schema-validity agreement");
    std::string corr_condition, corr_schema;
    int corr_size = 2;
    std::uint64_t corr_samples = 0, corr_seed = 0;
    p_corr->add_option("--condition", corr_condition, "frame condition")->required();
    p_corr->add_option("--schema", corr_schema, "axiom schema")->required();
    p_corr->add_option("--size", corr_size, "number of worlds");
    p_corr->add_option("--samples", corr_samples, "random frames (0 = exhaustive)");
    p_corr->add_option("--seed", corr_seed, "sampling seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*p_parse) return cmd_parse(opt, parse_formulas);
        if (*p_frame) return cmd_check_frame(opt, frame_spec, required_conditions);
        if (*p_val) return cmd_validate(opt, val_frame, val_formulas);
        if (*p_proof) return cmd_check_proof(opt, proof_files, data_dir, with_corpus);
        if (*p_verify) return cmd_corpus_verify(opt, data_dir, keep_going);
        if (*p_find)
            return cmd_find_countermodel(opt, target, class_conditions, max_worlds, budget,
                                         seed);
        if (*p_corr)
            return cmd_correspondence(opt, corr_condition, corr_schema, corr_size,
                                      corr_samples, corr_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
