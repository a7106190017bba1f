// ============================================================================
// bindings/module.cpp — Python bindings for the conditional-logic workbench
// ============================================================================
//
// A thin functional surface over the C++ core.  Structured results come
// back as plain dicts and lists (masks become sorted lists of world
// indices), reusing the library's JSON serializers where they exist, so
// the Python view and the CLI's --json output always agree.
// ============================================================================

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "condlogic/catalog.hpp"
#include "condlogic/corpus.hpp"
#include "condlogic/modelsearch.hpp"
#include "condlogic/proofkernel.hpp"
#include "condlogic/semantics.hpp"

namespace py = pybind11;
using namespace condlogic;

namespace {

py::object json_loads(const std::string& text) {
    return py::module_::import("json").attr("loads")(text);
}

py::list mask_to_worlds(Mask m) {
    py::list out;
    for (int w = 0; w < 32; ++w)
        if (m & (Mask(1) << w)) out.append(w);
    return out;
}

Mask worlds_to_mask(const std::vector<int>& worlds, int size) {
    Mask m = 0;
    for (int w : worlds) {
        if (w < 0 || w >= size)
            throw py::value_error("world index " + std::to_string(w) +
                                  " out of range for a frame of size " +
                                  std::to_string(size));
        m |= Mask(1) << w;
    }
    return m;
}

py::dict witness_to_dict(const Witness& w) {
    py::dict assignment;
    for (const auto& [name, mask] : w.assignment)
        assignment[py::str(name)] = mask_to_worlds(mask);
    py::dict d;
    d["world"] = w.world;
    d["assignment"] = assignment;
    return d;
}

Condition condition_arg(const std::string& name) {
    auto c = condition_from_name(name);
    if (!c) throw py::value_error("unknown frame condition: " + name);
    return *c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Workbench for conditional logics over selection-function frames: "
        "parsing, frame-validity checking, proof checking, countermodel "
        "search, and the bundled derivation corpus.";
    m.attr("__version__") = CONDLOGIC_VERSION;

    // Malformed input of any stripe surfaces as ValueError.
    py::register_exception<SyntaxError>(m, "FormulaSyntaxError", PyExc_ValueError);
    py::register_exception<FrameFormatError>(m, "FrameFormatError", PyExc_ValueError);
    py::register_exception<ProofFormatError>(m, "ProofFormatError", PyExc_ValueError);
    py::register_exception<EvalError>(m, "EvalError", PyExc_ValueError);
    py::register_exception<CatalogError>(m, "CatalogError", PyExc_ValueError);
    py::register_exception<CorpusError>(m, "CorpusError", PyExc_ValueError);

    // ── formulas ───────────────────────────────────────────────────────────

    m.def(
        "parse",
        [](const std::string& text) { return to_string(parse(text)); },
        py::arg("text"),
        "Parse a formula and return its canonical minimally-parenthesized "
        "rendering.  Raises ValueError on a syntax error.");

    m.def(
        "variables",
        [](const std::string& text) { return variables(parse(text)); },
        py::arg("text"), "Sorted propositional variables of a formula.");

    m.def(
        "metavariables",
        [](const std::string& text) { return metavariables(parse(text)); },
        py::arg("text"), "Sorted schematic metavariables of a formula.");

    // ── frames ─────────────────────────────────────────────────────────────

    m.def(
        "load_frame",
        [](const std::string& spec) { return json_loads(frame_to_json(load_frame(spec))); },
        py::arg("spec"),
        "Load a frame ('builtin:lewis-g', 'builtin:material-N', or a JSON "
        "file path) and return it as a dict.");

    m.def(
        "condition_profile",
        [](const std::string& spec) {
            const Frame fr = load_frame(spec);
            py::dict out;
            for (Condition c : all_conditions()) {
                py::dict entry;
                auto w = check_condition(fr, c);
                entry["holds"] = !w.has_value();
                if (w) {
                    py::dict wd;
                    wd["world"] = w->world;
                    wd["x"] = mask_to_worlds(w->x);
                    if (w->y) wd["y"] = mask_to_worlds(*w->y);
                    entry["witness"] = wd;
                } else {
                    entry["witness"] = py::none();
                }
                out[condition_name(c)] = entry;
            }
            return out;
        },
        py::arg("spec"),
        "Check all eight frame conditions; per condition, whether it holds "
        "and (if not) the first counter-witness.");

    m.def(
        "schema_valid",
        [](const std::string& frame_spec, const std::string& schema) {
            const Frame fr = load_frame(frame_spec);
            auto w = schema_valid_on_frame(fr, parse(schema));
            py::dict out;
            out["valid"] = !w.has_value();
            out["witness"] = w ? py::object(witness_to_dict(*w)) : py::none();
            return out;
        },
        py::arg("frame"), py::arg("schema"),
        "Validity of a schema on a frame, quantifying variables and "
        "metavariables over all subsets; on failure, the first falsifying "
        "assignment and world.");

    m.def(
        "truth_set",
        [](const std::string& frame_spec, const std::string& formula,
           const std::map<std::string, std::vector<int>>& assignment) {
            const Frame fr = load_frame(frame_spec);
            Valuation v;
            MetaAssign meta;
            for (const auto& [name, worlds] : assignment) {
                Mask mask = worlds_to_mask(worlds, fr.size());
                // single capital letters are metavariables, per the grammar
                if (name.size() == 1 && name[0] >= 'A' && name[0] <= 'Z')
                    meta[name] = mask;
                else
                    v[name] = mask;
            }
            return mask_to_worlds(truth_set(fr, v, meta, parse(formula)));
        },
        py::arg("frame"), py::arg("formula"), py::arg("assignment"),
        "Worlds where the formula is true, given subsets (lists of world "
        "indices) for every variable and metavariable.");

    // ── proof checking ─────────────────────────────────────────────────────

    m.def(
        "check_proof",
        [](const std::string& proof_json, const std::string& corpus_dir) {
            const Proof proof = proof_from_json(proof_json);
            CheckReport rep;
            if (corpus_dir.empty()) {
                rep = check_proof(proof, builtin_catalog(), RuleRegistry{});
            } else {
                CorpusRun run = run_corpus(corpus_dir);
                if (!run.report.ok)
                    throw py::value_error("corpus replay failed: " +
                                          run.report.failure);
                rep = check_proof(proof, run.catalog, run.registry);
            }
            return json_loads(report_to_json(rep));
        },
        py::arg("proof_json"), py::arg("corpus_dir") = std::string(),
        "Check a proof given as JSON text.  With corpus_dir, the bundled "
        "corpus is replayed first so its registered rules and lemmas are "
        "citable.");

    m.def(
        "verify_corpus",
        [](const std::string& dir, bool keep_going) {
            return json_loads(corpus_report_to_json(verify_corpus(dir, keep_going)));
        },
        py::arg("dir"), py::arg("keep_going") = false,
        "Replay the derivation corpus from scratch and report per-stage and "
        "per-proof results.");

    // ── countermodel search ────────────────────────────────────────────────

    m.def(
        "find_countermodel",
        [](const std::string& target, const std::vector<std::string>& conditions,
           int max_worlds, std::uint64_t budget,
           std::optional<std::uint64_t> seed) {
            SearchSpec spec;
            spec.target = parse(target);
            for (const auto& name : conditions)
                spec.conditions.push_back(condition_arg(name));
            spec.max_worlds = max_worlds;
            spec.budget = budget;
            spec.seed = seed;
            const SearchResult res = find_countermodel(spec);
            py::dict out;
            out["status"] = search_status_name(res.status);
            out["worlds"] = res.worlds;
            out["nodes"] = res.nodes;
            out["frame"] = res.frame
                               ? json_loads(frame_to_json(*res.frame))
                               : py::none();
            out["witness"] = res.witness
                                 ? py::object(witness_to_dict(*res.witness))
                                 : py::none();
            return out;
        },
        py::arg("target"), py::arg("conditions"), py::arg("max_worlds") = 4,
        py::arg("budget") = std::uint64_t{5'000'000},
        py::arg("seed") = std::nullopt,
        "Search for a frame in the given condition class falsifying the "
        "target schema, trying sizes 1..max_worlds.  Found frames are "
        "re-verified before being returned.");

    m.def(
        "verify_countermodel",
        [](const py::dict& frame, const std::vector<std::string>& conditions,
           const std::string& target, const py::dict& witness) {
            const Frame fr = frame_from_json(
                py::cast<std::string>(py::module_::import("json").attr("dumps")(frame)));
            std::vector<Condition> cs;
            for (const auto& name : conditions) cs.push_back(condition_arg(name));
            Witness w;
            w.world = py::cast<int>(witness["world"]);
            for (auto item : py::cast<py::dict>(witness["assignment"]))
                w.assignment[py::cast<std::string>(item.first)] = worlds_to_mask(
                    py::cast<std::vector<int>>(item.second), fr.size());
            std::string why;
            const bool ok = verify_countermodel(fr, cs, parse(target), w, &why);
            py::dict out;
            out["ok"] = ok;
            out["detail"] = why;
            return out;
        },
        py::arg("frame"), py::arg("conditions"), py::arg("target"),
        py::arg("witness"),
        "Re-check a claimed countermodel from scratch: the frame satisfies "
        "every condition and the target is false at the witness world.");

    // ── correspondence ─────────────────────────────────────────────────────

    m.def(
        "correspondence",
        [](int size, const std::string& condition, const std::string& schema,
           std::uint64_t samples, std::uint64_t seed) {
            const CorrespondenceReport rep = correspondence_check(
                size, condition_arg(condition), parse(schema), samples, seed);
            py::dict out;
            out["frames_checked"] = rep.frames_checked;
            out["violations"] = rep.violations;
            py::list examples;
            for (const auto& fr : rep.examples)
                examples.append(json_loads(frame_to_json(fr)));
            out["examples"] = examples;
            return out;
        },
        py::arg("size"), py::arg("condition"), py::arg("schema"),
        py::arg("samples") = std::uint64_t{0}, py::arg("seed") = std::uint64_t{0},
        "Check that a frame condition and a schema hold on exactly the same "
        "frames of the given size (exhaustive for sizes 1-2, sampled above).");

    // ── catalog introspection ──────────────────────────────────────────────

    m.def(
        "catalog",
        []() {
            const Catalog cat = builtin_catalog();
            py::dict schemas, systems;
            py::list rules;
            for (const auto& [name, def] : cat.schemas)
                schemas[py::str(name)] = to_string(def.body);
            for (const auto& [name, def] : cat.rules) rules.append(name);
            for (const auto& [name, def] : cat.systems) {
                py::dict s;
                s["axioms"] = def.axioms;
                s["rules"] = def.rules;
                s["extends"] = def.extends;
                systems[py::str(name)] = s;
            }
            py::dict out;
            out["schemas"] = schemas;
            out["rules"] = rules;
            out["systems"] = systems;
            return out;
        },
        "The built-in axiom schemas, primitive rules, and proof systems.");
}
