// ============================================================================
// corpus.cpp — catalog contents and corpus verification
// ============================================================================

#include "condlogic/corpus.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace condlogic {

// --------------------------------------------------------------------------
// Catalog lookups
// --------------------------------------------------------------------------

const SchemaDef* Catalog::find_schema(const std::string& n) const {
    auto it = schemas.find(n);
    return it == schemas.end() ? nullptr : &it->second;
}

const RuleDef* Catalog::find_rule(const std::string& n) const {
    auto it = rules.find(n);
    return it == rules.end() ? nullptr : &it->second;
}

const SystemDef* Catalog::find_system(const std::string& n) const {
    auto it = systems.find(n);
    return it == systems.end() ? nullptr : &it->second;
}

bool Catalog::system_has_axiom(const SystemDef& sys, const std::string& schema) const {
    for (const auto& a : sys.axioms)
        if (a == schema) return true;
    return false;
}

bool Catalog::system_has_rule(const SystemDef& sys, const std::string& rule) const {
    for (const auto& r : sys.rules)
        if (r == rule) return true;
    return false;
}

// --------------------------------------------------------------------------
// Built-in catalog
// --------------------------------------------------------------------------

namespace {

struct SchemaRow {
    const char* name;
    const char* body;
};

// The fifteen conditional schemas.  Classical tautologies are not listed:
// they enter proofs through the pc justification.
constexpr SchemaRow kSchemas[] = {
    {"ID", "A>A"},
    {"CM", "(A>B&C)->(A>B)&(A>C)"},
    {"CC", "(A>B)&(A>C)->(A>B&C)"},
    {"CV", "(A>C)&~(A>~B)->(A&B>C)"},
    {"CA", "(A>C)&(B>C)->(A|B>C)"},
    {"AC", "(A>B)&(A>C)->(A&B>C)"},
    {"RT", "(A>B)&(B&A>C)->(A>C)"},
    {"CSO", "(A>B)&(B>A)->((A>C)<->(B>C))"},
    {"MOD", "(A>~A)->(B>~A)"},
    {"MOD'", "(~A>A)->(B>A)"},
    {"DAE", "(A|B>A)|(A|B>B)|((A|B>C)<->(A>C)&(B>C))"},
    {"PIE", "(A>~B)|((A&B>C)<->(A>(B->C)))"},
    {"CMP", "(A>B)->(A->B)"},
    {"CS", "A&B->(A>B)"},
    {"SDA", "(A|B>C)->(A>C)&(B>C)"},
};

struct RuleRow {
    const char* name;
    const char* form;        // "schematic", "rck", "re"
    const char* premise;     // schematic only
    const char* conclusion;  // schematic only
};

constexpr RuleRow kRules[] = {
    {"RCM", "schematic", "A->B", "(C>A)->(C>B)"},
    {"RCE", "schematic", "A->B", "A>B"},
    {"RCN", "schematic", "B", "A>B"},
    {"RCEA", "schematic", "A<->B", "(A>C)<->(B>C)"},
    {"RCEC", "schematic", "A<->B", "(C>A)<->(C>B)"},
    {"RCK", "rck", "", ""},
    {"RE", "re", "", ""},
};

struct SystemRow {
    const char* name;
    const char* axioms;   // comma-separated
    const char* rules;    // comma-separated
    const char* extends;  // "" = none
};

constexpr SystemRow kSystems[] = {
    {"Vn", "ID,CM,CC,CV,MOD',CSO", "RCEC", ""},
    {"VCn", "ID,CM,CC,CV,MOD',CSO,CMP,CS", "RCEC", "Vn"},
    {"VWn", "ID,CV,MOD',CSO,CMP", "RCEC,RCK", ""},
    {"Va", "ID,CSO,DAE", "RCK", ""},
    {"Vb", "ID,MOD',PIE", "RCK,RE", ""},
    {"Vc", "ID,CM,CC,CV,CA,CSO", "RCEC", ""},
    {"VCa", "ID,CSO,DAE,CMP,CS", "RCK", "Va"},
    {"VCb", "ID,MOD',PIE,CMP,CS", "RCK,RE", "Vb"},
    {"VCc", "ID,CM,CC,CV,CA,CSO,CMP,CS", "RCEC", "Vc"},
    {"V'", "ID,CM,CA,CV,AC,RT", "RCEC", ""},
    {"VC'", "ID,CM,CA,CV,AC,RT,CMP,CS", "RCEC", "V'"},
    {"sda-rcea", "SDA", "RCEA", ""},
    {"dae-pc", "DAE", "", ""},
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

SchemaDef make_schema(const std::string& name, const std::string& body) {
    SchemaDef def;
    def.name = name;
    try {
        def.body = parse(body);
    } catch (const SyntaxError& e) {
        throw CatalogError("schema " + name + ": " + e.what());
    }
    def.metavars = metavariables(def.body);
    if (def.metavars.empty())
        throw CatalogError("schema " + name + " has no metavariables");
    if (!variables(def.body).empty())
        throw CatalogError("schema " + name + " must not contain object variables");
    return def;
}

RuleDef make_rule(const std::string& name, const std::string& form,
                  const std::vector<std::string>& premises, const std::string& conclusion) {
    RuleDef def;
    def.name = name;
    if (form == "schematic") {
        def.form = RuleForm::Schematic;
        for (const auto& p : premises) def.premises.push_back(parse(p));
        def.conclusion = parse(conclusion);
    } else if (form == "rck") {
        def.form = RuleForm::RckTemplate;
    } else if (form == "re") {
        def.form = RuleForm::ReTemplate;
    } else {
        throw CatalogError("rule " + name + ": unknown form '" + form + "'");
    }
    return def;
}

void validate_catalog(const Catalog& cat) {
    for (const auto& [name, sys] : cat.systems) {
        for (const auto& a : sys.axioms)
            if (!cat.find_schema(a))
                throw CatalogError("system " + name + " lists unknown schema '" + a + "'");
        for (const auto& r : sys.rules)
            if (!cat.find_rule(r))
                throw CatalogError("system " + name + " lists unknown rule '" + r + "'");
        if (!sys.extends.empty() && !cat.find_system(sys.extends))
            throw CatalogError("system " + name + " extends unknown system '" + sys.extends +
                               "'");
    }
}

}  // namespace

Catalog builtin_catalog() {
    Catalog cat;
    for (const auto& row : kSchemas)
        cat.schemas.emplace(row.name, make_schema(row.name, row.body));
    for (const auto& row : kRules)
        cat.rules.emplace(row.name,
                          make_rule(row.name, row.form,
                                    *row.premise ? std::vector<std::string>{row.premise}
                                                 : std::vector<std::string>{},
                                    row.conclusion));
    for (const auto& row : kSystems) {
        SystemDef sys;
        sys.name = row.name;
        sys.axioms = split_csv(row.axioms);
        sys.rules = split_csv(row.rules);
        sys.extends = row.extends;
        cat.systems.emplace(row.name, std::move(sys));
    }
    validate_catalog(cat);
    return cat;
}

// --------------------------------------------------------------------------
// Catalog from JSON
// --------------------------------------------------------------------------

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw CatalogError(what + ": invalid json: " + e.what());
    }
}

}  // namespace

Catalog catalog_from_json(const std::string& schemas_json, const std::string& systems_json) {
    Catalog cat;
    const json js = parse_json(schemas_json, "schemas");
    const json jy = parse_json(systems_json, "systems");
    try {
        for (const auto& s : js.at("schemas"))
            cat.schemas.emplace(
                s.at("name").get<std::string>(),
                make_schema(s.at("name").get<std::string>(), s.at("body").get<std::string>()));
        for (const auto& r : jy.at("rules")) {
            const std::string name = r.at("name").get<std::string>();
            const std::string form = r.value("form", "schematic");
            std::vector<std::string> premises;
            if (r.contains("premises"))
                for (const auto& p : r.at("premises")) premises.push_back(p.get<std::string>());
            cat.rules.emplace(name, make_rule(name, form, premises, r.value("conclusion", "")));
        }
        for (const auto& y : jy.at("systems")) {
            SystemDef sys;
            sys.name = y.at("name").get<std::string>();
            for (const auto& a : y.at("axioms")) sys.axioms.push_back(a.get<std::string>());
            if (y.contains("rules"))
                for (const auto& r : y.at("rules")) sys.rules.push_back(r.get<std::string>());
            sys.extends = y.value("extends", "");
            cat.systems.emplace(sys.name, std::move(sys));
        }
    } catch (const json::exception& e) {
        throw CatalogError(std::string("malformed catalog: ") + e.what());
    }
    validate_catalog(cat);
    return cat;
}

// --------------------------------------------------------------------------
// File loading
// --------------------------------------------------------------------------

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool catalogs_equal(const Catalog& a, const Catalog& b, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (a.schemas.size() != b.schemas.size()) return fail("schema counts differ");
    for (const auto& [name, sa] : a.schemas) {
        const SchemaDef* sb = b.find_schema(name);
        if (!sb) return fail("schema '" + name + "' missing");
        if (!equal(sa.body, sb->body)) return fail("schema '" + name + "' bodies differ");
    }
    if (a.rules.size() != b.rules.size()) return fail("rule counts differ");
    for (const auto& [name, ra] : a.rules) {
        const RuleDef* rb = b.find_rule(name);
        if (!rb) return fail("rule '" + name + "' missing");
        if (ra.form != rb->form) return fail("rule '" + name + "' forms differ");
        if (ra.premises.size() != rb->premises.size())
            return fail("rule '" + name + "' premise counts differ");
        for (std::size_t i = 0; i < ra.premises.size(); ++i)
            if (!equal(ra.premises[i], rb->premises[i]))
                return fail("rule '" + name + "' premises differ");
        if ((ra.conclusion == nullptr) != (rb->conclusion == nullptr) ||
            (ra.conclusion && !equal(ra.conclusion, rb->conclusion)))
            return fail("rule '" + name + "' conclusions differ");
    }
    if (a.systems.size() != b.systems.size()) return fail("system counts differ");
    for (const auto& [name, ya] : a.systems) {
        const SystemDef* yb = b.find_system(name);
        if (!yb) return fail("system '" + name + "' missing");
        if (ya.axioms != yb->axioms || ya.rules != yb->rules || ya.extends != yb->extends)
            return fail("system '" + name + "' definitions differ");
    }
    return true;
}

}  // namespace

Catalog load_catalog(const std::string& dir) {
    return catalog_from_json(read_file(dir + "/schemas.json"),
                             read_file(dir + "/systems.json"));
}

std::vector<ManifestEntry> load_manifest(const std::string& dir) {
    const json j = parse_json(read_file(dir + "/manifest.json"), "manifest");
    std::vector<ManifestEntry> out;
    try {
        for (const auto& e : j.at("proofs")) {
            ManifestEntry m;
            m.file = e.at("file").get<std::string>();
            m.system = e.at("system").get<std::string>();
            if (e.contains("register")) {
                m.reg.kind = e.at("register").at("kind").get<std::string>();
                m.reg.name = e.at("register").at("name").get<std::string>();
            }
            if (e.contains("uses"))
                for (const auto& u : e.at("uses")) m.uses.push_back(u.get<std::string>());
            out.push_back(std::move(m));
        }
    } catch (const json::exception& e) {
        throw CorpusError(std::string("malformed manifest: ") + e.what());
    }
    return out;
}

// --------------------------------------------------------------------------
// Verification
// --------------------------------------------------------------------------

namespace {

// The separation frame's expected condition profile.
constexpr Condition kHeld[] = {Condition::Id,  Condition::Mod, Condition::ModPrime,
                               Condition::Cv,  Condition::Cso, Condition::Cent};
constexpr Condition kViolated[] = {Condition::Ca, Condition::Sda};

StageResult stage_catalog(const std::string& dir, Catalog& cat) {
    StageResult st{"catalog", false, ""};
    try {
        cat = load_catalog(dir);
        const Catalog builtin = builtin_catalog();
        std::string why;
        if (!catalogs_equal(cat, builtin, &why)) {
            st.detail = "data files disagree with the built-in catalog: " + why;
            return st;
        }
        st.ok = true;
        st.detail = std::to_string(cat.schemas.size()) + " schemas, " +
                    std::to_string(cat.rules.size()) + " rules, " +
                    std::to_string(cat.systems.size()) + " systems";
    } catch (const std::exception& e) {
        st.detail = e.what();
    }
    return st;
}

StageResult stage_frame(const std::string& dir, Frame& frame) {
    StageResult st{"frame", false, ""};
    try {
        frame = frame_from_json(read_file(dir + "/frames/lewis-g.json"));
        if (!(frame == lewis_g())) {
            st.detail = "frames/lewis-g.json differs from the built-in frame";
            return st;
        }
        for (Condition c : kHeld) {
            if (auto w = check_condition(frame, c)) {
                st.detail = std::string("condition ") + condition_name(c) +
                            " unexpectedly fails at world " + std::to_string(w->world);
                return st;
            }
        }
        for (Condition c : kViolated) {
            if (!check_condition(frame, c)) {
                st.detail = std::string("condition ") + condition_name(c) +
                            " unexpectedly holds";
                return st;
            }
        }
        st.ok = true;
        st.detail = "4 worlds; satisfies id, mod, mod', cv, cso, cent; violates ca, sda";
    } catch (const std::exception& e) {
        st.detail = e.what();
    }
    return st;
}

StageResult stage_validity(const Catalog& cat, const Frame& frame) {
    StageResult st{"validity", false, ""};
    const SystemDef* vcn = cat.find_system("VCn");
    if (!vcn) {
        st.detail = "system VCn missing";
        return st;
    }
    for (const auto& name : vcn->axioms) {
        const SchemaDef* sch = cat.find_schema(name);
        if (auto w = schema_valid_on_frame(frame, sch->body)) {
            st.detail = "axiom " + name + " unexpectedly fails on the separation frame";
            return st;
        }
    }
    const SchemaDef* ca = cat.find_schema("CA");
    auto w = schema_valid_on_frame(frame, ca->body);
    if (!w) {
        st.detail = "CA unexpectedly valid on the separation frame";
        return st;
    }
    // The canonical falsification: A = {w1,w2}, B = {w1,w3}, C = {w1,w3}
    // fails at w0.
    const MetaAssign canon{{"A", 0b0110u}, {"B", 0b1010u}, {"C", 0b1010u}};
    const Mask sat = truth_set(frame, {}, canon, ca->body);
    if (sat & 1u) {
        st.detail = "canonical CA falsification does not fail at world w0";
        return st;
    }
    const RuleDef* rcec = cat.find_rule("RCEC");
    if (rule_preserved_on_frame(frame, rcec->premises, rcec->conclusion)) {
        st.detail = "RCEC not validity-preserving on the separation frame";
        return st;
    }
    st.ok = true;
    st.detail = "all VC axioms valid, CA falsified (canonical assignment confirmed), "
                "RCEC preserves validity";
    return st;
}

}  // namespace

CorpusRun run_corpus(const std::string& dir, bool keep_going) {
    CorpusRun run;
    CorpusReport& rep = run.report;
    auto fail = [&](const std::string& msg) {
        if (rep.failure.empty()) rep.failure = msg;
    };

    StageResult st = stage_catalog(dir, run.catalog);
    rep.stages.push_back(st);
    if (!st.ok) {
        fail("catalog: " + st.detail);
        return run;
    }

    Frame frame = Frame::make(1);
    st = stage_frame(dir, frame);
    rep.stages.push_back(st);
    if (!st.ok) {
        fail("frame: " + st.detail);
        return run;
    }

    st = stage_validity(run.catalog, frame);
    rep.stages.push_back(st);
    if (!st.ok) {
        fail("validity: " + st.detail);
        return run;
    }

    std::vector<ManifestEntry> manifest;
    try {
        manifest = load_manifest(dir);
    } catch (const std::exception& e) {
        fail(std::string("manifest: ") + e.what());
        return run;
    }

    bool proofs_ok = true;
    for (const auto& entry : manifest) {
        ProofResult pr;
        pr.file = entry.file;
        try {
            const Proof proof = proof_from_json(read_file(dir + "/" + entry.file));
            pr.name = proof.name;
            pr.system = proof.system;
            if (proof.system != entry.system)
                throw CorpusError("manifest says system '" + entry.system +
                                  "', proof says '" + proof.system + "'");
            pr.report = check_proof(proof, run.catalog, run.registry);
            pr.ok = pr.report.ok;
            if (pr.ok) {
                pr.detail = "ok";
                if (!entry.reg.kind.empty()) {
                    register_from_proof(run.registry, run.catalog, proof, pr.report,
                                        entry.reg.kind, entry.reg.name);
                    pr.detail = "ok; registered " + entry.reg.kind + " '" + entry.reg.name +
                                "' for " + proof.system;
                }
            } else {
                pr.detail = pr.report.failure;
            }
        } catch (const std::exception& e) {
            pr.ok = false;
            pr.detail = e.what();
        }
        if (!pr.ok) {
            proofs_ok = false;
            fail(entry.file + ": " + pr.detail);
        }
        rep.proofs.push_back(std::move(pr));
        if (!proofs_ok && !keep_going) break;
    }

    rep.ok = proofs_ok && rep.failure.empty();
    return run;
}

CorpusReport verify_corpus(const std::string& dir, bool keep_going) {
    return run_corpus(dir, keep_going).report;
}

std::string corpus_report_to_json(const CorpusReport& r) {
    json j;
    j["ok"] = r.ok;
    if (!r.failure.empty()) j["failure"] = r.failure;
    json stages = json::array();
    for (const auto& st : r.stages) {
        json s;
        s["name"] = st.name;
        s["ok"] = st.ok;
        s["detail"] = st.detail;
        stages.push_back(std::move(s));
    }
    j["stages"] = stages;
    json proofs = json::array();
    for (const auto& pr : r.proofs) {
        json p;
        p["file"] = pr.file;
        p["name"] = pr.name;
        p["system"] = pr.system;
        p["ok"] = pr.ok;
        p["detail"] = pr.detail;
        proofs.push_back(std::move(p));
    }
    j["proofs"] = proofs;
    return j.dump(2);
}

}  // namespace condlogic
