// ============================================================================
// proofkernel.cpp — PC entailment, rule application, proof checking
// ============================================================================

#include "condlogic/proofkernel.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include <json.hpp>

namespace condlogic {

namespace {

// --------------------------------------------------------------------------
// Propositional evaluation over modal atoms
// --------------------------------------------------------------------------
//
// Formulas are compiled once into trees whose leaves are indices into a
// shared atom table (variables, metavariables and whole conditionals), then
// evaluated per assignment.

struct BExpr {
    Op op = Op::Var;  // Var marks an atom leaf
    int atom = -1;
    std::unique_ptr<BExpr> l, r;
};

int atom_index(std::vector<FormulaPtr>& atoms, const FormulaPtr& f) {
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (equal(atoms[i], f)) return static_cast<int>(i);
    atoms.push_back(f);
    return static_cast<int>(atoms.size() - 1);
}

std::unique_ptr<BExpr> compile_bool(const FormulaPtr& f, std::vector<FormulaPtr>& atoms) {
    auto e = std::make_unique<BExpr>();
    switch (f->op) {
        case Op::Var:
        case Op::MetaVar:
        case Op::Cond:
            e->op = Op::Var;
            e->atom = atom_index(atoms, f);
            break;
        case Op::Not:
            e->op = Op::Not;
            e->l = compile_bool(f->left, atoms);
            break;
        default:
            e->op = f->op;
            e->l = compile_bool(f->left, atoms);
            e->r = compile_bool(f->right, atoms);
            break;
    }
    return e;
}

bool beval(const BExpr& e, std::uint32_t bits) {
    switch (e.op) {
        case Op::Var: return (bits >> e.atom) & 1u;
        case Op::Not: return !beval(*e.l, bits);
        case Op::And: return beval(*e.l, bits) && beval(*e.r, bits);
        case Op::Or: return beval(*e.l, bits) || beval(*e.r, bits);
        case Op::Imp: return !beval(*e.l, bits) || beval(*e.r, bits);
        case Op::Iff: return beval(*e.l, bits) == beval(*e.r, bits);
        default: return false;  // unreachable
    }
}

}  // namespace

std::optional<PcCounter> pc_entails(const std::vector<FormulaPtr>& premises,
                                    const FormulaPtr& conclusion, const PcConfig& cfg) {
    std::vector<FormulaPtr> atoms;
    std::vector<std::unique_ptr<BExpr>> prem;
    prem.reserve(premises.size());
    for (const auto& p : premises) prem.push_back(compile_bool(p, atoms));
    auto concl = compile_bool(conclusion, atoms);

    if (static_cast<int>(atoms.size()) > cfg.atom_limit)
        throw PcLimitError("pc check needs " + std::to_string(atoms.size()) +
                           " atoms, limit is " + std::to_string(cfg.atom_limit));

    const std::uint64_t rows = std::uint64_t{1} << atoms.size();
    for (std::uint64_t row = 0; row < rows; ++row) {
        const auto bits = static_cast<std::uint32_t>(row);
        bool all = true;
        for (const auto& p : prem)
            if (!beval(*p, bits)) { all = false; break; }
        if (!all || beval(*concl, bits)) continue;
        PcCounter cx;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            cx.assignment.emplace_back(to_string(atoms[i]), ((bits >> i) & 1u) != 0);
        return cx;
    }
    return std::nullopt;
}

// --------------------------------------------------------------------------
// Rule registry
// --------------------------------------------------------------------------

void RuleRegistry::add(const std::string& system, RuleDef def) {
    auto key = std::make_pair(system, def.name);
    if (defs_.count(key))
        throw CatalogError("rule '" + def.name + "' already registered for system '" +
                           system + "'");
    defs_.emplace(std::move(key), std::move(def));
}

const RuleDef* RuleRegistry::lookup(const Catalog& cat, const std::string& system,
                                    const std::string& name) const {
    std::string cur = system;
    for (int hops = 0; hops < 16 && !cur.empty(); ++hops) {
        auto it = defs_.find(std::make_pair(cur, name));
        if (it != defs_.end()) return &it->second;
        const SystemDef* sys = cat.find_system(cur);
        if (!sys) break;
        cur = sys->extends;
    }
    return nullptr;
}

std::vector<const RuleDef*> RuleRegistry::registered_for(const std::string& system) const {
    std::vector<const RuleDef*> out;
    for (const auto& [key, def] : defs_)
        if (key.first == system) out.push_back(&def);
    return out;
}

std::vector<std::pair<std::string, const RuleDef*>> RuleRegistry::all() const {
    std::vector<std::pair<std::string, const RuleDef*>> out;
    for (const auto& [key, def] : defs_) out.emplace_back(key.first, &def);
    return out;
}

// --------------------------------------------------------------------------
// Rule application checks
// --------------------------------------------------------------------------

namespace {

std::optional<std::string> check_schematic(const RuleDef& def,
                                           const std::vector<FormulaPtr>& premises,
                                           const FormulaPtr& conclusion) {
    if (premises.size() != def.premises.size())
        return "rule '" + def.name + "' expects " + std::to_string(def.premises.size()) +
               " premise(s), got " + std::to_string(premises.size());
    Subst s;
    for (std::size_t i = 0; i < premises.size(); ++i)
        if (!match(def.premises[i], premises[i], s))
            return "premise " + std::to_string(i + 1) + " does not match '" +
                   to_string(def.premises[i]) + "'";
    if (!match(def.conclusion, conclusion, s))
        return "conclusion does not match '" + to_string(def.conclusion) + "'";
    return std::nullopt;
}

FormulaPtr fold_and(const std::vector<FormulaPtr>& parts) {
    FormulaPtr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::mk_and(acc, parts[i]);
    return acc;
}

std::optional<std::string> check_rck(const std::vector<FormulaPtr>& conjuncts,
                                     const std::vector<FormulaPtr>& premises,
                                     const FormulaPtr& conclusion) {
    if (premises.size() != 1) return "rck-style rules take exactly one premise";
    const FormulaPtr& prem = premises[0];
    if (conjuncts.empty()) {
        // n = 0: from ψ conclude φ>ψ.
        if (conclusion->op != Op::Cond || !equal(conclusion->right, prem))
            return "with no conjuncts the conclusion must be a conditional whose "
                   "consequent is the premise";
        return std::nullopt;
    }
    const FormulaPtr folded = fold_and(conjuncts);
    if (prem->op != Op::Imp || !equal(prem->left, folded))
        return "premise must be '" + to_string(folded) + " -> ...' for the given conjuncts";
    const FormulaPtr psi = prem->right;
    if (conclusion->op != Op::Imp) return "conclusion must be an implication";
    const FormulaPtr head = conclusion->right;
    if (head->op != Op::Cond || !equal(head->right, psi))
        return "conclusion must end in a conditional with consequent '" + to_string(psi) + "'";
    const FormulaPtr chi = head->left;
    std::vector<FormulaPtr> conds;
    conds.reserve(conjuncts.size());
    for (const auto& c : conjuncts) conds.push_back(Formula::mk_cond(chi, c));
    const FormulaPtr expected = fold_and(conds);
    if (!equal(conclusion->left, expected))
        return "conclusion antecedent must be '" + to_string(expected) + "'";
    return std::nullopt;
}

std::optional<std::string> check_re(const std::vector<Path>& paths,
                                    const std::vector<FormulaPtr>& premises,
                                    const FormulaPtr& conclusion) {
    if (premises.size() != 1) return "re takes exactly one premise";
    const FormulaPtr& prem = premises[0];
    if (prem->op != Op::Iff) return "re premise must be an equivalence";
    if (conclusion->op != Op::Iff) return "re conclusion must be an equivalence";
    if (paths.empty()) return "re needs at least one occurrence path";
    const FormulaPtr host = conclusion->left;
    for (const auto& p : paths) {
        FormulaPtr sub = subformula_at(host, p);
        if (!sub || !equal(sub, prem->left))
            return "path " + path_to_string(p) + " does not address '" +
                   to_string(prem->left) + "' in '" + to_string(host) + "'";
    }
    FormulaPtr replaced;
    try {
        replaced = replace_at_all(host, paths, prem->right);
    } catch (const std::invalid_argument& e) {
        return std::string(e.what());
    }
    if (!equal(replaced, conclusion->right))
        return "right side must be '" + to_string(replaced) + "'";
    return std::nullopt;
}

}  // namespace

// --------------------------------------------------------------------------
// Replacement expansion
// --------------------------------------------------------------------------

namespace {

struct ReplCtx {
    FormulaPtr rhs;
    int next_id;
    std::vector<ProofLine>* out;
};

Justification just_pc(std::vector<int> refs) {
    Justification j;
    j.kind = Justification::Kind::Pc;
    j.refs = std::move(refs);
    return j;
}

Justification just_rule(std::string name, std::vector<int> refs) {
    Justification j;
    j.kind = Justification::Kind::Rule;
    j.name = std::move(name);
    j.refs = std::move(refs);
    return j;
}

// Emits lines deriving node ↔ node[paths := rhs]; returns the id of the
// line stating that equivalence (equiv_ref itself when node is the
// replaced occurrence).
int derive_rec(const FormulaPtr& node, const std::vector<Path>& paths, int equiv_ref,
               ReplCtx& ctx) {
    if (paths.size() == 1 && paths[0].empty()) return equiv_ref;
    std::vector<Path> lefts, rights, onlys;
    for (const auto& p : paths) {
        if (p.empty()) throw std::invalid_argument("overlapping occurrence paths");
        Path tail(p.begin() + 1, p.end());
        switch (p[0]) {
            case Step::Left: lefts.push_back(std::move(tail)); break;
            case Step::Right: rights.push_back(std::move(tail)); break;
            case Step::Only: onlys.push_back(std::move(tail)); break;
        }
    }
    const FormulaPtr replaced = replace_at_all(node, paths, ctx.rhs);
    switch (node->op) {
        case Op::Not: {
            if (!lefts.empty() || !rights.empty())
                throw std::invalid_argument("bad step under negation");
            int sub = derive_rec(node->left, onlys, equiv_ref, ctx);
            int id = ctx.next_id++;
            ctx.out->push_back({id, Formula::mk_iff(node, replaced), just_pc({sub}), "", ""});
            return id;
        }
        case Op::And:
        case Op::Or:
        case Op::Imp:
        case Op::Iff: {
            if (!onlys.empty()) throw std::invalid_argument("bad step under binary connective");
            std::vector<int> refs;
            if (!lefts.empty()) refs.push_back(derive_rec(node->left, lefts, equiv_ref, ctx));
            if (!rights.empty()) refs.push_back(derive_rec(node->right, rights, equiv_ref, ctx));
            int id = ctx.next_id++;
            ctx.out->push_back({id, Formula::mk_iff(node, replaced), just_pc(std::move(refs)), "", ""});
            return id;
        }
        case Op::Cond: {
            if (!onlys.empty()) throw std::invalid_argument("bad step under conditional");
            const FormulaPtr a = node->left;
            const FormulaPtr c = node->right;
            const FormulaPtr a2 = lefts.empty() ? a : replace_at_all(a, lefts, ctx.rhs);
            const FormulaPtr c2 = rights.empty() ? c : replace_at_all(c, rights, ctx.rhs);
            int by_ant = -1;
            int by_con = -1;
            if (!lefts.empty()) {
                int la = derive_rec(a, lefts, equiv_ref, ctx);
                by_ant = ctx.next_id++;
                ctx.out->push_back({by_ant, Formula::mk_iff(Formula::mk_cond(a, c), Formula::mk_cond(a2, c)),
                                    just_rule("RCEA", {la}), "", ""});
            }
            if (!rights.empty()) {
                int lc = derive_rec(c, rights, equiv_ref, ctx);
                by_con = ctx.next_id++;
                ctx.out->push_back({by_con, Formula::mk_iff(Formula::mk_cond(a2, c), Formula::mk_cond(a2, c2)),
                                    just_rule("RCEC", {lc}), "", ""});
            }
            if (by_ant >= 0 && by_con >= 0) {
                int id = ctx.next_id++;
                ctx.out->push_back({id, Formula::mk_iff(node, replaced), just_pc({by_ant, by_con}), "", ""});
                return id;
            }
            return by_ant >= 0 ? by_ant : by_con;
        }
        default:
            throw std::invalid_argument("path runs past an atom");
    }
}

}  // namespace

std::vector<ProofLine> derive_replacement(const FormulaPtr& host,
                                          const std::vector<Path>& paths,
                                          const FormulaPtr& lhs, const FormulaPtr& rhs,
                                          int equiv_ref, int first_id) {
    if (paths.empty()) throw std::invalid_argument("no occurrence paths given");
    for (const auto& p : paths) {
        FormulaPtr sub = subformula_at(host, p);
        if (!sub || !equal(sub, lhs))
            throw std::invalid_argument("path " + path_to_string(p) +
                                        " does not address '" + to_string(lhs) + "'");
    }
    std::vector<ProofLine> out;
    ReplCtx ctx{rhs, first_id, &out};
    derive_rec(host, paths, equiv_ref, ctx);
    return out;
}

// --------------------------------------------------------------------------
// Proof checking
// --------------------------------------------------------------------------

namespace {

struct Checker {
    const Proof& proof;
    const Catalog& cat;
    const RuleRegistry& reg;
    const PcConfig& cfg;
    const SystemDef* sys = nullptr;
    CheckReport rep;
    std::map<int, FormulaPtr> env;
    int synth_next = 1000001;  // ids for expanded replace steps

    explicit Checker(const Proof& p, const Catalog& c, const RuleRegistry& r,
                     const PcConfig& pc)
        : proof(p), cat(c), reg(r), cfg(pc) {}

    // Returns an error message or nullopt; records citations on success.
    std::optional<std::string> apply_rule(const std::string& name,
                                          const Justification& just,
                                          const std::vector<FormulaPtr>& cited,
                                          const FormulaPtr& stated) {
        const RuleDef* def = nullptr;
        bool primitive = false;
        if (sys && cat.system_has_rule(*sys, name)) {
            def = cat.find_rule(name);
            primitive = true;
        }
        if (!def) def = reg.lookup(cat, proof.system, name);
        if (!def)
            return "rule '" + name + "' is not available in system '" + proof.system + "'";

        std::optional<std::string> err;
        switch (def->form) {
            case RuleForm::Schematic:
                if (!just.conjuncts.empty() || !just.paths.empty())
                    return "rule '" + name + "' takes no conjuncts or paths";
                err = check_schematic(*def, cited, stated);
                break;
            case RuleForm::RckTemplate:
                if (!just.paths.empty()) return "rule '" + name + "' takes no paths";
                err = check_rck(just.conjuncts, cited, stated);
                break;
            case RuleForm::ReTemplate:
                if (!just.conjuncts.empty()) return "rule '" + name + "' takes no conjuncts";
                err = check_re(just.paths, cited, stated);
                break;
        }
        if (err) return err;

        if (primitive) {
            rep.primitive_rules_cited.insert(name);
        } else {
            rep.derived_rules_cited.insert(name);
            rep.axioms_cited.insert(def->axioms_used.begin(), def->axioms_used.end());
            rep.primitive_rules_cited.insert(def->rules_used.begin(), def->rules_used.end());
            if (def->generalized) rep.via_generalized_template = true;
        }
        return std::nullopt;
    }

    std::optional<std::string> check_pc(const std::vector<FormulaPtr>& cited,
                                        const FormulaPtr& stated) {
        std::optional<PcCounter> cx;
        try {
            cx = pc_entails(cited, stated, cfg);
        } catch (const PcLimitError& e) {
            return std::string(e.what());
        }
        if (cx) {
            std::string msg = "not a propositional consequence of the cited lines (fails at";
            for (const auto& [atom, val] : cx->assignment)
                msg += " " + atom + "=" + (val ? "1" : "0");
            return msg + ")";
        }
        rep.pc_used = true;
        return std::nullopt;
    }

    // Checks the synthetic derivation that a replace step expands into.
    std::optional<std::string> check_expansion(const std::vector<ProofLine>& lines,
                                               std::map<int, FormulaPtr>& local,
                                               std::vector<LineVerdict>& out) {
        for (const auto& ln : lines) {
            LineVerdict v;
            v.id = ln.id;
            std::vector<FormulaPtr> cited;
            for (int r : ln.just.refs) {
                auto it = local.find(r);
                if (it == local.end()) return "internal: dangling reference in expansion";
                cited.push_back(it->second);
            }
            std::optional<std::string> err;
            if (ln.just.kind == Justification::Kind::Pc)
                err = check_pc(cited, ln.formula);
            else
                err = apply_rule(ln.just.name, ln.just, cited, ln.formula);
            v.ok = !err;
            v.summary = to_string(ln.formula) + "  [" +
                        (ln.just.kind == Justification::Kind::Pc ? "pc" : ln.just.name) + "]" +
                        (err ? ": " + *err : "");
            out.push_back(std::move(v));
            if (err) return err;
            local.emplace(ln.id, ln.formula);
        }
        return std::nullopt;
    }

    std::optional<std::string> check_replace(const ProofLine& line,
                                             const std::vector<FormulaPtr>& cited,
                                             LineVerdict& v) {
        if (cited.size() != 2) return "replace takes references [host, equivalence]";
        const FormulaPtr host = cited[0];
        FormulaPtr equiv = cited[1];
        if (equiv->op != Op::Iff) return "second reference must be an equivalence";

        std::map<int, FormulaPtr> local = env;
        int equiv_ref = line.just.refs[1];

        std::vector<Path> paths = line.just.paths;
        if (paths.empty()) {
            paths = find_occurrences(host, equiv->left);
            if (paths.empty())
                return "'" + to_string(equiv->left) + "' does not occur in the host line";
        }

        std::vector<ProofLine> expansion;
        try {
            expansion = derive_replacement(host, paths, equiv->left, equiv->right,
                                           equiv_ref, synth_next);
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        synth_next += static_cast<int>(expansion.size()) + 1;

        const FormulaPtr replaced = replace_at_all(host, paths, equiv->right);
        if (!equal(replaced, line.formula))
            return "replacement yields '" + to_string(replaced) + "', not the stated formula";

        if (auto err = check_expansion(expansion, local, v.expansion)) return err;

        // Final glue: stated formula from the host and the derived equivalence.
        int last = expansion.empty() ? equiv_ref : expansion.back().id;
        auto it = local.find(last);
        if (it == local.end()) return "internal: expansion produced no equivalence";
        return check_pc({host, it->second}, line.formula);
    }

    void run() {
        rep.proof_name = proof.name;
        rep.system = proof.system;
        sys = cat.find_system(proof.system);
        if (!sys) {
            rep.failure = "unknown system '" + proof.system + "'";
            return;
        }
        if (proof.lines.empty()) {
            rep.failure = "proof has no lines";
            return;
        }
        if (proof.kind == Proof::Kind::Theorem && !proof.premises.empty()) {
            rep.failure = "a theorem proof cannot declare premises";
            return;
        }

        int prev_id = 0;
        for (const auto& line : proof.lines) {
            LineVerdict v;
            v.id = line.id;
            std::optional<std::string> err;

            if (line.id <= prev_id) {
                err = "line ids must be strictly increasing and positive";
            } else if (!line.formula) {
                err = "line has no formula";
            }

            std::vector<FormulaPtr> cited;
            if (!err) {
                for (int r : line.just.refs) {
                    auto it = env.find(r);
                    if (it == env.end()) {
                        err = "reference to line " + std::to_string(r) +
                              ", which is not an earlier line";
                        break;
                    }
                    cited.push_back(it->second);
                }
            }

            if (!err) {
                switch (line.just.kind) {
                    case Justification::Kind::Axiom: err = check_axiom(line); break;
                    case Justification::Kind::Assumption: err = check_assumption(line); break;
                    case Justification::Kind::Pc: err = check_pc(cited, line.formula); break;
                    case Justification::Kind::Rule:
                        err = apply_rule(line.just.name, line.just, cited, line.formula);
                        break;
                    case Justification::Kind::Replace:
                        err = check_replace(line, cited, v);
                        break;
                }
            }

            v.ok = !err;
            v.summary = err ? *err : describe(line);
            rep.lines.push_back(std::move(v));
            if (err) {
                rep.failure = "line " + std::to_string(line.id) + ": " + *err;
                return;
            }
            env.emplace(line.id, line.formula);
            prev_id = line.id;
        }

        if (!proof.conclusion) {
            rep.failure = "proof declares no conclusion";
            return;
        }
        if (!equal(proof.lines.back().formula, proof.conclusion)) {
            rep.failure = "last line '" + to_string(proof.lines.back().formula) +
                          "' is not the declared conclusion '" + to_string(proof.conclusion) + "'";
            return;
        }
        rep.ok = true;
    }

    std::optional<std::string> check_axiom(const ProofLine& line) {
        const Justification& j = line.just;
        const SchemaDef* sch = cat.find_schema(j.name);
        if (!sch) return "unknown schema '" + j.name + "'";
        if (!cat.system_has_axiom(*sys, j.name))
            return "schema '" + j.name + "' is not an axiom of system '" + proof.system + "'";
        if (!j.refs.empty()) return "axiom justifications take no references";
        if (j.subst_given) {
            for (const auto& [k, f] : j.subst) {
                (void)f;
                if (std::find(sch->metavars.begin(), sch->metavars.end(), k) ==
                    sch->metavars.end())
                    return "substitution binds '" + k + "', which is not a metavariable of '" +
                           j.name + "'";
            }
            FormulaPtr inst;
            try {
                inst = instantiate(sch->body, j.subst);
            } catch (const std::out_of_range&) {
                return "substitution does not bind every metavariable of '" + j.name + "'";
            }
            if (!equal(inst, line.formula))
                return "formula is not the stated instance of '" + j.name + "' (expected '" +
                       to_string(inst) + "')";
        } else {
            Subst s;
            if (!match(sch->body, line.formula, s))
                return "formula does not match schema '" + j.name + "' ('" +
                       to_string(sch->body) + "')";
        }
        rep.axioms_cited.insert(j.name);
        return std::nullopt;
    }

    std::optional<std::string> check_assumption(const ProofLine& line) {
        if (proof.kind != Proof::Kind::DerivedRule)
            return "assumptions are only allowed in derived-rule proofs";
        if (!line.just.refs.empty()) return "assumption justifications take no references";
        for (const auto& p : proof.premises)
            if (equal(p, line.formula)) return std::nullopt;
        return "formula is not among the declared premises";
    }

    static std::string describe(const ProofLine& line) {
        switch (line.just.kind) {
            case Justification::Kind::Axiom: return "axiom " + line.just.name;
            case Justification::Kind::Assumption: return "assumption";
            case Justification::Kind::Pc: return "pc";
            case Justification::Kind::Rule: return "rule " + line.just.name;
            case Justification::Kind::Replace: return "replace";
        }
        return "";
    }
};

}  // namespace

CheckReport check_proof(const Proof& proof, const Catalog& cat, const RuleRegistry& reg,
                        const PcConfig& cfg) {
    Checker ck(proof, cat, reg, cfg);
    ck.run();
    return std::move(ck.rep);
}

// --------------------------------------------------------------------------
// Registration
// --------------------------------------------------------------------------

namespace {

void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (f->op == Op::And) {
        flatten_and(f->left, out);
        out.push_back(f->right);
    } else {
        out.push_back(f);
    }
}

}  // namespace

void register_from_proof(RuleRegistry& reg, const Catalog& cat, const Proof& proof,
                         const CheckReport& report, const std::string& kind,
                         const std::string& name) {
    (void)cat;
    if (!report.ok)
        throw CatalogError("cannot register '" + name + "' from a failed proof");
    RuleDef def;
    def.name = name;
    def.derived_in = proof.system;
    def.via_proof = proof.name;
    def.axioms_used = report.axioms_cited;
    def.rules_used = report.primitive_rules_cited;

    if (kind == "lemma") {
        if (proof.kind != Proof::Kind::Theorem)
            throw CatalogError("'" + proof.name + "' is not a theorem proof");
        def.form = RuleForm::Schematic;
        def.conclusion = proof.conclusion;
    } else if (kind == "rule") {
        if (proof.kind != Proof::Kind::DerivedRule)
            throw CatalogError("'" + proof.name + "' is not a derived-rule proof");
        def.form = RuleForm::Schematic;
        def.premises = proof.premises;
        def.conclusion = proof.conclusion;
    } else if (kind == "rck-template") {
        if (proof.kind != Proof::Kind::DerivedRule || proof.premises.size() != 1)
            throw CatalogError("rck-template registration needs a one-premise rule proof");
        const FormulaPtr prem = proof.premises[0];
        if (prem->op != Op::Imp)
            throw CatalogError("rck-template premise must be an implication");
        std::vector<FormulaPtr> conjuncts;
        flatten_and(prem->left, conjuncts);
        if (auto err = check_rck(conjuncts, {prem}, proof.conclusion))
            throw CatalogError("proof does not instantiate the rck template: " + *err);
        def.form = RuleForm::RckTemplate;
        def.generalized = true;
    } else {
        throw CatalogError("unknown registration kind '" + kind + "'");
    }
    reg.add(proof.system, std::move(def));
}

// --------------------------------------------------------------------------
// JSON
// --------------------------------------------------------------------------

namespace {

using nlohmann::json;

Path path_from_json(const json& j) {
    Path p;
    for (const auto& s : j) {
        const std::string step = s.get<std::string>();
        if (step == "left")
            p.push_back(Step::Left);
        else if (step == "right")
            p.push_back(Step::Right);
        else if (step == "only")
            p.push_back(Step::Only);
        else
            throw ProofFormatError("bad path step '" + step + "'");
    }
    return p;
}

json path_to_json(const Path& p) {
    json j = json::array();
    for (Step s : p)
        j.push_back(s == Step::Left ? "left" : s == Step::Right ? "right" : "only");
    return j;
}

FormulaPtr parse_in(const std::string& text, const std::string& where) {
    try {
        return parse(text);
    } catch (const SyntaxError& e) {
        throw ProofFormatError(where + ": cannot parse '" + text + "': " + e.what());
    }
}

Justification just_from_json(const json& j, const std::string& where) {
    Justification out;
    const std::string type = j.at("type").get<std::string>();
    if (j.contains("refs"))
        for (const auto& r : j.at("refs")) out.refs.push_back(r.get<int>());
    if (type == "axiom") {
        out.kind = Justification::Kind::Axiom;
        out.name = j.at("schema").get<std::string>();
        if (j.contains("subst")) {
            out.subst_given = true;
            for (const auto& [k, v] : j.at("subst").items())
                out.subst[k] = parse_in(v.get<std::string>(), where + " subst " + k);
        }
    } else if (type == "assumption") {
        out.kind = Justification::Kind::Assumption;
    } else if (type == "pc") {
        out.kind = Justification::Kind::Pc;
    } else if (type == "rule") {
        out.kind = Justification::Kind::Rule;
        out.name = j.at("rule").get<std::string>();
        if (j.contains("conjuncts"))
            for (const auto& c : j.at("conjuncts"))
                out.conjuncts.push_back(parse_in(c.get<std::string>(), where + " conjunct"));
        if (j.contains("paths"))
            for (const auto& p : j.at("paths")) out.paths.push_back(path_from_json(p));
    } else if (type == "replace") {
        out.kind = Justification::Kind::Replace;
        if (j.contains("paths"))
            for (const auto& p : j.at("paths")) out.paths.push_back(path_from_json(p));
    } else {
        throw ProofFormatError(where + ": unknown justification type '" + type + "'");
    }
    return out;
}

json just_to_json(const Justification& j) {
    json out;
    switch (j.kind) {
        case Justification::Kind::Axiom:
            out["type"] = "axiom";
            out["schema"] = j.name;
            if (j.subst_given) {
                json s = json::object();
                for (const auto& [k, v] : j.subst) s[k] = to_string(v);
                out["subst"] = s;
            }
            break;
        case Justification::Kind::Assumption: out["type"] = "assumption"; break;
        case Justification::Kind::Pc: out["type"] = "pc"; break;
        case Justification::Kind::Rule:
            out["type"] = "rule";
            out["rule"] = j.name;
            break;
        case Justification::Kind::Replace: out["type"] = "replace"; break;
    }
    if (!j.refs.empty() || j.kind == Justification::Kind::Pc ||
        j.kind == Justification::Kind::Replace)
        out["refs"] = j.refs;
    if (!j.conjuncts.empty()) {
        json c = json::array();
        for (const auto& f : j.conjuncts) c.push_back(to_string(f));
        out["conjuncts"] = c;
    }
    if (!j.paths.empty()) {
        json p = json::array();
        for (const auto& path : j.paths) p.push_back(path_to_json(path));
        out["paths"] = p;
    }
    return out;
}

}  // namespace

Proof proof_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ProofFormatError(std::string("invalid json: ") + e.what());
    }
    try {
        Proof p;
        p.name = j.at("name").get<std::string>();
        p.system = j.at("system").get<std::string>();
        const std::string kind = j.value("kind", "theorem");
        if (kind == "theorem")
            p.kind = Proof::Kind::Theorem;
        else if (kind == "rule")
            p.kind = Proof::Kind::DerivedRule;
        else
            throw ProofFormatError("unknown proof kind '" + kind + "'");
        if (j.contains("premises"))
            for (const auto& prem : j.at("premises"))
                p.premises.push_back(parse_in(prem.get<std::string>(), p.name + " premises"));
        for (const auto& lj : j.at("lines")) {
            ProofLine ln;
            ln.id = lj.at("id").get<int>();
            const std::string where = p.name + " line " + std::to_string(ln.id);
            ln.formula = parse_in(lj.at("formula").get<std::string>(), where);
            ln.just = just_from_json(lj.at("just"), where);
            ln.paper_line = lj.value("paper_line", "");
            ln.note = lj.value("note", "");
            p.lines.push_back(std::move(ln));
        }
        p.conclusion = parse_in(j.at("concludes").get<std::string>(), p.name + " concludes");
        p.provenance = j.value("provenance", "");
        p.notes = j.value("notes", "");
        return p;
    } catch (const json::exception& e) {
        throw ProofFormatError(std::string("malformed proof object: ") + e.what());
    }
}

std::string proof_to_json(const Proof& p) {
    json j;
    j["name"] = p.name;
    j["system"] = p.system;
    j["kind"] = p.kind == Proof::Kind::Theorem ? "theorem" : "rule";
    if (!p.premises.empty()) {
        json prem = json::array();
        for (const auto& f : p.premises) prem.push_back(to_string(f));
        j["premises"] = prem;
    }
    json lines = json::array();
    for (const auto& ln : p.lines) {
        json lj;
        lj["id"] = ln.id;
        lj["formula"] = to_string(ln.formula);
        lj["just"] = just_to_json(ln.just);
        if (!ln.paper_line.empty()) lj["paper_line"] = ln.paper_line;
        if (!ln.note.empty()) lj["note"] = ln.note;
        lines.push_back(std::move(lj));
    }
    j["lines"] = lines;
    j["concludes"] = to_string(p.conclusion);
    if (!p.provenance.empty()) j["provenance"] = p.provenance;
    if (!p.notes.empty()) j["notes"] = p.notes;
    return j.dump(2);
}

namespace {

json verdict_to_json(const LineVerdict& v) {
    json j;
    j["id"] = v.id;
    j["ok"] = v.ok;
    j["summary"] = v.summary;
    if (!v.expansion.empty()) {
        json e = json::array();
        for (const auto& sub : v.expansion) e.push_back(verdict_to_json(sub));
        j["expansion"] = e;
    }
    return j;
}

}  // namespace

std::string report_to_json(const CheckReport& r) {
    json j;
    j["ok"] = r.ok;
    j["proof"] = r.proof_name;
    j["system"] = r.system;
    if (!r.failure.empty()) j["failure"] = r.failure;
    json lines = json::array();
    for (const auto& v : r.lines) lines.push_back(verdict_to_json(v));
    j["lines"] = lines;
    j["axioms_cited"] = r.axioms_cited;
    j["primitive_rules_cited"] = r.primitive_rules_cited;
    j["derived_rules_cited"] = r.derived_rules_cited;
    j["pc_used"] = r.pc_used;
    j["via_generalized_template"] = r.via_generalized_template;
    return j.dump(2);
}

}  // namespace condlogic
