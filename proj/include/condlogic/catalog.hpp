// ============================================================================
// condlogic/catalog.hpp — axiom schemas, inference rules, named systems
// ============================================================================
//
// The catalog is the fixed vocabulary the proof kernel works against:
//
//   * 15 named axiom schemas (ID, CM, CC, CV, CA, AC, RT, CSO, MOD, MOD',
//     DAE, PIE, CMP, CS, SDA); classical tautologies enter proofs through
//     the separate PC justification, not as a schema;
//   * the conditional rules RCM, RCE, RCN, RCK, RCEA, RCEC, RE;
//   * the named systems.  Every system implicitly includes classical
//     propositional logic (the PC justification and modus ponens folded
//     into it).
//
// Rules come in three forms:
//   Schematic    fixed premise/conclusion schemas (RCM, RCE, RCN, RCEA,
//                RCEC; also registered lemmas, which have no premises);
//   RckTemplate  the n-ary rule  ψ1∧…∧ψn→ψ / (φ>ψ1)∧…∧(φ>ψn)→(φ>ψ)
//                (n ≥ 0; for n = 0 the conclusion is φ>ψ), checked
//                against an explicit conjunct list;
//   ReTemplate   replacement of proved equivalents: from ψ↔ψ' conclude
//                φ ↔ φ[ψ:=ψ'] at explicitly given occurrence paths.
// ============================================================================

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "condlogic/formula.hpp"

namespace condlogic {

struct SchemaDef {
    std::string name;
    FormulaPtr body;
    std::vector<std::string> metavars;  // sorted
};

enum class RuleForm { Schematic, RckTemplate, ReTemplate };

struct RuleDef {
    std::string name;
    RuleForm form = RuleForm::Schematic;
    std::vector<FormulaPtr> premises;  // Schematic only; empty for lemmas
    FormulaPtr conclusion;             // Schematic only
    // Provenance for derived rules and lemmas.
    std::string derived_in;            // system name; empty = primitive
    std::string via_proof;             // name of the registering proof
    bool generalized = false;          // template admitted beyond the proved arity
    // Transitive citation closure of the defining proof (primitives only).
    std::set<std::string> axioms_used;
    std::set<std::string> rules_used;
};

struct SystemDef {
    std::string name;
    std::vector<std::string> axioms;  // schema names
    std::vector<std::string> rules;   // primitive rule names
    std::string extends;              // base system, "" if none
};

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Catalog {
    std::map<std::string, SchemaDef> schemas;
    std::map<std::string, RuleDef> rules;  // primitive rules
    std::map<std::string, SystemDef> systems;

    const SchemaDef* find_schema(const std::string& n) const;
    const RuleDef* find_rule(const std::string& n) const;
    const SystemDef* find_system(const std::string& n) const;
    bool system_has_axiom(const SystemDef& sys, const std::string& schema) const;
    bool system_has_rule(const SystemDef& sys, const std::string& rule) const;
};

// The compiled-in catalog (identical content ships as data files; a unit
// test keeps the two in sync).
Catalog builtin_catalog();

// Parses schemas.json / systems.json content into an existing catalog
// shell; throws CatalogError with context on malformed content.
Catalog catalog_from_json(const std::string& schemas_json, const std::string& systems_json);

}  // namespace condlogic
