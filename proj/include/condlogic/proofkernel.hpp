// ============================================================================
// condlogic/proofkernel.hpp — Hilbert-style proof checking
// ============================================================================
//
// A proof is a list of lines, each carrying a formula and a justification:
//
//   axiom       instance of a schema available in the proof's system; the
//               substitution may be given explicitly or is inferred by
//               matching;
//   assumption  one of the declared premises (derived-rule proofs only);
//   pc          the line follows from the referenced lines by classical
//               propositional logic, treating every conditional subformula
//               (and every atom) as an opaque propositional letter;
//   rule        application of a rule: a primitive rule of the system or a
//               rule/lemma registered earlier in the run;
//   replace     replacement of proved equivalents inside a host line.  The
//               kernel does not trust this step: it expands it into an
//               explicit derivation (congruence steps through the
//               connectives, RCEA/RCEC through conditionals, PC glue) and
//               checks every expanded line.  In systems where RCEA/RCEC
//               are not primitive they must already be registered.
//
// PC steps are decided by truth tables over the modal atoms, so they are
// sound for the conditional language: a conditional is never analysed
// inside a pc justification.
//
// Checked proofs can be registered as derived rules (premises → conclusion),
// lemmas (no premises), or an n-ary rck-style template generalized from the
// proved arity; the registry records which axioms and primitive rules each
// registration transitively depends on.
// ============================================================================

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "condlogic/catalog.hpp"
#include "condlogic/formula.hpp"

namespace condlogic {

// --------------------------------------------------------------------------
// Propositional entailment over modal atoms
// --------------------------------------------------------------------------

struct PcConfig {
    int atom_limit = 24;  // refuse truth tables beyond 2^atom_limit rows
};

struct PcLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A falsifying assignment: premises all true, conclusion false.  Atoms are
// listed in first-occurrence order (premises before conclusion); the
// assignment returned is the first one in binary counting order with the
// first atom as the least significant bit.
struct PcCounter {
    std::vector<std::pair<std::string, bool>> assignment;
};

// std::nullopt  = the entailment holds.
std::optional<PcCounter> pc_entails(const std::vector<FormulaPtr>& premises,
                                    const FormulaPtr& conclusion,
                                    const PcConfig& cfg = {});

// --------------------------------------------------------------------------
// Proof objects
// --------------------------------------------------------------------------

struct Justification {
    enum class Kind { Axiom, Assumption, Pc, Rule, Replace };
    Kind kind = Kind::Pc;
    std::string name;                  // Axiom: schema name; Rule: rule name
    std::vector<int> refs;             // cited line ids (Replace: [host, equiv])
    Subst subst;                       // Axiom only; empty unless subst_given
    bool subst_given = false;
    std::vector<FormulaPtr> conjuncts; // rck template: explicit ψ1…ψn
    std::vector<Path> paths;           // re template / replace: occurrences
};

struct ProofLine {
    int id = 0;
    FormulaPtr formula;
    Justification just;
    std::string paper_line;  // free-form cross-reference, not interpreted
    std::string note;
};

struct Proof {
    enum class Kind { Theorem, DerivedRule };
    std::string name;
    std::string system;
    Kind kind = Kind::Theorem;
    std::vector<FormulaPtr> premises;  // DerivedRule only
    std::vector<ProofLine> lines;
    FormulaPtr conclusion;             // must equal the last line's formula
    std::string provenance;
    std::string notes;
};

struct ProofFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Proof proof_from_json(const std::string& text);
std::string proof_to_json(const Proof& p);

// --------------------------------------------------------------------------
// Rule registry
// --------------------------------------------------------------------------

// Rules registered at runtime, keyed by (system, name).  Lookup walks the
// system's `extends` chain, so a rule derived in V is usable in VC.
class RuleRegistry {
  public:
    // Throws CatalogError on duplicate (system, name).
    void add(const std::string& system, RuleDef def);
    const RuleDef* lookup(const Catalog& cat, const std::string& system,
                          const std::string& name) const;
    // Only rules registered for exactly this system.
    std::vector<const RuleDef*> registered_for(const std::string& system) const;
    std::vector<std::pair<std::string, const RuleDef*>> all() const;
    bool empty() const { return defs_.empty(); }

  private:
    std::map<std::pair<std::string, std::string>, RuleDef> defs_;
};

// --------------------------------------------------------------------------
// Checking
// --------------------------------------------------------------------------

struct LineVerdict {
    int id = 0;
    bool ok = false;
    std::string summary;                  // what was checked / what failed
    std::vector<LineVerdict> expansion;   // replace steps expand here
};

struct CheckReport {
    bool ok = false;
    std::string proof_name;
    std::string system;
    std::vector<LineVerdict> lines;
    std::string failure;  // empty when ok

    // Transitive citation closure: axioms and primitive rules used by this
    // proof directly or through registered rules it cites.
    std::set<std::string> axioms_cited;
    std::set<std::string> primitive_rules_cited;
    std::set<std::string> derived_rules_cited;
    bool pc_used = false;
    bool via_generalized_template = false;  // cited a rule admitted beyond
                                            // its proved arity
};

std::string report_to_json(const CheckReport& r);

CheckReport check_proof(const Proof& proof, const Catalog& cat,
                        const RuleRegistry& reg, const PcConfig& cfg = {});

// Registers a checked proof's conclusion under `name` for its system.
// kind: "rule" (schematic, premises → conclusion), "lemma" (theorem, no
// premises), or "rck-template" (admit the n-ary template the proof's
// conclusion instantiates; marked as generalized).
// Throws CatalogError if the report failed or the kind does not fit.
void register_from_proof(RuleRegistry& reg, const Catalog& cat, const Proof& proof,
                         const CheckReport& report, const std::string& kind,
                         const std::string& name);

// --------------------------------------------------------------------------
// Replacement expansion
// --------------------------------------------------------------------------

// Builds the explicit derivation of  host ↔ host[paths := rhs]  from a line
// (id `equiv_ref`) asserting lhs ↔ rhs, where every path addresses an
// occurrence of lhs in host.  Returned lines are numbered consecutively
// from `first_id` and justified by pc / RCEA / RCEC only; the final line
// concludes the full equivalence.  Throws std::invalid_argument on bad
// paths.
std::vector<ProofLine> derive_replacement(const FormulaPtr& host,
                                          const std::vector<Path>& paths,
                                          const FormulaPtr& lhs,
                                          const FormulaPtr& rhs,
                                          int equiv_ref, int first_id);

}  // namespace condlogic
