// ============================================================================
// condlogic/corpus.hpp — bundled derivation corpus
// ============================================================================
//
// The data directory holds the machine-checked derivation corpus:
//
//   schemas.json    the axiom schema catalog
//   systems.json    primitive rules and the named systems
//   frames/         the four-world separation frame
//   proofs/         one file per derivation
//   manifest.json   check order and registration directives
//
// verify_corpus replays everything from scratch: it checks that the data
// files agree with the compiled-in catalog, that the separation frame has
// exactly the expected condition profile (validating every VC axiom while
// falsifying CA), and then checks every proof in manifest order against a
// fresh registry, registering derived rules and lemmas as directed so that
// later proofs may cite them.
// ============================================================================

#pragma once

#include <string>
#include <vector>

#include "condlogic/catalog.hpp"
#include "condlogic/proofkernel.hpp"
#include "condlogic/semantics.hpp"

namespace condlogic {

struct CorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RegisterSpec {
    std::string kind;  // "", "rule", "lemma", "rck-template"
    std::string name;
};

struct ManifestEntry {
    std::string file;    // relative to the corpus directory
    std::string system;  // cross-checked against the proof file
    RegisterSpec reg;
    std::vector<std::string> uses;  // informational: cited derived rules
};

Catalog load_catalog(const std::string& dir);
std::vector<ManifestEntry> load_manifest(const std::string& dir);

struct StageResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct ProofResult {
    std::string file;
    std::string name;
    std::string system;
    bool ok = false;
    std::string detail;
    CheckReport report;
};

struct CorpusReport {
    bool ok = false;
    std::vector<StageResult> stages;
    std::vector<ProofResult> proofs;
    std::string failure;  // first failure, empty when ok
};

struct CorpusRun {
    Catalog catalog;
    RuleRegistry registry;
    CorpusReport report;
};

// With keep_going, later proofs are still checked after a failure (the run
// is marked failed either way); otherwise checking stops at the first bad
// proof.
CorpusRun run_corpus(const std::string& dir, bool keep_going = false);
CorpusReport verify_corpus(const std::string& dir, bool keep_going = false);
std::string corpus_report_to_json(const CorpusReport& r);

}  // namespace condlogic
