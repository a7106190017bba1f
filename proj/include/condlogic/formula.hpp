// ============================================================================
// condlogic/formula.hpp — syntax of the conditional language
// ============================================================================
//
// The object language is propositional logic plus one binary modality `>`
// (the conditional).  ASCII operators, tightest to loosest:
//
//     ~    negation            (prefix)
//     &    conjunction         (left-associative)
//     |    disjunction         (left-associative)
//     >    conditional         (non-associative)
//     ->   material implication (non-associative)
//     <->  biconditional       (non-associative)
//
// Non-associative means chains like  p>q>r  or  a->b->c  are syntax errors
// and must be disambiguated with parentheses.  Note that `>` binds tighter
// than `->`, so  A>B->C  reads  (A>B)->C  while  A|B>C  reads  (A|B)>C.
//
// Leaves:
//   * lowercase identifiers  [a-z][a-z0-9_]*  are propositional variables;
//   * single uppercase letters  A..Z  are schema metavariables.
//
// A formula containing no metavariable is *ground*.  Axiom schemas and rule
// premises/conclusions are ordinary Formula trees whose leaves may include
// metavariables; instantiation substitutes formulas for metavariables.
//
// There are no truth-value constants and no normalization: two formulas are
// the same only if they are syntactically identical.
// ============================================================================

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace condlogic {

enum class Op : std::uint8_t { Var, MetaVar, Not, And, Or, Imp, Iff, Cond };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable tree node.  `left` is the only child of Not; binary nodes use
// both children; leaves use `name`.
class Formula {
public:
    Op op;
    std::string name;  // Var / MetaVar only
    FormulaPtr left;
    FormulaPtr right;

    Formula(Op o, std::string n, FormulaPtr l, FormulaPtr r)
        : op(o), name(std::move(n)), left(std::move(l)), right(std::move(r)) {}

    static FormulaPtr var(std::string n);
    static FormulaPtr metavar(std::string n);
    static FormulaPtr mk_not(FormulaPtr a);
    static FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
    static FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
    static FormulaPtr mk_imp(FormulaPtr a, FormulaPtr b);
    static FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b);
    static FormulaPtr mk_cond(FormulaPtr a, FormulaPtr b);
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);
std::size_t hash_value(const FormulaPtr& f);

// Structural comparators for ordered containers keyed by formula.
struct FormulaLess {
    bool operator()(const FormulaPtr& a, const FormulaPtr& b) const;
};

// ── Parsing and printing ────────────────────────────────────────────────────

// Raised on malformed input; `pos` is a 0-based offset into the source text.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t p, const std::string& msg)
        : std::runtime_error(msg + " (at offset " + std::to_string(p) + ")"),
          pos(p), message(msg) {}
    std::size_t pos;
    std::string message;
};

// Parses a formula; throws SyntaxError on malformed input.
FormulaPtr parse(std::string_view text);

// Non-throwing variant; returns nullptr and fills `err` on failure.
FormulaPtr try_parse(std::string_view text, std::string* err);

// Prints with the minimal parentheses needed to reparse to the same tree:
// parse(to_string(f)) == f.
std::string to_string(const FormulaPtr& f);

// ── Structure access ────────────────────────────────────────────────────────

// A path addresses a subformula: Left/Right select a binary node's children
// (for `>`: Left = antecedent, Right = consequent), Only selects the child
// of a negation.  The empty path addresses the formula itself.
enum class Step : std::uint8_t { Left, Right, Only };
using Path = std::vector<Step>;

std::string path_to_string(const Path& p);

// Subformula at `path`, or nullptr if the path does not fit the tree.
FormulaPtr subformula_at(const FormulaPtr& f, const Path& path);

// Replaces the subformula at `path` with `repl`; nullptr on a bad path.
FormulaPtr replace_at(const FormulaPtr& f, const Path& path, const FormulaPtr& repl);

// Replaces at several pairwise non-overlapping paths (no path may be a
// prefix of another); nullptr if any path is bad or two paths overlap.
FormulaPtr replace_at_all(const FormulaPtr& f, const std::vector<Path>& paths,
                          const FormulaPtr& repl);

// All paths at which `needle` occurs in `host`, in depth-first order.
std::vector<Path> find_occurrences(const FormulaPtr& host, const FormulaPtr& needle);

// ── Variables, metavariables, substitution ──────────────────────────────────

bool is_ground(const FormulaPtr& f);

// Sorted, duplicate-free.
std::vector<std::string> variables(const FormulaPtr& f);
std::vector<std::string> metavariables(const FormulaPtr& f);

using Subst = std::map<std::string, FormulaPtr>;

// Replaces every metavariable by its image under `s`; throws
// std::out_of_range naming the metavariable if one is unmapped.
FormulaPtr instantiate(const FormulaPtr& schema, const Subst& s);

// One-sided matching: extends `s` so that instantiate(schema, s) == target,
// treating metavariables of `target` as opaque constants.  Returns false
// (leaving `s` in an unspecified state) when no extension exists.  When a
// match exists it is unique.
bool match(const FormulaPtr& schema, const FormulaPtr& target, Subst& s);

// ── Modal atoms ─────────────────────────────────────────────────────────────
//
// For classical-logic reasoning the formula is abstracted over its modal
// atoms: propositional variables, metavariables, and whole conditional
// subformulas (`>`-nodes are not descended into).  Returned in order of
// first occurrence, duplicates removed structurally.
std::vector<FormulaPtr> modal_atoms(const FormulaPtr& f);

// Collects atoms of several formulas into `acc` (first-occurrence order).
void collect_modal_atoms(const FormulaPtr& f, std::vector<FormulaPtr>& acc);

}  // namespace condlogic
