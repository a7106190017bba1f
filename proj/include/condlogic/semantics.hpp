// ============================================================================
// condlogic/semantics.hpp — finite selection-function frames and models
// ============================================================================
//
// A frame is a finite set of worlds W together with a total selection
// function  g : W × P(W) → P(W).  A model adds a valuation V mapping each
// propositional variable to a subset of W.  Truth:
//
//     w ⊨ p          iff  w ∈ V(p)
//     w ⊨ φ>ψ        iff  g(w, [φ]) ⊆ [ψ]        ([·] = truth set)
//     boolean connectives as usual.
//
// Worlds are indexed 0..n-1 (with user-visible names); subsets of W are
// bitmasks (bit i = world i).  Frames are capped at 16 worlds so a mask
// fits in 32 bits and the selection table (n·2^n entries) stays small.
//
// Validity of a *formula* quantifies the valuation over all subsets of W;
// validity of a *schema* additionally assigns arbitrary subsets of W to
// metavariables (the metavariable leaves evaluate directly to their
// assigned sets).  All enumeration is deterministic: names in sorted
// order, assignments counted in binary with the last name varying fastest,
// worlds in declared order — so the first witness found is reproducible.
// ============================================================================

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "condlogic/formula.hpp"

namespace condlogic {

using Mask = std::uint32_t;

constexpr int kMaxFrameWorlds = 16;

// ── Frame ───────────────────────────────────────────────────────────────────

class Frame {
public:
    // Worlds named "0","1",... with identity selection table (g(w,X)=X);
    // use set_selection to fill in.
    static Frame make(int n);
    static Frame make(std::vector<std::string> world_names);

    int size() const { return n_; }
    const std::vector<std::string>& world_names() const { return names_; }
    Mask full() const { return n_ == 32 ? ~Mask(0) : ((Mask(1) << n_) - 1); }

    Mask g(int w, Mask x) const { return sel_[index(w, x)]; }
    void set_selection(int w, Mask x, Mask out) { sel_[index(w, x)] = out; }

    // World index by name; -1 if unknown.
    int world_index(const std::string& name) const;

    bool operator==(const Frame& o) const {
        return names_ == o.names_ && sel_ == o.sel_;
    }

private:
    std::size_t index(int w, Mask x) const {
        return static_cast<std::size_t>(w) * (std::size_t(1) << n_) + x;
    }
    int n_ = 0;
    std::vector<std::string> names_;
    std::vector<Mask> sel_;
};

// The four-world frame used to separate CA: worlds {0,1,2,3}, and with
// A = {1,2}, B = {1,3}:
//     g(i,X) = {1}  if X = A and i = 0,
//              {i}  if i ∈ X,
//              X    otherwise.
Frame lewis_g();

// g(w,X) = {w} ∩ X on n worlds (the conditional collapses to material
// implication); handy as a trivially well-behaved frame.
Frame material_frame(int n);

// ── Frame JSON I/O ──────────────────────────────────────────────────────────
//
// {"worlds": ["0","1",...],
//  "selection": [{"w": "0", "set": ["1","2"], "out": ["1"]}, ...]}
//
// The selection list must contain exactly one entry per (world, subset)
// pair — |W| · 2^|W| in total; missing or duplicate entries are errors.
class FrameFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Frame frame_from_json(const std::string& json_text);
std::string frame_to_json(const Frame& fr);

// Resolves "builtin:lewis-g" / "builtin:material-<n>" or reads a file.
Frame load_frame(const std::string& spec_text);

// ── Truth sets and validity ─────────────────────────────────────────────────

using Valuation = std::map<std::string, Mask>;  // variable → subset
using MetaAssign = std::map<std::string, Mask>; // metavariable → subset

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Truth set of `f` as a mask.  Every variable must be mapped by `v` and
// every metavariable by `m`, otherwise EvalError.
Mask truth_set(const Frame& fr, const Valuation& v, const MetaAssign& m,
               const FormulaPtr& f);
Mask truth_set(const Frame& fr, const Valuation& v, const FormulaPtr& f);

// A falsifying assignment: subsets for every free name (variables and
// metavariables merged into one map) plus the world where `f` fails.
struct Witness {
    std::map<std::string, Mask> assignment;
    int world = 0;
};

// nullopt = valid on the frame.  Otherwise the first witness in the
// deterministic enumeration order described above.
std::optional<Witness> formula_valid_on_frame(const Frame& fr, const FormulaPtr& f);
std::optional<Witness> schema_valid_on_frame(const Frame& fr, const FormulaPtr& schema);

// ── Frame conditions ────────────────────────────────────────────────────────
//
//   id    g(i,X) ⊆ X
//   mod   g(i,X) ∩ X = ∅  ⟹  g(i,Y) ∩ X = ∅
//   mod'  g(i,W−X) ∩ (W−X) = ∅  ⟹  g(i,Y) ∩ (W−X) = ∅
//   cv    g(i,X) ∩ Y ≠ ∅  ⟹  g(i,X∩Y) ⊆ g(i,X)
//   cso   g(i,X) ⊆ Y and g(i,Y) ⊆ X  ⟹  g(i,X) = g(i,Y)
//   cent  i ∈ X  ⟹  g(i,X) = {i}
//   ca    g(i,X∪Y) ⊆ g(i,X) ∪ g(i,Y)
//   sda   g(i,X) ∪ g(i,Y) ⊆ g(i,X∪Y)
//
// (mod) is stated here with the antecedent "g(i,X) selects no X-world".
// On frames satisfying (id) — in particular wherever the source
// construction evaluates it — this coincides with the bare emptiness test
// g(i,X) = ∅, and in general it is exactly the condition matching the
// schema MOD on arbitrary frames.  (mod') is the same condition with the
// set argument complemented, matching MOD'.
enum class Condition { Id, Mod, ModPrime, Cv, Cso, Cent, Ca, Sda };

const char* condition_name(Condition c);
std::optional<Condition> condition_from_name(const std::string& name);
std::vector<Condition> all_conditions();

struct ConditionWitness {
    int world = 0;
    Mask x = 0;
    std::optional<Mask> y;  // set for binary conditions
};

// nullopt = condition holds.  First witness in deterministic order
// (worlds in declared order, subsets in binary-counting order, X outer).
std::optional<ConditionWitness> check_condition(const Frame& fr, Condition c);

// ── Rule preservation ───────────────────────────────────────────────────────
//
// A rule with schema premises S1..Sm and schema conclusion T is preserved
// on a frame if for every subset assignment under which all premises are
// valid (true at every world), the conclusion is valid too.  nullopt =
// preserved; otherwise the first failing assignment and world.
std::optional<Witness> rule_preserved_on_frame(const Frame& fr,
                                               const std::vector<FormulaPtr>& premises,
                                               const FormulaPtr& conclusion);

// ── Correspondence ──────────────────────────────────────────────────────────
//
// Checks that a frame condition and a schema are valid on exactly the same
// frames of a given size: exhaustively for size ≤ 2, by seeded sampling
// for larger sizes.  Frames of size n are enumerated by filling the
// selection table in row order (world-major, subsets in binary order),
// counting through output masks with the last entry varying fastest.
struct CorrespondenceReport {
    std::uint64_t frames_checked = 0;
    std::uint64_t violations = 0;
    std::vector<Frame> examples;  // at most 5 violating frames
};

CorrespondenceReport correspondence_check(int size, Condition c, const FormulaPtr& schema,
                                          std::uint64_t samples = 0,
                                          std::uint64_t seed = 0);

// Helpers shared with tests: pretty-print a mask as {names}.
std::string mask_to_string(const Frame& fr, Mask m);

}  // namespace condlogic
