// ============================================================================
// condlogic/modelsearch.hpp — countermodel search over frame classes
// ============================================================================
//
// Searches for a finite selection frame inside a condition-defined class
// that falsifies a target schema.  Sizes are tried in increasing order, so
// a Found result is at the smallest size the search can reach and an
// Exhausted result is a finite refutation: no frame of any tried size in
// the class falsifies the target.
//
// The search enumerates selection tables depth-first, one (world, subset)
// entry at a time, with three prunings:
//
//   * entry domains are pre-restricted by the class (id keeps only subsets
//     of the argument, cent pins g(w,X) to {w} when w ∈ X);
//   * every class condition is re-checked incrementally over the decided
//     entries of the current world;
//   * the target is evaluated in three-valued fashion under the partial
//     table; a branch is abandoned once the target is settled true at the
//     anchor world under every atom assignment.
//
// Frame classes and targets here are closed under world renaming, so the
// falsifying world can be normalized to w0; witnesses always report it.
// The node budget makes results monotone: anything Found within a budget
// is Found with any larger one.
// ============================================================================

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "condlogic/formula.hpp"
#include "condlogic/semantics.hpp"

namespace condlogic {

inline constexpr int kMaxSearchWorlds = 5;

struct SearchSpec {
    int max_worlds = 4;                 // 1..kMaxSearchWorlds
    std::vector<Condition> conditions;  // the frame class
    FormulaPtr target;                  // schema to falsify
    std::uint64_t budget = 5'000'000;   // elementary steps (entry assignments
                                        // and anchor evaluations), all sizes
    std::optional<std::uint64_t> seed;  // shuffles per-entry value order
};

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

const char* search_status_name(SearchStatus s);

struct SearchResult {
    SearchStatus status = SearchStatus::Exhausted;
    std::optional<Frame> frame;      // Found only
    std::optional<Witness> witness;  // Found only; witness.world == 0
    int worlds = 0;                  // size found at / last size attempted
    std::uint64_t nodes = 0;         // budget consumed
};

// Re-checks a claimed countermodel from scratch: every condition holds on
// the frame and the target is false at the witness world under the witness
// assignment.
bool verify_countermodel(const Frame& frame, const std::vector<Condition>& conditions,
                         const FormulaPtr& target, const Witness& witness,
                         std::string* why = nullptr);

// Throws std::invalid_argument on a malformed spec (no target, size out of
// range).  Found results are always verified before being returned.
SearchResult find_countermodel(const SearchSpec& spec);

}  // namespace condlogic
