// ============================================================================
// test_modelsearch.cpp — countermodel search
// ============================================================================
//
// The headline search — falsify CA inside the class satisfying id, mod, cv,
// cso, cent — must come up empty through size 3 and succeed at size 4; the
// unseeded winner is pinned below as a regression value and independently
// re-verified from scratch.  Small-size searches are cross-checked against
// explicit enumeration of every frame.
// ============================================================================

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "condlogic/catalog.hpp"
#include "condlogic/modelsearch.hpp"

using namespace condlogic;

namespace {

const std::vector<Condition> kSeparationClass = {
    Condition::Id, Condition::Mod, Condition::Cv, Condition::Cso, Condition::Cent};

FormulaPtr ca_body() { return builtin_catalog().find_schema("CA")->body; }

SearchSpec ca_spec(int max_worlds) {
    SearchSpec spec;
    spec.max_worlds = max_worlds;
    spec.conditions = kSeparationClass;
    spec.target = ca_body();
    return spec;
}

// Every frame of size n, by filling the selection table in row order; used
// only for tiny n.
template <typename Fn>
void for_each_frame(int n, Fn&& fn) {
    const int entries = n << n;            // n · 2^n
    const Mask top = (Mask(1) << n) - 1;
    std::vector<Mask> table(entries, 0);
    for (;;) {
        Frame fr = Frame::make(n);
        int k = 0;
        for (int w = 0; w < n; ++w)
            for (Mask x = 0; x <= top; ++x) fr.set_selection(w, x, table[k++]);
        fn(fr);
        int i = entries - 1;
        while (i >= 0 && table[i] == top) table[i--] = 0;
        if (i < 0) break;
        ++table[i];
    }
}

bool satisfies_all(const Frame& fr, const std::vector<Condition>& cs) {
    for (Condition c : cs)
        if (check_condition(fr, c).has_value()) return false;
    return true;
}

}  // namespace

TEST_CASE("search results agree with explicit enumeration at size one") {
    // Target A>A with no class restriction: a frame of size 1 falsifies it
    // exactly when g(0,∅) = {0}.  Of the four one-world frames, two do.
    SearchSpec spec;
    spec.max_worlds = 1;
    spec.target = parse("A>A");
    auto res = find_countermodel(spec);
    REQUIRE(res.status == SearchStatus::Found);
    REQUIRE(res.frame.has_value());
    CHECK(res.worlds == 1);
    CHECK(res.frame->g(0, 0) == 1);

    int direct = 0;
    for_each_frame(1, [&](const Frame& fr) {
        if (schema_valid_on_frame(fr, parse("A>A")).has_value()) ++direct;
    });
    CHECK(direct == 2);

    // Restricting to the id class leaves nothing: A>A corresponds to id.
    spec.conditions = {Condition::Id};
    spec.max_worlds = 2;
    auto empty = find_countermodel(spec);
    CHECK(empty.status == SearchStatus::Exhausted);
    CHECK(empty.worlds == 2);

    int direct2 = 0;
    for_each_frame(2, [&](const Frame& fr) {
        if (satisfies_all(fr, {Condition::Id}) &&
            schema_valid_on_frame(fr, parse("A>A")).has_value())
            ++direct2;
    });
    CHECK(direct2 == 0);
}

TEST_CASE("search agrees with enumeration on a two-world class") {
    // CS on frames satisfying id but not cent: countermodels exist at size 2.
    SearchSpec spec;
    spec.max_worlds = 2;
    spec.conditions = {Condition::Id};
    spec.target = builtin_catalog().find_schema("CS")->body;
    auto res = find_countermodel(spec);
    REQUIRE(res.status == SearchStatus::Found);
    std::string why;
    CHECK_MESSAGE(verify_countermodel(*res.frame, spec.conditions, spec.target,
                                      *res.witness, &why), why);

    int direct = 0;
    for_each_frame(2, [&](const Frame& fr) {
        if (satisfies_all(fr, {Condition::Id}) &&
            schema_valid_on_frame(fr, spec.target).has_value())
            ++direct;
    });
    CHECK(direct > 0);

    // Adding cent removes them all (CS corresponds to centering with cmp).
    spec.conditions = {Condition::Id, Condition::Cent};
    auto gone = find_countermodel(spec);
    CHECK(gone.status == SearchStatus::Exhausted);
}

TEST_CASE("CA has no countermodel in the separation class below four worlds") {
    auto res = find_countermodel(ca_spec(3));
    CHECK(res.status == SearchStatus::Exhausted);
    CHECK(res.worlds == 3);
    CHECK(res.nodes > 0);
}

TEST_CASE("CA countermodel found and verified at four worlds") {
    auto res = find_countermodel(ca_spec(4));
    REQUIRE(res.status == SearchStatus::Found);
    CHECK(res.worlds == 4);
    REQUIRE(res.frame.has_value());
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->world == 0);

    std::string why;
    CHECK_MESSAGE(verify_countermodel(*res.frame, kSeparationClass, ca_body(),
                                      *res.witness, &why), why);

    // Regression pin for the deterministic unseeded run: the assignment the
    // search reports first.  (Validity of the pin is established by the
    // verify_countermodel call above, not by trusting the search.)
    CHECK(res.witness->assignment.at("A") == 0b1100);  // {2,3}
    CHECK(res.witness->assignment.at("B") == 0b0010);  // {1}
    CHECK(res.witness->assignment.at("C") == 0b0110);  // {1,2}
}

TEST_CASE("budgets are enforced and results monotone in the budget") {
    auto full = find_countermodel(ca_spec(4));
    REQUIRE(full.status == SearchStatus::Found);
    REQUIRE(full.nodes > 100);

    auto starved = ca_spec(4);
    starved.budget = 100;
    auto res = find_countermodel(starved);
    CHECK(res.status == SearchStatus::BudgetExceeded);
    CHECK(res.nodes <= 100);

    // Exactly the consumed budget suffices and reproduces the same frame.
    auto exact = ca_spec(4);
    exact.budget = full.nodes;
    auto res2 = find_countermodel(exact);
    REQUIRE(res2.status == SearchStatus::Found);
    CHECK(*res2.frame == *full.frame);
    CHECK(res2.nodes == full.nodes);
}

TEST_CASE("seeded runs are reproducible and still verified") {
    auto a = ca_spec(4);
    a.seed = 12345;
    auto r1 = find_countermodel(a);
    auto r2 = find_countermodel(a);
    REQUIRE(r1.status == SearchStatus::Found);
    REQUIRE(r2.status == SearchStatus::Found);
    CHECK(*r1.frame == *r2.frame);
    CHECK(r1.nodes == r2.nodes);

    auto b = ca_spec(4);
    b.seed = 99;
    auto r3 = find_countermodel(b);
    REQUIRE(r3.status == SearchStatus::Found);
    std::string why;
    CHECK_MESSAGE(verify_countermodel(*r3.frame, kSeparationClass, ca_body(),
                                      *r3.witness, &why), why);
}

TEST_CASE("verify_countermodel rejects tampered claims") {
    auto res = find_countermodel(ca_spec(4));
    REQUIRE(res.status == SearchStatus::Found);

    std::string why;
    // Wrong world.
    Witness w = *res.witness;
    w.world = (w.world + 1) % res.frame->size();
    bool moved = verify_countermodel(*res.frame, kSeparationClass, ca_body(), w, &why);
    // The frame may falsify CA at several worlds; what matters is that a
    // genuinely broken claim is caught:
    Witness empty;
    empty.world = 0;  // no assignment at all
    CHECK(!verify_countermodel(*res.frame, kSeparationClass, ca_body(), empty, &why));
    CHECK(!why.empty());

    // A frame outside the class is rejected whatever the witness says.
    Frame bad = *res.frame;
    bad.set_selection(0, 1, bad.full());  // break id: g(0,{0}) ⊄ {0}
    CHECK(!verify_countermodel(bad, kSeparationClass, ca_body(), *res.witness, &why));
    CHECK(!why.empty());
    (void)moved;
}

TEST_CASE("malformed specs are rejected") {
    SearchSpec spec;  // no target
    CHECK_THROWS_AS(find_countermodel(spec), std::invalid_argument);
    spec.target = parse("A>A");
    spec.max_worlds = 0;
    CHECK_THROWS_AS(find_countermodel(spec), std::invalid_argument);
    spec.max_worlds = kMaxSearchWorlds + 1;
    CHECK_THROWS_AS(find_countermodel(spec), std::invalid_argument);
}

TEST_CASE("status names are stable") {
    CHECK(std::string(search_status_name(SearchStatus::Found)) == "found");
    CHECK(std::string(search_status_name(SearchStatus::Exhausted)) == "exhausted");
    CHECK(std::string(search_status_name(SearchStatus::BudgetExceeded)) ==
          "budget-exceeded");
}
