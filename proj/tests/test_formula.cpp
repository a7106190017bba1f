// ============================================================================
// test_formula.cpp — grammar, printing, structure access, substitution
// ============================================================================
//
// The precedence and associativity oracles below are hand-computed from the
// grammar:  ~  binds tightest, then  &  |  >  ->  <->  in that order;  & and
// |  are left-associative;  >  ->  <->  are non-associative.  Expected trees
// are built with the factory functions, never by reparsing.
// ============================================================================

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "condlogic/formula.hpp"

using namespace condlogic;

namespace {

FormulaPtr v(const char* n) { return Formula::var(n); }
FormulaPtr M(const char* n) { return Formula::metavar(n); }

// Random ground formula over a fixed variable pool, depth-bounded.  Used
// for the print/parse round-trip property.
FormulaPtr random_formula(std::mt19937& rng, int depth) {
    static const char* pool[] = {"p", "q", "r", "s_1", "longname"};
    std::uniform_int_distribution<int> leaf(0, 4);
    if (depth == 0) return v(pool[leaf(rng)]);
    std::uniform_int_distribution<int> pick(0, 6);
    switch (pick(rng)) {
        case 0: return v(pool[leaf(rng)]);
        case 1: return Formula::mk_not(random_formula(rng, depth - 1));
        case 2: return Formula::mk_and(random_formula(rng, depth - 1),
                                       random_formula(rng, depth - 1));
        case 3: return Formula::mk_or(random_formula(rng, depth - 1),
                                      random_formula(rng, depth - 1));
        case 4: return Formula::mk_imp(random_formula(rng, depth - 1),
                                       random_formula(rng, depth - 1));
        case 5: return Formula::mk_iff(random_formula(rng, depth - 1),
                                       random_formula(rng, depth - 1));
        default: return Formula::mk_cond(random_formula(rng, depth - 1),
                                         random_formula(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("precedence: unary and boolean connectives") {
    CHECK(equal(parse("~a&b"), Formula::mk_and(Formula::mk_not(v("a")), v("b"))));
    CHECK(equal(parse("~~a"), Formula::mk_not(Formula::mk_not(v("a")))));
    CHECK(equal(parse("a&b|c"), Formula::mk_or(Formula::mk_and(v("a"), v("b")), v("c"))));
    CHECK(equal(parse("a|b&c"), Formula::mk_or(v("a"), Formula::mk_and(v("b"), v("c")))));
    // Left associativity.
    CHECK(equal(parse("a&b&c"), Formula::mk_and(Formula::mk_and(v("a"), v("b")), v("c"))));
    CHECK(equal(parse("a|b|c"), Formula::mk_or(Formula::mk_or(v("a"), v("b")), v("c"))));
}

TEST_CASE("precedence: conditional sits between | and ->") {
    // a|b>c  reads  (a|b)>c  — the boolean connectives bind tighter.
    CHECK(equal(parse("a|b>c"), Formula::mk_cond(Formula::mk_or(v("a"), v("b")), v("c"))));
    CHECK(equal(parse("a&b>c"), Formula::mk_cond(Formula::mk_and(v("a"), v("b")), v("c"))));
    // a>b->c  reads  (a>b)->c  — the material arrow is looser.
    CHECK(equal(parse("a>b->c"),
                Formula::mk_imp(Formula::mk_cond(v("a"), v("b")), v("c"))));
    CHECK(equal(parse("a->b<->c"),
                Formula::mk_iff(Formula::mk_imp(v("a"), v("b")), v("c"))));
    // The consequent of > cannot swallow an arrow without parentheses.
    CHECK(equal(parse("a>(b->c)"),
                Formula::mk_cond(v("a"), Formula::mk_imp(v("b"), v("c")))));
}

TEST_CASE("non-associative operators reject chains") {
    CHECK_THROWS_AS(parse("a>b>c"), SyntaxError);
    CHECK_THROWS_AS(parse("a->b->c"), SyntaxError);
    CHECK_THROWS_AS(parse("a<->b<->c"), SyntaxError);
    // Parenthesized forms are fine.
    CHECK_NOTHROW(parse("(a>b)>c"));
    CHECK_NOTHROW(parse("a>(b>c)"));
    CHECK_NOTHROW(parse("(a->b)->c"));
}

TEST_CASE("malformed input reports a position") {
    try {
        parse("a &");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.pos <= 3);
        CHECK(!e.message.empty());
    }
    CHECK_THROWS_AS(parse(""), SyntaxError);
    CHECK_THROWS_AS(parse("(a"), SyntaxError);
    CHECK_THROWS_AS(parse("a b"), SyntaxError);
    CHECK_THROWS_AS(parse("a >"), SyntaxError);
    CHECK_THROWS_AS(parse("AB"), SyntaxError);   // metavariables are single letters
    CHECK_THROWS_AS(parse("Foo"), SyntaxError);

    std::string err;
    CHECK(try_parse("a > > b", &err) == nullptr);
    CHECK(!err.empty());
    CHECK(try_parse("a>b", &err) != nullptr);
}

TEST_CASE("variables vs metavariables") {
    auto f = parse("A&b>c_1|Z");
    CHECK(variables(f) == std::vector<std::string>{"b", "c_1"});
    CHECK(metavariables(f) == std::vector<std::string>{"A", "Z"});
    CHECK(!is_ground(f));
    CHECK(is_ground(parse("b&c_1")));
}

TEST_CASE("printing uses minimal parentheses") {
    CHECK(to_string(parse("(a&b)|c")) == "a&b|c");
    CHECK(to_string(parse("a&(b|c)")) == "a&(b|c)");
    CHECK(to_string(parse("(a|b)>c")) == "a|b>c");
    CHECK(to_string(parse("(a>b)->c")) == "a>b->c");
    CHECK(to_string(parse("a>(b->c)")) == "a>(b->c)");
    CHECK(to_string(parse("~(a&b)")) == "~(a&b)");
    CHECK(to_string(parse("~a&b")) == "~a&b");
    // Non-associative operators keep explicit parentheses on nested sides.
    CHECK(to_string(parse("(a>b)>c")) == "(a>b)>c");
    CHECK(to_string(parse("a>(b>c)")) == "a>(b>c)");
}

TEST_CASE("print/parse round-trip on random formulas") {
    std::mt19937 rng(20240811);
    for (int i = 0; i < 500; ++i) {
        auto f = random_formula(rng, 5);
        auto back = parse(to_string(f));
        CHECK(equal(f, back));
    }
}

TEST_CASE("structural equality and ordering") {
    CHECK(equal(parse("a&b"), parse("a&b")));
    CHECK(!equal(parse("a&b"), parse("b&a")));      // syntactic identity only
    CHECK(!equal(parse("a"), parse("A")));          // var vs metavar
    CHECK(hash_value(parse("a|b>c")) == hash_value(parse("(a|b)>c")));
    FormulaLess less;
    auto x = parse("a"), y = parse("b");
    CHECK(less(x, y) != less(y, x));
    CHECK(!less(x, x));
}

TEST_CASE("paths address subformulas") {
    auto f = parse("(a>b)->~c");
    CHECK(equal(subformula_at(f, {}), f));
    CHECK(equal(subformula_at(f, {Step::Left}), parse("a>b")));
    CHECK(equal(subformula_at(f, {Step::Left, Step::Right}), parse("b")));
    CHECK(equal(subformula_at(f, {Step::Right, Step::Only}), parse("c")));
    CHECK(subformula_at(f, {Step::Right, Step::Left}) == nullptr);  // ~ has one child
    CHECK(subformula_at(f, {Step::Left, Step::Left, Step::Left}) == nullptr);

    auto g = replace_at(f, {Step::Left, Step::Left}, parse("d|e"));
    CHECK(equal(g, parse("(d|e>b)->~c")));
    CHECK(replace_at(f, {Step::Only}, parse("d")) == nullptr);
}

TEST_CASE("replace_at_all rejects overlapping paths") {
    auto f = parse("(a&a)->a");
    std::vector<Path> occ = find_occurrences(f, parse("a"));
    REQUIRE(occ.size() == 3);
    // Depth-first order: left conjunct, right conjunct, consequent.
    CHECK(occ[0] == Path{Step::Left, Step::Left});
    CHECK(occ[1] == Path{Step::Left, Step::Right});
    CHECK(occ[2] == Path{Step::Right});

    auto g = replace_at_all(f, occ, parse("b"));
    CHECK(equal(g, parse("(b&b)->b")));

    std::vector<Path> overlap = {{Step::Left}, {Step::Left, Step::Right}};
    CHECK(replace_at_all(f, overlap, parse("b")) == nullptr);
    CHECK(path_to_string(occ[0]) != path_to_string(occ[1]));
}

TEST_CASE("instantiate substitutes metavariables") {
    Subst s;
    s["A"] = parse("p|q");
    s["B"] = parse("r");
    auto inst = instantiate(parse("(A>B)->(A>A)"), s);
    CHECK(equal(inst, parse("(p|q>r)->(p|q>p|q)")));
    // Unmapped metavariable is an error.
    Subst partial;
    partial["A"] = parse("p");
    CHECK_THROWS_AS(instantiate(parse("A&B"), partial), std::out_of_range);
    // Variables pass through untouched.
    CHECK(equal(instantiate(parse("a&b"), s), parse("a&b")));
}

TEST_CASE("match is one-sided and unique") {
    Subst s;
    REQUIRE(match(parse("(A>B)&(A>C)"), parse("(p>q)&(p>r|s)"), s));
    CHECK(equal(s["A"], parse("p")));
    CHECK(equal(s["B"], parse("q")));
    CHECK(equal(s["C"], parse("r|s")));

    // Inconsistent reuse of a metavariable fails.
    Subst t;
    CHECK(!match(parse("(A>B)&(A>C)"), parse("(p>q)&(r>q)"), t));

    // Pre-seeded bindings constrain the match.
    Subst u;
    u["A"] = parse("p");
    CHECK(!match(parse("A&B"), parse("q&r"), u));

    // Metavariables in the target are opaque constants: A matches A...
    Subst w;
    REQUIRE(match(parse("A>A"), parse("B>B"), w));
    CHECK(equal(w["A"], parse("B")));
    // ...but a non-metavariable schema node never matches one.
    Subst x;
    CHECK(!match(parse("~A"), parse("B"), x));
}

TEST_CASE("modal atoms treat conditionals as opaque") {
    auto f = parse("((p>q)->p&(p>q))|~r");
    auto atoms = modal_atoms(f);
    REQUIRE(atoms.size() == 3);
    // First-occurrence order, structural deduplication.
    CHECK(equal(atoms[0], parse("p>q")));
    CHECK(equal(atoms[1], parse("p")));
    CHECK(equal(atoms[2], parse("r")));

    // Nothing inside a conditional is collected.
    auto g = parse("(a&b)>(c|d)");
    auto ga = modal_atoms(g);
    REQUIRE(ga.size() == 1);
    CHECK(equal(ga[0], g));

    std::vector<FormulaPtr> acc;
    collect_modal_atoms(parse("p&q"), acc);
    collect_modal_atoms(parse("q|s"), acc);
    REQUIRE(acc.size() == 3);
    CHECK(equal(acc[2], parse("s")));
}
