#include <catch2/catch.hpp>

#include <random>
#include <sstream>

#include "helpers.hpp"
#include "pivotal/files.hpp"
#include "pivotal/formula.hpp"

using namespace pivotal;
using pivotal::testing::random_formula;

TEST_CASE("parse builds the expected trees") {
    Formula f = parse("~r | p");
    REQUIRE(f.kind() == FormulaKind::Or);
    REQUIRE(f.left().kind() == FormulaKind::Not);
    REQUIRE(f.left().child().name() == "r");
    REQUIRE(f.right().name() == "p");

    Formula g = parse("p & ~p");
    REQUIRE(g.kind() == FormulaKind::And);
    REQUIRE(g.left().name() == "p");
    REQUIRE(g.right().kind() == FormulaKind::Not);

    Formula h = parse("~(r | q)");
    REQUIRE(h.kind() == FormulaKind::Not);
    REQUIRE(h.child().kind() == FormulaKind::Or);

    REQUIRE(parse("true").kind() == FormulaKind::True);
    REQUIRE(parse("false").kind() == FormulaKind::False);
}

TEST_CASE("negation binds tighter than conjunction, conjunction than disjunction") {
    Formula f = parse("a | b & c");
    REQUIRE(f.kind() == FormulaKind::Or);
    REQUIRE(f.left().name() == "a");
    REQUIRE(f.right().kind() == FormulaKind::And);

    Formula g = parse("~a & b");
    REQUIRE(g.kind() == FormulaKind::And);
    REQUIRE(g.left().kind() == FormulaKind::Not);

    // left associativity
    Formula h = parse("a | b | c");
    REQUIRE(h.kind() == FormulaKind::Or);
    REQUIRE(h.left().kind() == FormulaKind::Or);
    REQUIRE(h.right().name() == "c");
}

TEST_CASE("print uses minimal parentheses") {
    CHECK(print(Formula::neg(Formula::atom("p"))) == "~p");
    CHECK(print(Formula::disj(Formula::conj(Formula::atom("p"), Formula::atom("q")),
                              Formula::atom("r"))) == "p & q | r");
    CHECK(print(Formula::conj(Formula::disj(Formula::atom("p"), Formula::atom("q")),
                              Formula::atom("r"))) == "(p | q) & r");
    // a right operand of the same connective keeps its parentheses
    CHECK(print(Formula::disj(Formula::atom("a"),
                              Formula::disj(Formula::atom("b"), Formula::atom("c")))) ==
          "a | (b | c)");
    CHECK(print(Formula::neg(Formula::neg(Formula::atom("p")))) == "~~p");
}

TEST_CASE("printing then parsing is the identity on random formulas") {
    std::mt19937 rng(7001);
    const std::vector<std::string> atoms{"a", "b", "c"};
    for (int i = 0; i < 1000; ++i) {
        Formula f = random_formula(rng, atoms, 6);
        REQUIRE(parse(print(f)) == f);
    }
}

TEST_CASE("parse errors carry positions") {
    REQUIRE_THROWS_AS(parse("p |"), parse_error);
    REQUIRE_THROWS_AS(parse("(p"), parse_error);
    REQUIRE_THROWS_AS(parse(""), parse_error);
    try {
        parse("p $ q");
        FAIL("expected a parse error");
    } catch (const parse_error& e) {
        CHECK(e.position == 2);
    }
    try {
        parse("p q");
        FAIL("expected a parse error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("trailing") != std::string::npos);
    }
}

TEST_CASE("structural equality ignores sharing, not shape") {
    Formula a = parse("p & (q | r)");
    Formula b = parse("p & (q | r)");
    Formula c = parse("(p & q) | r");
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("disjoin_sets forms all pairwise disjunctions") {
    Formula p = parse("p"), q = parse("q"), r = parse("r");
    FormulaList pq = disjoin_sets({p}, {q});
    REQUIRE(pq.size() == 1);
    CHECK(pq[0] == Formula::disj(p, q));

    CHECK(disjoin_sets({}, {q}).empty());
    CHECK(disjoin_sets({p}, {}).empty());

    FormulaList out = disjoin_sets({p, q}, {r});
    REQUIRE(out.size() == 2);
    CHECK(contains_formula(out, Formula::disj(p, r)));
    CHECK(contains_formula(out, Formula::disj(q, r)));

    // duplicates collapse structurally
    CHECK(disjoin_sets({p, p}, {q}).size() == 1);
}

TEST_CASE("formula files skip comments and blank lines") {
    std::istringstream in(
        "# premises\n"
        "\n"
        "p & q   # trailing comment\n"
        "~r\n");
    FormulaList fs = read_formula_lines(in);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0] == parse("p & q"));
    CHECK(fs[1] == parse("~r"));
}
