#include "balk1/starpoly.hpp"
#include "balk1/suite.hpp"

#include <doctest.h>

#include <random>

using namespace balk1;
using namespace balk1::starpoly;

namespace {

// Random polynomial with small Gaussian-rational coefficients over words of length <= 3.
StarPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> len(0, 3), letter(0, 3), coef(-3, 3), nterms(1, 4), cent(0, 2);
    StarPoly p;
    for (int t = nterms(rng); t > 0; --t) {
        Monomial m;
        for (int k = len(rng); k > 0; --k) m.word.push_back(static_cast<Letter>(letter(rng)));
        m.centrals = {cent(rng) % 2, cent(rng)};
        p.add_term(m, GaussRational(coef(rng), coef(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("parser basics") {
    CHECK(parse("a b* - b* a") == parse("a·b† − b∗·a"));
    CHECK(parse("(a + b)^2") == parse("a a + a b + b a + b b"));
    CHECK(parse("(a b)*") == parse("b* a*"));
    CHECK(parse("a^*") == parse("a*"));
    CHECK(parse("2 i a - 1/2") == parse("-1/2 + 2i a"));
    CHECK(parse("s c") == parse("c s"));  // centrals commute
    CHECK(parse("0").is_zero());
    CHECK(parse("a - a").is_zero());
}

TEST_CASE("matrix literals and broadcasting") {
    const auto m = parse_matrix("[[c, -s], [s, c]]* [[c, -s], [s, c]]");
    REQUIRE(m.rows() == 2);
    const std::vector<StarPoly> circle{circle_relation()};
    CHECK(reduce_central(m(0, 0), circle) == StarPoly(1));
    CHECK(reduce_central(m(0, 1), circle).is_zero());
    const auto n = parse_matrix("1 + [[a, 0], [0, b]]");
    CHECK(n(0, 0) == parse("1 + a"));
    CHECK(n(0, 1).is_zero());
    CHECK_THROWS_AS(parse_matrix("[[a, b]] [[a, b]]"), ShapeError);
    CHECK_THROWS_AS(parse("[[a, 0], [0, b]]"), ParseError);  // matrix where a scalar is required
}

TEST_CASE("parse errors carry the position") {
    try {
        parse("a + (b");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 6);
    }
    CHECK_THROWS_AS(parse("a + % b"), ParseError);
    CHECK_THROWS_AS(parse("x"), ParseError);
    CHECK_THROWS_AS(parse("a^-1"), ParseError);
}

TEST_CASE("definitions") {
    Definitions defs;
    defs.emplace("w", parse_matrix("1 + b*(a - b)"));
    CHECK(parse("w* w", defs) == parse("(1 + b*(a - b))* (1 + b*(a - b))"));
}

TEST_CASE("print then parse is the identity") {
    std::mt19937 rng(7);
    for (int k = 0; k < 200; ++k) {
        const StarPoly p = random_poly(rng);
        CAPTURE(p.str());
        CHECK(parse(p.str()) == p);
    }
}

TEST_CASE("the adjoint is an involutive anti-homomorphism") {
    std::mt19937 rng(11);
    for (int k = 0; k < 200; ++k) {
        const StarPoly p = random_poly(rng), q = random_poly(rng);
        CHECK(p.adjoint().adjoint() == p);
        CHECK((p * q).adjoint() == q.adjoint() * p.adjoint());
        CHECK((p + q).adjoint() == p.adjoint() + q.adjoint());
        // conjugate-linear: (i p)* = -i p*
        CHECK((p * GaussRational::imag_unit()).adjoint() == p.adjoint() * GaussRational(0, -1));
    }
}

TEST_CASE("relation sets") {
    const auto r1 = rel1();
    REQUIRE(r1.generators.size() == 4);
    CHECK(r1.generators[0] == parse("a* a - b* b"));
    CHECK(r1.generators[1] == parse("a a* - b b*"));
    CHECK(r1.generators[2] == parse("a(1 - a* a) - b(1 - b* b)"));
    CHECK(r1.generators[3] == parse("(1 - a a*)a - (1 - b b*)b"));
    // The first two are self-adjoint. The last two expand to the same polynomial
    // a - aa*a - b + bb*b, so the closure holds it and its adjoint once.
    CHECK(r1.generators[2] == r1.generators[3]);
    CHECK(r1.star_closure().size() == 5);

    const auto r2 = rel2();
    REQUIRE(r2.generators.size() == 8);
    for (const auto& g : r2.generators) {
        CHECK(g.degree() == 3);
        for (const auto& [m, c] : g.terms()) CHECK(m.charge() == g.terms().begin()->first.charge());
    }
    CHECK(empty_ideal().generators.empty());
}

TEST_CASE("central reduction") {
    const std::vector<StarPoly> circle{circle_relation()};
    CHECK(reduce_central(parse("s s"), circle) == parse("1 - c c"));
    CHECK(reduce_central(parse("s s s a"), circle) == parse("s a - s c c a"));
    CHECK(reduce_central(parse("s c a"), circle) == parse("s c a"));
}

TEST_CASE("suite parser") {
    const auto suite = parse_suite(
        "let w = 1 + b*(a - b)\n"
        "[unitary]\n"
        "target = w* w - 1\n"
        "ideal = rel1\n"
        "bound = 8\n"
        "[matrix]\n"
        "target = [[a, 0], [0, b]] - [[a, 0], [0, b]]\n");
    REQUIRE(suite.entries.size() == 5);
    CHECK(suite.entries[0].name == "unitary");
    CHECK(suite.entries[0].degree_bound == 8);
    CHECK(suite.entries[1].name == "matrix[0,0]");
    CHECK(suite.entries[1].degree_bound == 2);  // zero entry: default bound 2
}

TEST_CASE("suite parser errors name the line") {
    auto line_of = [](const char* text) {
        try {
            parse_suite(text);
        } catch (const ParseError& e) {
            return static_cast<int>(e.position);
        }
        return -1;
    };
    CHECK(line_of("[x]\ntarget = a +\n") == 2);
    CHECK(line_of("[x]\nideal = rel1\n") > 0);           // no target
    CHECK(line_of("let a = b\n") == 1);                  // reserved name
    CHECK(line_of("[x]\ntarget = a\nfoo = 1\n") == 3);   // unknown key
    CHECK(line_of("[x]\ntarget = a\nbound = two\n") == 3);
}
