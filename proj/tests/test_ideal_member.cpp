#include "balk1/starpoly.hpp"
#include "balk1/suite.hpp"

#include <doctest.h>

using namespace balk1;
using namespace balk1::starpoly;

namespace {

const Definitions& defs() {
    static const Definitions d = [] {
        Definitions x;
        x.emplace("w", parse_matrix("1 + b*(a - b)"));
        return x;
    }();
    return d;
}

bool certified(const char* target, const RelationIdeal& ideal, int bound) {
    const StarPoly t = parse(target, defs());
    const auto cert = ideal_member(t, ideal, bound);
    if (!cert) return false;
    // Independent check of the certificate by plain polynomial arithmetic.
    return replay(*cert, ideal) == reduce_central(t, ideal.central_relations);
}

}  // namespace

TEST_CASE("properties of c(a,b) follow from rel1 within degree 8") {
    const auto r1 = rel1();
    CHECK(certified("w* w - 1", r1, 8));
    CHECK(certified("w w* - 1", r1, 8));
    CHECK(certified("b w - a", r1, 6));
    CHECK(certified("b* b w - w b* b", r1, 6));
    CHECK(certified("(1 - b* b)(w - 1)", r1, 6));
    CHECK(certified("(w - 1)(1 - b* b)", r1, 6));
}

TEST_CASE("rel1 implies each rel2 generator") {
    const auto r1 = rel1();
    for (const auto& g : rel2().generators) {
        CAPTURE(g.str());
        const auto cert = ideal_member(g, r1, 8);
        REQUIRE(cert);
        CHECK(replay(*cert, r1) == g);
    }
}

TEST_CASE("a - b is not in rel1") {
    CHECK_FALSE(ideal_member(parse("a - b"), rel1(), 8));
}

TEST_CASE("defects on the wrong side are not consequences of rel1") {
    // Numerically false for balanced pairs with a unitary part, so no bound can find them.
    CHECK_FALSE(ideal_member(parse("(a* - b*)(1 - a* a)"), rel1(), 8));
    CHECK_FALSE(ideal_member(parse("(a - b)(1 - a a*)"), rel1(), 8));
}

TEST_CASE("zero and the generators themselves") {
    const auto r1 = rel1();
    const auto zero = ideal_member(StarPoly(), r1, 2);
    REQUIRE(zero);
    CHECK(zero->decomposition.empty());
    for (const auto& g : r1.generators) CHECK(ideal_member(g, r1, g.degree()));
    CHECK_FALSE(ideal_member(parse("a"), empty_ideal(), 4));
    CHECK(ideal_member(StarPoly(), empty_ideal(), 0));
}

TEST_CASE("central symbols ride along") {
    // s^2 + c^2 = 1 is built into every ideal.
    CHECK(certified("s s + c c - 1", rel1(), 2));
    CHECK(certified("s (a* a - b* b) c", rel1(), 4));
    CHECK_FALSE(ideal_member(parse("s a - s b"), rel1(), 6));
}

TEST_CASE("certificates are deterministic") {
    const StarPoly t = parse("w* w - 1", defs());
    const auto c1 = ideal_member(t, rel1(), 8);
    const auto c2 = ideal_member(t, rel1(), 8);
    REQUIRE(c1);
    REQUIRE(c2);
    REQUIRE(c1->decomposition.size() == c2->decomposition.size());
    for (std::size_t k = 0; k < c1->decomposition.size(); ++k) {
        const auto& x = c1->decomposition[k];
        const auto& y = c2->decomposition[k];
        CHECK(x.left == y.left);
        CHECK(x.right == y.right);
        CHECK(x.generator == y.generator);
        CHECK(x.adjoint == y.adjoint);
        CHECK(x.coeff == y.coeff);
    }
}

TEST_CASE("every certificate term respects the degree bound") {
    const auto r1 = rel1();
    const auto closure = r1.star_closure();
    const auto cert = ideal_member(parse("w* w - 1", defs()), r1, 8);
    REQUIRE(cert);
    for (const auto& t : cert->decomposition) {
        const auto& g = r1.generators.at(t.generator);
        CHECK(t.left.degree() + g.degree() + t.right.degree() <= 8);
    }
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(ideal_member(parse("a a a"), rel1(), 2), PreconditionError);
    RelationIdeal central{"central", {parse("s a")}, {circle_relation()}};
    CHECK_THROWS_AS(ideal_member(parse("a"), central, 3), PreconditionError);
    MembershipOptions tiny;
    tiny.max_rows = 10;
    CHECK_THROWS_AS(ideal_member(parse("w* w - 1", defs()), rel1(), 8, tiny), PreconditionError);
}

TEST_CASE("bundled suite certifies completely") {
    const auto suite = parse_suite(default_suite_text());
    CHECK(suite.entries.size() >= 40);
    const auto report = verify_identity_suite(suite);
    for (const auto& r : report.results) {
        CAPTURE(r.name);
        CHECK(r.certified);
        CHECK(r.replay_ok);
    }
}
