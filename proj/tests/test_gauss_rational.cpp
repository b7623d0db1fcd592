#include "balk1/gauss_rational.hpp"

#include <doctest.h>

using balk1::GaussRational;

TEST_CASE("field operations in Q(i)") {
    const GaussRational i = GaussRational::imag_unit();
    CHECK(i * i == GaussRational(-1));
    const GaussRational z(mpq_class(1, 2), 3);
    CHECK(z * z.inverse() == GaussRational(1));
    CHECK(z / z == GaussRational(1));
    CHECK((z - z).is_zero());
    CHECK(z.conj().conj() == z);
    // (1/2 + 3i)(1/2 - 3i) = 1/4 + 9
    CHECK(z * z.conj() == GaussRational(mpq_class(37, 4)));
}

TEST_CASE("canonical form after arithmetic") {
    const GaussRational a(mpq_class(2, 4), mpq_class(-6, 8));
    CHECK(a.re() == mpq_class(1, 2));
    CHECK(a.im() == mpq_class(-3, 4));
}

TEST_CASE("printing") {
    CHECK(GaussRational(mpq_class(3, 2)).str() == "3/2");
    CHECK(GaussRational(0, -1).str() == "-i");
    CHECK(GaussRational(mpq_class(1, 2), 3).str() == "1/2+3i");
    CHECK(GaussRational().str() == "0");
}

TEST_CASE("inverse of zero throws") { CHECK_THROWS(GaussRational().inverse()); }
