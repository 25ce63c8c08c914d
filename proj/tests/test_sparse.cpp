#include <catch2/catch_amalgamated.hpp>

#include "qsl/sparse.hpp"

using namespace qsl;

TEST_CASE("sparse arithmetic") {
    SparseMatrix a(2, 2), b(2, 2);
    a.add(0, 1, cplx(1.0, 0.0));
    a.add(1, 0, cplx(0.0, 2.0));
    b.add(0, 0, cplx(3.0, 0.0));
    b.add(0, 1, cplx(1.0, -1.0));

    SECTION("product") {
        SparseMatrix c = a * b;
        CHECK(c.at(0, 0) == cplx(0.0, 0.0));
        CHECK(c.at(1, 0) == cplx(0.0, 6.0));
        CHECK(c.at(1, 1) == cplx(0.0, 2.0) * cplx(1.0, -1.0));
    }
    SECTION("sum cancels to a structural zero") {
        SparseMatrix d = a - a;
        CHECK(d.nnz() == 0);
        CHECK(d.is_zero());
    }
    SECTION("adjoint conjugates and transposes") {
        SparseMatrix h = a.adjoint();
        CHECK(h.at(1, 0) == cplx(1.0, 0.0));
        CHECK(h.at(0, 1) == cplx(0.0, -2.0));
    }
    SECTION("entries are sorted by row then column") {
        auto es = b.entries();
        REQUIRE(es.size() == 2);
        CHECK(es[0].col == 0);
        CHECK(es[1].col == 1);
    }
    SECTION("shape mismatch throws") {
        CHECK_THROWS_AS(a + SparseMatrix(3, 2), std::invalid_argument);
        CHECK_THROWS_AS(a * SparseMatrix(3, 3), std::invalid_argument);
    }
}

TEST_CASE("graded operators and the supercommutator") {
    auto basis = make_basis(ModeSignature(0, 1), cplx(1.0, 0.0), 1);
    SparseMatrix up(2, 2), dn(2, 2);
    up.add(1, 0, cplx(1.0, 0.0));
    dn.add(0, 1, cplx(1.0, 0.0));
    GradedOperator cplus(up, 1, basis, "c+");
    GradedOperator cminus(dn, 1, basis, "c-");

    SECTION("fermionic pair anticommutes to the identity") {
        GradedOperator s = supercommutator(cminus, cplus);
        CHECK(s.parity() == 0);
        CHECK((s.matrix() - SparseMatrix::identity(2)).is_zero());
    }
    SECTION("x-deformed variant") {
        GradedOperator s = supercommutator(cminus, cplus, cplx(2.0, 0.0));
        CHECK(s.matrix().at(1, 1) == cplx(2.0, 0.0));
        CHECK(s.matrix().at(0, 0) == cplx(1.0, 0.0));
    }
    SECTION("powers track parity") {
        CHECK(cplus.pow(2).parity() == 0);
        CHECK(cplus.pow(2).matrix().is_zero());
        CHECK(cplus.pow(3).parity() == 1);
    }
    SECTION("basis mismatch is rejected") {
        auto other = make_basis(ModeSignature(1, 0), cplx(2.0, 0.0), 2);
        GradedOperator foreign(SparseMatrix(3, 3), 0, other, "x");
        CHECK_THROWS_AS(cplus * foreign, std::invalid_argument);
    }
}
