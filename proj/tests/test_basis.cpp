#include <catch2/catch_amalgamated.hpp>

#include "qsl/fock_basis.hpp"

using namespace qsl;

TEST_CASE("basis enumeration examples") {
    SECTION("n=1, m=0, p=1: the spin-1/2 pattern") {
        FockBasis b(ModeSignature(1, 0), cplx(1.0, 0.0), 1);
        REQUIRE(b.size() == 2);
        CHECK(b.vector(0) == Occupation{0});
        CHECK(b.vector(1) == Occupation{1});
    }
    SECTION("n=1, m=1, p=1") {
        FockBasis b(ModeSignature(1, 1), cplx(1.0, 0.0), 1);
        REQUIRE(b.size() == 3);
        CHECK(b.vector(0) == Occupation{0, 0});
        CHECK(b.vector(1) == Occupation{0, 1});
        CHECK(b.vector(2) == Occupation{1, 0});
    }
    SECTION("n=2, m=1, p=2") {
        FockBasis b(ModeSignature(2, 1), cplx(2.0, 0.0), 2);
        CHECK(b.size() == 9);
        CHECK(b.size() == dimension(ModeSignature(2, 1), 2));
    }
    SECTION("negative cutoff is a domain error") {
        CHECK_THROWS_AS(FockBasis(ModeSignature(1, 0), cplx(1.0, 0.0), -1), std::domain_error);
    }
}

TEST_CASE("dimension formula matches exhaustive enumeration") {
    CHECK(dimension(ModeSignature(1, 0), 1) == 2);
    CHECK(dimension(ModeSignature(1, 1), 1) == 3);
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m) {
            if (n + m == 0) continue;
            for (int p = 0; p <= 6; ++p) {
                FockBasis b(ModeSignature(n, m), cplx(double(p), 0.0), p);
                CHECK(dimension(ModeSignature(n, m), p) == b.size());
            }
        }
}

TEST_CASE("enumerated vectors are admissible and ordered") {
    FockBasis b(ModeSignature(2, 2), cplx(3.0, 0.0), 3);
    int last_degree = 0;
    for (std::size_t k = 0; k < b.size(); ++k) {
        const Occupation& v = b.vector(k);
        int deg = b.degree(k);
        CHECK(deg <= 3);
        CHECK(v[2] <= 1);  // fermionic occupancy cap
        CHECK(v[3] <= 1);
        CHECK(deg >= last_degree);  // degree-major order
        if (deg == last_degree && k > 0 && b.degree(k - 1) == deg)
            CHECK(b.vector(k - 1) < v);  // lexicographic ties
        last_degree = deg;
    }
}

TEST_CASE("rank and unrank are mutually inverse") {
    FockBasis b(ModeSignature(2, 1), cplx(4.0, 0.0), 4);
    for (std::size_t k = 0; k < b.size(); ++k)
        CHECK(b.rank(b.vector(k)) == static_cast<long>(k));
    CHECK(b.rank(Occupation{5, 0, 0}) == -1);  // beyond the cutoff
}

TEST_CASE("exact quotient flag") {
    CHECK(FockBasis(ModeSignature(1, 1), cplx(2.0, 0.0), 2).exact_quotient());
    CHECK_FALSE(FockBasis(ModeSignature(1, 1), cplx(2.0, 0.0), 4).exact_quotient());
    CHECK_FALSE(FockBasis(ModeSignature(1, 1), cplx(2.3, 0.0), 6).exact_quotient());
}

TEST_CASE("grading data") {
    ModeSignature sig(1, 2);
    SECTION("vacuum prefix is trivial") {
        for (int i = 1; i <= 3; ++i) {
            GradingData g = grading_data(sig, Occupation{0, 0, 0}, i);
            CHECK(g.prefix_degree == 0);
            CHECK(g.prefix_sign == 1);
        }
    }
    SECTION("theta-weighted prefix sign") {
        GradingData g = grading_data(sig, Occupation{2, 1, 0}, 3);
        CHECK(g.prefix_degree == 3);
        CHECK(g.prefix_sign == -1);
    }
    SECTION("all-bosonic prefixes never flip the sign") {
        GradingData g = grading_data(ModeSignature(2, 0), Occupation{1, 1}, 2);
        CHECK(g.prefix_degree == 1);
        CHECK(g.prefix_sign == 1);
    }
    SECTION("index out of range") {
        CHECK_THROWS_AS(grading_data(sig, Occupation{0, 0, 0}, 4), std::out_of_range);
    }
}
