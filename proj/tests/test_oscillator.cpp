#include <catch2/catch_amalgamated.hpp>

#include "qsl/oscillator.hpp"

using namespace qsl;
using Catch::Approx;

TEST_CASE("oscillator algebra on the truncation interior") {
    OscFockSpace space = make_osc_space(ModeSignature(1, 1), 4, OscNormalization::Monomial);
    QParameter q = QParameter::phase(0.3);
    CheckReport rep = check_oscillator_relations(space, q);
    CHECK(rep.passed());
    CHECK(rep.max_residual() < 1e-12);

    SECTION("fermionic creation squares to a structural zero") {
        GradedOperator cp = osc_matrix(space, Osc::CPlus, 2);
        CHECK((cp * cp).matrix().nnz() == 0);
    }
    SECTION("number operators are diagonal with eigenvalue l_i") {
        GradedOperator n1 = osc_matrix(space, Osc::Number, 1);
        for (std::size_t k = 0; k < space.basis->size(); ++k)
            CHECK(n1.matrix().at(long(k), long(k)) ==
                  cplx(double(space.basis->vector(k)[0]), 0.0));
    }
    SECTION("Koszul sign of a fermionic ladder behind an occupied fermion") {
        OscFockSpace two = make_osc_space(ModeSignature(0, 2), 2, OscNormalization::Monomial);
        GradedOperator c2p = osc_matrix(two, Osc::CPlus, 2);
        long from = two.basis->rank(Occupation{1, 0});
        long to = two.basis->rank(Occupation{1, 1});
        CHECK(c2p.matrix().at(to, from) == cplx(-1.0, 0.0));
    }
}

TEST_CASE("deformed oscillators") {
    ModeSignature sig(1, 1);
    OscFockSpace space = make_osc_space(sig, 4, OscNormalization::Normalized);

    SECTION("relations (deformed pair, number operator) hold") {
        CheckReport rep = check_oscillator_relations(space, QParameter::phase(0.3));
        CHECK(rep.passed());
    }
    SECTION("classical q collapses c~ to c") {
        QParameter cls = QParameter::classical();
        for (int i = 1; i <= 2; ++i) {
            CHECK((deformed_osc_matrix(space, cls, DefOsc::Plus, i).matrix() -
                   osc_matrix(space, Osc::CPlus, i).matrix())
                      .is_zero());
            CHECK((deformed_osc_matrix(space, cls, DefOsc::Minus, i).matrix() -
                   osc_matrix(space, Osc::CMinus, i).matrix())
                      .is_zero());
        }
    }
    SECTION("monomial space is rejected") {
        OscFockSpace mono = make_osc_space(sig, 4, OscNormalization::Monomial);
        CHECK_THROWS_AS(deformed_osc_matrix(mono, QParameter::phase(0.3), DefOsc::Plus, 1),
                        std::domain_error);
    }
}

TEST_CASE("fermionic q-power identity q^N = 1 - N + qN") {
    // exactness probe for the diagonal q-power construction on 0/1 spectra
    QParameter q = QParameter::generic(cplx(1.1, 0.3));
    for (long l : {0L, 1L}) {
        cplx lhs = q.power(cplx(double(l), 0.0));
        cplx rhs = 1.0 - double(l) + q.value() * double(l);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("realization images on distinguished states") {
    ModeSignature sig(1, 1);
    QParameter q = QParameter::generic(cplx(0.8, 0.0));

    SECTION("rho(H_i)|0> = p|0>") {
        RealizationMap dyson = make_realization(RealizationKind::Dyson, cplx(2.5, 0.0), q, sig, 5);
        for (int i = 1; i <= 2; ++i)
            CHECK(realize(dyson, Jg::H, i).matrix().at(0, 0) == cplx(2.5, 0.0));
    }
    SECTION("rho(a_i^+)|0> = c_i^+|0>") {
        RealizationMap dyson = make_realization(RealizationKind::Dyson, cplx(2.5, 0.0), q, sig, 5);
        for (int i = 1; i <= 2; ++i) {
            Occupation e(sig.total(), 0);
            e[i - 1] = 1;
            long row = dyson.space.basis->rank(e);
            CHECK(realize(dyson, Jg::APlus, i).matrix().at(row, 0) == cplx(1.0, 0.0));
        }
    }
    SECTION("HP: rho(a_1^-) c_1^+|0> = sqrt([1][p]) |0>") {
        QParameter phs = QParameter::phase(0.4);
        RealizationMap hp =
            make_realization(RealizationKind::HP, cplx(3.0, 0.0), phs, ModeSignature(1, 0), 3);
        long col = hp.space.basis->rank(Occupation{1});
        double expect = std::sqrt((phs.bracket(1.0) * phs.bracket(3.0)).real());
        CHECK(std::abs(realize(hp, Jg::AMinus, 1).matrix().at(0, col) - cplx(expect, 0.0)) <
              1e-15);
    }
}

TEST_CASE("homomorphism residuals vanish for both realizations") {
    SECTION("Dyson at generic p") {
        RealizationMap map = make_realization(RealizationKind::Dyson, cplx(2.5, 0.0),
                                              QParameter::generic(cplx(0.8, 0.0)),
                                              ModeSignature(1, 1), 6);
        CheckReport rep = check_homomorphism(map);
        CHECK(rep.passed());
        CHECK(rep.max_residual() < 1e-12);
    }
    SECTION("HP at integer p inside the window") {
        RealizationMap map = make_realization(RealizationKind::HP, cplx(4.0, 0.0),
                                              QParameter::phase(0.3), ModeSignature(2, 1), 4);
        CHECK(check_homomorphism(map).passed());
    }
    SECTION("HP-deformed at integer p") {
        RealizationMap map = make_realization(RealizationKind::HPDeformed, cplx(3.0, 0.0),
                                              QParameter::phase(0.4), ModeSignature(1, 2), 3);
        CHECK(check_homomorphism(map).passed());
    }
}

TEST_CASE("realized matrices equal the module matrices") {
    SECTION("Dyson against the unnormalized basis at generic p") {
        QParameter q = QParameter::generic(cplx(0.8, 0.0));
        RealizationMap map =
            make_realization(RealizationKind::Dyson, cplx(2.3, 0.0), q, ModeSignature(2, 1), 5);
        RepContext ctx = make_rep_context(ModeSignature(2, 1), cplx(2.3, 0.0), q, 5,
                                          Normalization::Unnormalized);
        CHECK(check_equivalence(map, ctx) < 1e-12);
    }
    SECTION("HP against the orthonormal basis") {
        QParameter q = QParameter::phase(0.5);
        RealizationMap map =
            make_realization(RealizationKind::HP, cplx(3.0, 0.0), q, ModeSignature(1, 1), 3);
        RepContext ctx = make_rep_context(ModeSignature(1, 1), cplx(3.0, 0.0), q, 3,
                                          Normalization::Orthonormal);
        CHECK(check_equivalence(map, ctx) < 1e-12);
    }
    SECTION("HP-deformed equals HP at machine precision") {
        QParameter q = QParameter::phase(0.4);
        RealizationMap hp =
            make_realization(RealizationKind::HP, cplx(3.0, 0.0), q, ModeSignature(1, 2), 3);
        RealizationMap hpd = make_realization(RealizationKind::HPDeformed, cplx(3.0, 0.0), q,
                                              ModeSignature(1, 2), 3);
        double dev = 0.0;
        for (int i = 1; i <= 3; ++i)
            for (Jg g : {Jg::H, Jg::APlus, Jg::AMinus})
                dev = std::max(dev,
                               (realize(hp, g, i).matrix() - realize(hpd, g, i).matrix())
                                   .max_abs());
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b)
                dev = std::max(dev, (realize_cw(hp, a, b).matrix() -
                                     realize_cw(hpd, a, b).matrix())
                                        .max_abs());
        CHECK(dev < 1e-14);
    }
    SECTION("shape mismatch is rejected") {
        QParameter q = QParameter::phase(0.5);
        RealizationMap map =
            make_realization(RealizationKind::HP, cplx(3.0, 0.0), q, ModeSignature(1, 1), 3);
        RepContext ctx = make_rep_context(ModeSignature(1, 1), cplx(2.0, 0.0), q, 2,
                                          Normalization::Orthonormal);
        CHECK_THROWS_AS(check_equivalence(map, ctx), std::invalid_argument);
    }
}

TEST_CASE("Cartan-Weyl images are consistent with the supercommutator route") {
    QParameter q = QParameter::generic(cplx(0.8, 0.0));
    RealizationMap dyson =
        make_realization(RealizationKind::Dyson, cplx(2.3, 0.0), q, ModeSignature(2, 1), 5);
    CHECK(cw_consistency(dyson) < 1e-12);

    QParameter phs = QParameter::phase(0.4);
    RealizationMap hp =
        make_realization(RealizationKind::HP, cplx(3.0, 0.0), phs, ModeSignature(1, 2), 3);
    CHECK(cw_consistency(hp) < 1e-12);
}

TEST_CASE("HP images are mutually adjoint inside the window") {
    QParameter q = QParameter::phase(0.4);
    RealizationMap hp =
        make_realization(RealizationKind::HP, cplx(3.0, 0.0), q, ModeSignature(1, 2), 3);
    for (int i = 1; i <= 3; ++i) {
        double dev = (realize(hp, Jg::APlus, i).adjoint().matrix() -
                      realize(hp, Jg::AMinus, i).matrix())
                         .max_abs();
        CHECK(dev < 1e-12);
    }
}

TEST_CASE("the high-degree subspace is invariant under both realizations") {
    for (long p : {1L, 2L}) {
        for (RealizationKind kind : {RealizationKind::Dyson, RealizationKind::HP}) {
            QParameter q = QParameter::phase(0.3);
            RealizationMap map = make_realization(kind, cplx(double(p), 0.0), q,
                                                  ModeSignature(1, 1), int(p) + 3);
            INFO("p=" << p << " kind=" << (kind == RealizationKind::Dyson ? "dyson" : "hp"));
            CHECK(invariant_subspace_check(map));
        }
    }
    SECTION("p=0: the quotient is one-dimensional and the ladders act as zero on it") {
        RealizationMap map = make_realization(RealizationKind::Dyson, cplx(0.0, 0.0),
                                              QParameter::classical(), ModeSignature(1, 1), 3);
        CHECK(invariant_subspace_check(map));
        for (int i = 1; i <= 2; ++i)
            CHECK(realize(map, Jg::AMinus, i).matrix().at(0, 0) == cplx(0.0, 0.0));
    }
}
