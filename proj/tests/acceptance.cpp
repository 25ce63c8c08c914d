// Acceptance suite: end-to-end checks of the whole construction at desk
// scale.  Each criterion prints one PASS/FAIL line; the exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "qsl/matrix_io.hpp"
#include "qsl/oscillator.hpp"
#include "qsl/stats.hpp"

using namespace qsl;

namespace {

int failures = 0;

void line(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("%s: criterion %2d (%s) %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<QParameter> standard_qs() {
    return {QParameter::generic(cplx(0.7, 0.0)), QParameter::generic(cplx(1.1, 0.3)),
            QParameter::phase(0.3), QParameter::classical()};
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int instances = 0;
    for (auto [n, m] : {std::pair{1, 1}, {2, 1}, {1, 2}, {3, 0}, {0, 2}})
        for (int p : {1, 2, 3, 4})
            for (const QParameter& q : standard_qs()) {
                RepContext ctx = make_rep_context(ModeSignature(n, m), cplx(double(p), 0.0), q,
                                                  p, Normalization::Unnormalized);
                CheckReport rep = check_theorem1(build_generator_table(ctx));
                worst = std::max(worst, rep.max_residual());
                instances += int(rep.residuals.size());
            }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    line(1, "Theorem 1 grid", worst <= 1e-9 && secs < 60.0,
         std::to_string(instances) + " instances, max residual " + fmt("%.2e", worst) +
             ", " + fmt("%.1f s", secs));
}

void criterion2() {
    double worst = 0.0;
    bool branches = true;
    for (auto [n, m, p] : {std::tuple{2, 1, 3}, {1, 2, 2}})
        for (const QParameter& q : standard_qs()) {
            RepContext ctx = make_rep_context(ModeSignature(n, m), cplx(double(p), 0.0), q, p,
                                              Normalization::Unnormalized);
            CheckReport rep = check_gl_relations(build_cw_table(ctx));
            worst = std::max(worst, rep.max_residual());
            // every four-index indicator chain is reachable with indices 0..3
            for (const char* key : {"pp 02,13", "nn 31,20", "pn.gl 13,20", "pn.gl 02,31",
                                    "pn.sl 13,20", "pn.sl 02,20"})
                branches = branches && rep.residuals.count(key) == 1;
        }
    line(2, "gl Cartan-Weyl suite", worst <= 1e-9 && branches,
         "max residual " + fmt("%.2e", worst) +
             (branches ? ", all indicator branches reached" : ", MISSING branches"));
}

void criterion3() {
    double worst = 0.0;
    for (const QParameter& q : standard_qs()) {
        RepContext ctx = make_rep_context(ModeSignature(2, 1), cplx(4.0, 0.0), q, 4,
                                          Normalization::Unnormalized);
        CheckReport rep = check_lemma_identities(build_generator_table(ctx), 3);
        worst = std::max(worst, rep.max_residual());
    }
    line(3, "lemma identities r<=3", worst <= 1e-9, "max residual " + fmt("%.2e", worst));
}

void criterion4() {
    QParameter q = QParameter::phase(0.3);
    RepContext ctx = make_rep_context(ModeSignature(2, 2), cplx(3.0, 0.0), q, 3,
                                      Normalization::Unnormalized);
    double dev = gram_check(ctx);
    bool exact = true;
    double expect = (q.bracket(3.0) * q.bracket(2.0)).real();
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            Occupation r(4, 0);
            r[i - 1] = 1;
            r[j - 1] = 1;
            exact = exact && norm_squared(ctx, r) == expect;
        }
    line(4, "norm formula", dev <= 1e-9 && exact,
         "gram deviation " + fmt("%.2e", dev) +
             (exact ? ", [p][p-1] exact" : ", [p][p-1] NOT exact"));
}

void criterion5() {
    bool ok = true;
    std::string detail;
    for (long p : {2L, 3L, 5L}) {
        // flag boundary at pi/p within grid resolution 1e-3
        double lo = M_PI / double(p) - 5e-3, hi = M_PI / double(p) + 5e-3;
        std::vector<double> grid;
        for (double phi = lo; phi <= hi; phi += 1e-3) grid.push_back(phi);
        auto rows = unitary_scan(p, grid);
        double flip = -1.0;
        for (std::size_t k = 1; k < rows.size(); ++k)
            if (rows[k - 1].unitary && !rows[k].unitary) flip = rows[k].phi;
        ok = ok && flip > 0.0 && std::abs(flip - M_PI / double(p)) <= 2e-3;
        // adjointness inside the window
        UnitarityResult u = unitarity_check(ModeSignature(1, 1), p,
                                            QParameter::phase(M_PI / (2.0 * double(p))));
        ok = ok && u.unitary && u.max_adjoint_deviation <= 1e-9;
        detail += "p=" + std::to_string(p) + " flip@" + fmt("%.4f ", flip);
    }
    // root of unity inside the window: q = e^{i pi/4}, p = 3
    QParameter root = QParameter::phase(M_PI / 4);
    RepContext ctx = make_rep_context(ModeSignature(2, 1), cplx(3.0, 0.0), root, 3,
                                      Normalization::Unnormalized);
    double min_norm = 1e300;
    for (std::size_t k = 0; k < ctx.basis->size(); ++k)
        min_norm = std::min(min_norm, norm_squared(ctx, ctx.basis->vector(k)));
    UnitarityResult u = unitarity_check(ModeSignature(2, 1), 3, root);
    CheckReport t1 = check_theorem1(build_generator_table(ctx));
    bool root_ok = min_norm > 1e-9 && u.unitary && gram_check(ctx) <= 1e-9 && t1.passed();
    ok = ok && root_ok;
    detail += root_ok ? "root-of-unity ok" : "root-of-unity FAILED";
    line(5, "unitarity boundary", ok, detail);
}

void criterion6() {
    bool ok = true;
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m) {
            if (n + m == 0) continue;
            for (int p = 0; p <= 6; ++p) {
                FockBasis basis(ModeSignature(n, m), cplx(double(p), 0.0), p);
                ok = ok && dimension(ModeSignature(n, m), p) == basis.size();
            }
        }
    line(6, "dimension oracle", ok, ok ? "exact for all n,m <= 3, p <= 6" : "mismatch");
}

void criterion7() {
    QParameter q = QParameter::generic(cplx(0.8, 0.0));
    RealizationMap map =
        make_realization(RealizationKind::Dyson, cplx(2.3, 0.0), q, ModeSignature(2, 1), 6);
    RepContext ctx = make_rep_context(ModeSignature(2, 1), cplx(2.3, 0.0), q, 6,
                                      Normalization::Unnormalized);
    double dev = check_equivalence(map, ctx);
    CheckReport rep = check_homomorphism(map);
    line(7, "Dyson equivalence", dev <= 1e-9 && rep.max_residual() <= 1e-9,
         "deviation " + fmt("%.2e", dev) + ", homomorphism residual " +
             fmt("%.2e", rep.max_residual()));
}

void criterion8() {
    QParameter q = QParameter::phase(0.4);
    ModeSignature sig(1, 2);
    RealizationMap hp = make_realization(RealizationKind::HP, cplx(3.0, 0.0), q, sig, 3);
    RepContext ctx =
        make_rep_context(sig, cplx(3.0, 0.0), q, 3, Normalization::Orthonormal);
    double dev = check_equivalence(hp, ctx);

    double adj = 0.0;
    for (int i = 1; i <= 3; ++i)
        adj = std::max(adj, (realize(hp, Jg::APlus, i).adjoint().matrix() -
                             realize(hp, Jg::AMinus, i).matrix())
                                .max_abs());

    RealizationMap hpd = make_realization(RealizationKind::HPDeformed, cplx(3.0, 0.0), q, sig, 3);
    double ddev = 0.0;
    for (int i = 1; i <= 3; ++i)
        for (Jg g : {Jg::H, Jg::APlus, Jg::AMinus})
            ddev = std::max(ddev,
                            (realize(hp, g, i).matrix() - realize(hpd, g, i).matrix()).max_abs());
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            ddev = std::max(ddev,
                            (realize_cw(hp, a, b).matrix() - realize_cw(hpd, a, b).matrix())
                                .max_abs());

    CheckReport osc =
        check_oscillator_relations(hp.space, q);  // includes the deformed family
    bool ok = dev <= 1e-9 && adj <= 1e-9 && ddev <= 1e-14 && osc.max_residual() <= 1e-9;
    line(8, "HP equivalence and unitarity", ok,
         "deviation " + fmt("%.2e", dev) + ", adjoint " + fmt("%.2e", adj) +
             ", deformed-vs-HP " + fmt("%.2e", ddev) + ", osc residual " +
             fmt("%.2e", osc.max_residual()));
}

void criterion9() {
    bool ok = true;
    for (long p : {1L, 2L})
        for (RealizationKind kind : {RealizationKind::Dyson, RealizationKind::HP})
            for (auto [n, m] : {std::pair{1, 1}, {2, 1}}) {
                RealizationMap map = make_realization(kind, cplx(double(p), 0.0),
                                                      QParameter::phase(0.3),
                                                      ModeSignature(n, m), int(p) + 3);
                ok = ok && invariant_subspace_check(map);
            }
    line(9, "invariant subspaces", ok,
         ok ? "no forbidden entries at cutoff p+3" : "forbidden entry found");
}

void criterion10() {
    // closed enumeration against the basis walk, bit for bit
    bool exact = true;
    for (auto [n, m, p] : {std::tuple{1, 1, 1}, {2, 1, 3}, {0, 2, 2}}) {
        SpectrumConfig cfg;
        for (int t = 0; t < n + m; ++t) cfg.eps.push_back(0.4 + 0.3 * t);
        cfg.beta = 0.9;
        FockBasis basis(ModeSignature(n, m), cplx(double(p), 0.0), p);
        double z_walk = 0.0;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            double e = 0.0;
            for (int t = 0; t < n + m; ++t) e += cfg.eps[std::size_t(t)] * basis.vector(k)[std::size_t(t)];
            z_walk += std::exp(-cfg.beta * e);
        }
        exact = exact && partition_function(ModeSignature(n, m), p, cfg) == z_walk;
    }
    // hard-core p=1 three-state formula
    SpectrumConfig hc{{0.5, 1.1}, 0.9};
    double three = 1.0 + std::exp(-0.9 * 0.5) + std::exp(-0.9 * 1.1);
    bool hard_core =
        std::abs(partition_function(ModeSignature(1, 1), 1, hc) - three) < 1e-15;

    auto rows = canonical_limit_check(ModeSignature(1, 1), {10, 100, 1000}, {}, 3);
    std::map<long, double> worst;
    for (const LimitRow& r : rows) worst[r.p] = std::max(worst[r.p], r.residual);
    double ratio1 = worst.at(10) / worst.at(100);
    double ratio2 = worst.at(100) / worst.at(1000);
    bool rate = ratio1 >= 5.0 && ratio1 <= 20.0 && ratio2 >= 5.0 && ratio2 <= 20.0;

    line(10, "statistics", exact && hard_core && rate,
         std::string(exact ? "Z exact" : "Z MISMATCH") + ", hard-core " +
             (hard_core ? "ok" : "FAIL") + ", decade ratios " + fmt("%.1f", ratio1) + "/" +
             fmt("%.1f", ratio2));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
