#pragma once

// Exhaustive relation checkers.  Every supercommutation relation between
// Jacobson generators (triple relations) and between Cartan-Weyl elements
// is evaluated as a finite matrix identity; the report maps a relation
// instance label to its normalized residual
//
//   residual = max|LHS - RHS| / max(1, max|LHS|, max|RHS|).
//
// On a degree-truncated basis of the infinite module (generic p, or
// cutoff != p) an identity built from a word of ladder operators is only
// evaluated on columns far enough below the cutoff that no intermediate
// state was projected away; the per-relation excursion bound encodes how
// far a word can climb.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qsl/rep.hpp"

namespace qsl {

struct CheckReport {
    double tolerance = 1e-9;
    std::map<std::string, double> residuals;

    void record(const std::string& key, double value) { residuals[key] = value; }

    double max_residual() const {
        double mx = 0.0;
        for (const auto& [k, v] : residuals) mx = std::max(mx, v);
        return mx;
    }

    bool passed() const { return max_residual() <= tolerance; }

    void merge(const CheckReport& other) {
        for (const auto& [k, v] : other.residuals) residuals[k] = v;
    }
};

// Prebuilt Jacobson generator matrices on one basis, together with the
// degree-window bookkeeping for truncated modules.
struct GeneratorTable {
    ModeSignature sig;
    QParameter q = QParameter::classical();
    cplx p;
    std::shared_ptr<const FockBasis> basis;
    std::vector<GradedOperator> a_plus, a_minus, H, L, Lbar;  // mode i at [i-1]
    bool exact = false;
    int cutoff = 0;

    std::vector<char> mask(int excursion) const {
        return basis->degree_mask(exact ? -1 : cutoff - excursion);
    }

    const GradedOperator& a(int i, int sign) const {
        return sign > 0 ? a_plus[i - 1] : a_minus[i - 1];
    }

    // diagonal [H_i], well-defined in every q mode (unlike (L-Lbar)/(q-qbar))
    GradedOperator bracket_of_H(int i) const {
        std::vector<cplx> d = H[i - 1].matrix().diagonal_values();
        for (cplx& v : d) v = q.bracket(v);
        return GradedOperator(SparseMatrix::diagonal(d), 0, basis, "[H]");
    }
};

inline GeneratorTable build_generator_table(const RepContext& ctx) {
    GeneratorTable t;
    t.sig = ctx.sig;
    t.q = ctx.q;
    t.p = ctx.p;
    t.basis = ctx.basis;
    t.exact = ctx.basis->exact_quotient();
    t.cutoff = ctx.basis->cutoff();
    for (int i = 1; i <= ctx.sig.total(); ++i) {
        t.a_plus.push_back(jg_matrix(ctx, Jg::APlus, i));
        t.a_minus.push_back(jg_matrix(ctx, Jg::AMinus, i));
        t.H.push_back(jg_matrix(ctx, Jg::H, i));
        t.L.push_back(cartan_L(ctx, i, +1));
        t.Lbar.push_back(cartan_L(ctx, i, -1));
    }
    return t;
}

inline double masked_residual(const SparseMatrix& lhs, const SparseMatrix& rhs,
                              const std::vector<char>& mask) {
    double dl = lhs.max_abs_on_cols(mask);
    double dr = rhs.max_abs_on_cols(mask);
    double dd = (lhs - rhs).max_abs_on_cols(mask);
    return dd / std::max({1.0, dl, dr});
}

inline double masked_residual(const GradedOperator& lhs, const GradedOperator& rhs,
                              const std::vector<char>& mask) {
    return masked_residual(lhs.matrix(), rhs.matrix(), mask);
}

inline double masked_norm(const GradedOperator& op, const std::vector<char>& mask) {
    double d = op.matrix().max_abs_on_cols(mask);
    return d / std::max(1.0, d);
}

// ---------------------------------------------------------------------------
// Theorem-1 triple relations between the Jacobson generators

inline CheckReport check_theorem1(const GeneratorTable& t, double tol = 1e-9) {
    CheckReport rep;
    rep.tolerance = tol;
    const int nm = t.sig.total();
    const cplx qmqbar = t.q.value() - 1.0 / t.q.value();
    const std::vector<char> m0 = t.mask(0), m1 = t.mask(1), m2 = t.mask(2);

    auto tag = [](const std::string& head, std::initializer_list<int> idx,
                  const std::string& tail = {}) {
        std::string s = head;
        for (int v : idx) s += " " + std::to_string(v);
        return tail.empty() ? s : s + " " + tail;
    };

    for (int i = 1; i <= nm; ++i) {
        for (int j = i + 1; j <= nm; ++j)
            rep.record(tag("LL.HH", {i, j}),
                       masked_norm(supercommutator(t.H[i - 1], t.H[j - 1]), m0));
        for (int j = 1; j <= nm; ++j)
            for (int s : {+1, -1}) {
                // [H_i, a_j^s] = -s (1 + (-1)^{theta_i} delta_ij) a_j^s
                double f = -s * (1.0 + (t.sig.theta(i) ? -1.0 : 1.0) * (i == j ? 1.0 : 0.0));
                rep.record(tag("LL.Ha", {i, j}, s > 0 ? "+" : "-"),
                           masked_residual(supercommutator(t.H[i - 1], t.a(j, s)),
                                           t.a(j, s).scaled(f), s > 0 ? m1 : m0));
            }
        rep.record(tag("a-a+", {i}),
                   masked_residual(supercommutator(t.a(i, -1), t.a(i, +1)),
                                   t.bracket_of_H(i), m1));
    }

    for (int i = 1; i <= nm; ++i)
        for (int s : {+1, -1}) {
            for (int j = i + 1; j <= nm; ++j)
                rep.record(tag("aa", {i, j}, s > 0 ? "+" : "-"),
                           masked_norm(supercommutator(t.a(i, s), t.a(j, s), t.q.value()),
                                       s > 0 ? m1 : m0));
            if (t.sig.theta(i))
                rep.record(tag("aa.sq", {i}, s > 0 ? "+" : "-"),
                           masked_norm(t.a(i, s) * t.a(i, s), s > 0 ? m1 : m0));
        }

    // triple relations; xi is pinned by (j - i) xi > 0
    for (int i = 1; i <= nm; ++i)
        for (int j = 1; j <= nm; ++j) {
            if (i == j) continue;
            int xi = j > i ? +1 : -1;
            for (int k = 1; k <= nm; ++k)
                for (int eta : {+1, -1}) {
                    long x_exp = xi * (1 + (t.sig.theta(i) ? -1 : 1) * (i == k ? 1 : 0));
                    GradedOperator inner = supercommutator(t.a(i, eta), t.a(j, -eta));
                    GradedOperator lhs =
                        supercommutator(inner, t.a(k, eta), t.q.int_power(x_exp));

                    GradedOperator diag_term =
                        GradedOperator(SparseMatrix(lhs.matrix().rows(), lhs.matrix().cols()),
                                       lhs.parity(), t.basis);
                    if (j == k) {
                        const GradedOperator& lk = (-xi * eta > 0) ? t.L[k - 1] : t.Lbar[k - 1];
                        double etapow = (t.sig.theta(j) && eta < 0) ? -1.0 : 1.0;
                        diag_term = (lk * t.a(i, eta)).scaled(etapow);
                    }
                    int eps = (j > k && k > i) ? 1 : ((j < k && k < i) ? -1 : 0);
                    GradedOperator rhs1 = diag_term;
                    GradedOperator rhs2 = diag_term;
                    if (eps != 0) {
                        GradedOperator outer = supercommutator(t.a(k, eta), t.a(j, -eta));
                        double sk = t.sig.theta(k) ? -1.0 : 1.0;
                        double skj = (t.sig.theta(k) && t.sig.theta(j)) ? -1.0 : 1.0;
                        rhs1 = rhs1 + (outer * t.a(i, eta))
                                          .scaled(sk * static_cast<double>(eps) * qmqbar);
                        rhs2 = rhs2 + (t.a(i, eta) * outer)
                                          .scaled(skj * static_cast<double>(eps) *
                                                  t.q.int_power(xi) * qmqbar);
                    }
                    std::string base = tag("aaa", {i, j, k}, eta > 0 ? "+" : "-");
                    rep.record(base + " r1", masked_residual(lhs, rhs1, m2));
                    rep.record(base + " r2", masked_residual(lhs, rhs2, m2));
                    rep.record(base + " r12", masked_residual(rhs1, rhs2, m2));
                }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Full Cartan-Weyl relation set on the gl(n+1|m)-extended module

struct CartanWeylTable {
    ModeSignature sig;
    QParameter q = QParameter::classical();
    cplx p;
    std::shared_ptr<const FockBasis> basis;
    std::vector<std::vector<GradedOperator>> e;  // e[a][b], a, b in [0; n+m]
    std::vector<GradedOperator> H;               // [i-1], i in [1; n+m]
    std::vector<GradedOperator> Lx, Lbarx;       // [a], a in [0; n+m], L_0 = 1
    bool exact = false;
    int cutoff = 0;

    std::vector<char> mask(int excursion) const {
        return basis->degree_mask(exact ? -1 : cutoff - excursion);
    }

    // eigenvalue of e_aa on basis vector k (a = 0 gives p - degree)
    cplx eig(int a, std::size_t k) const {
        if (a == 0) return p - static_cast<double>(basis->degree(k));
        return static_cast<double>(basis->vector(k)[a - 1]);
    }

    GradedOperator qpow_diag(const std::function<cplx(std::size_t)>& exponent) const {
        std::vector<cplx> d(basis->size());
        for (std::size_t k = 0; k < basis->size(); ++k) d[k] = q.power(exponent(k));
        return GradedOperator(SparseMatrix::diagonal(d), 0, basis, "q^diag");
    }

    GradedOperator bracket_diag(const std::function<cplx(std::size_t)>& arg) const {
        std::vector<cplx> d(basis->size());
        for (std::size_t k = 0; k < basis->size(); ++k) d[k] = q.bracket(arg(k));
        return GradedOperator(SparseMatrix::diagonal(d), 0, basis, "[diag]");
    }
};

inline CartanWeylTable build_cw_table(const RepContext& ctx) {
    CartanWeylTable t;
    t.sig = ctx.sig;
    t.q = ctx.q;
    t.p = ctx.p;
    t.basis = ctx.basis;
    t.exact = ctx.basis->exact_quotient();
    t.cutoff = ctx.basis->cutoff();
    int nm = ctx.sig.total();
    t.e.resize(nm + 1);
    for (int a = 0; a <= nm; ++a)
        for (int b = 0; b <= nm; ++b) t.e[a].push_back(cw_matrix(ctx, a, b));
    for (int i = 1; i <= nm; ++i) t.H.push_back(jg_matrix(ctx, Jg::H, i));
    for (int a = 0; a <= nm; ++a) {
        t.Lx.push_back(cartan_L(ctx, a, +1));
        t.Lbarx.push_back(cartan_L(ctx, a, -1));
    }
    return t;
}

inline int theta_chain(std::initializer_list<int> descending) {
    int prev = -1;
    bool first = true;
    for (int v : descending) {
        if (!first && !(prev > v)) return 0;
        prev = v;
        first = false;
    }
    return 1;
}

inline CheckReport check_gl_relations(const CartanWeylTable& t, double tol = 1e-9) {
    CheckReport rep;
    rep.tolerance = tol;
    const int nm = t.sig.total();
    const cplx qmqbar = t.q.value() - 1.0 / t.q.value();
    const std::vector<char> mask = t.mask(2);

    auto th = [&](int a) { return t.sig.theta(a); };
    auto sgn = [&](int a) { return th(a) ? -1.0 : 1.0; };
    auto idx4 = [](const char* head, int a, int b, int c, int d) {
        return std::string(head) + " " + std::to_string(a) + std::to_string(b) + "," +
               std::to_string(c) + std::to_string(d);
    };

    // [e_aa, e_bb] = 0 and [e_aa, e_jk] = (d_aj - d_ak) e_jk
    for (int a = 0; a <= nm; ++a) {
        for (int b = a + 1; b <= nm; ++b)
            rep.record("cartan " + std::to_string(a) + "," + std::to_string(b),
                       masked_norm(supercommutator(t.e[a][a], t.e[b][b]), mask));
        for (int j = 0; j <= nm; ++j)
            for (int k = 0; k <= nm; ++k) {
                if (j == k) continue;
                double f = (a == j ? 1.0 : 0.0) - (a == k ? 1.0 : 0.0);
                rep.record(idx4("cartan-e", a, a, j, k),
                           masked_residual(supercommutator(t.e[a][a], t.e[j][k]),
                                           t.e[j][k].scaled(f), mask));
            }
    }

    // (e_jk)^2 = 0 for odd grading
    for (int j = 0; j <= nm; ++j)
        for (int k = 0; k <= nm; ++k)
            if (j != k && ((th(j) + th(k)) & 1))
                rep.record(idx4("nilp", j, k, j, k),
                           masked_norm(t.e[j][k] * t.e[j][k], mask));

    // positive x positive root vectors, ordered pairs
    std::vector<std::pair<int, int>> pos, neg;
    for (int i = 0; i <= nm; ++i)
        for (int j = 0; j <= nm; ++j) {
            if (i < j) pos.emplace_back(i, j);
            if (i > j) neg.emplace_back(i, j);
        }
    for (const auto& [i, j] : pos)
        for (const auto& [k, l] : pos) {
            if (!(i < k || (i == k && j < l))) continue;
            long x_exp = static_cast<long>(sgn(j)) * ((j == l ? 1 : 0) - (j == k ? 1 : 0)) +
                         static_cast<long>(sgn(i)) * (i == k ? 1 : 0);
            GradedOperator lhs = supercommutator(t.e[i][j], t.e[k][l], t.q.int_power(x_exp));
            GradedOperator rhs(SparseMatrix(lhs.matrix().rows(), lhs.matrix().cols()),
                               lhs.parity(), t.basis);
            if (j == k) rhs = rhs + t.e[i][l];
            if (theta_chain({l, j, k, i}))
                rhs = rhs + (t.e[k][j] * t.e[i][l]).scaled(qmqbar * sgn(k));
            rep.record(idx4("pp", i, j, k, l), masked_residual(lhs, rhs, mask));
        }

    // negative x negative root vectors, ordered pairs
    for (const auto& [i, j] : neg)
        for (const auto& [k, l] : neg) {
            if (!(i > k || (i == k && j > l))) continue;
            long x_exp = -static_cast<long>(sgn(j)) * ((j == l ? 1 : 0) - (j == k ? 1 : 0)) -
                         static_cast<long>(sgn(i)) * (i == k ? 1 : 0);
            GradedOperator lhs = supercommutator(t.e[i][j], t.e[k][l], t.q.int_power(x_exp));
            GradedOperator rhs(SparseMatrix(lhs.matrix().rows(), lhs.matrix().cols()),
                               lhs.parity(), t.basis);
            if (j == k) rhs = rhs + t.e[i][l];
            if (theta_chain({i, k, j, l}))
                rhs = rhs - (t.e[k][j] * t.e[i][l]).scaled(qmqbar * sgn(k));
            rep.record(idx4("nn", i, j, k, l), masked_residual(lhs, rhs, mask));
        }

    // positive x negative root vectors: both the gl form (diagonal q-powers
    // of e_aa) and the sl form (L_i built on the H_i weights)
    for (const auto& [i, j] : pos)
        for (const auto& [k, l] : neg) {
            GradedOperator lhs = supercommutator(t.e[i][j], t.e[k][l]);
            long rowsz = lhs.matrix().rows();
            GradedOperator mid(SparseMatrix(rowsz, rowsz), lhs.parity(), t.basis);
            GradedOperator thr(SparseMatrix(rowsz, rowsz), lhs.parity(), t.basis);
            bool have_mid = false, have_thr = false;
            if (theta_chain({j, k, i, l})) {
                mid = mid + (t.e[k][j] * t.e[i][l]).scaled(qmqbar * sgn(k));
                have_mid = true;
            }
            if (i == l && j > k) {
                double skl = ((th(k) + th(l)) & 1) ? -1.0 : 1.0;
                mid = mid - t.e[k][j].scaled(skl);
                have_mid = true;
            }
            if (j == k && i > l) {
                mid = mid + t.e[i][l];
                have_mid = true;
            }
            if (theta_chain({k, j, l, i})) {
                thr = thr - (t.e[i][l] * t.e[k][j]).scaled(qmqbar * sgn(j));
                have_thr = true;
            }
            if (i == l && k > j) {
                double sij = ((th(i) + th(j)) & 1) ? -1.0 : 1.0;
                thr = thr - t.e[k][j].scaled(sij);
                have_thr = true;
            }
            if (j == k && l > i) {
                thr = thr + t.e[i][l];
                have_thr = true;
            }

            // gl form
            {
                GradedOperator rhs(SparseMatrix(rowsz, rowsz), lhs.parity(), t.basis);
                if (i == l && j == k) {
                    double sij = ((th(i) + th(j)) & 1) ? -1.0 : 1.0;
                    rhs = rhs + t.bracket_diag([&](std::size_t v) {
                        return t.eig(i, v) - sij * t.eig(j, v);
                    });
                }
                if (have_mid)
                    rhs = rhs + mid * t.qpow_diag([&](std::size_t v) {
                              return sgn(k) * t.eig(k, v) - sgn(i) * t.eig(i, v);
                          });
                if (have_thr)
                    rhs = rhs + t.qpow_diag([&](std::size_t v) {
                              return sgn(l) * t.eig(l, v) - sgn(j) * t.eig(j, v);
                          }) * thr;
                rep.record(idx4("pn.gl", i, j, k, l), masked_residual(lhs, rhs, mask));
            }
            // sl form
            {
                GradedOperator rhs(SparseMatrix(rowsz, rowsz), lhs.parity(), t.basis);
                if (i == l && j == k) {
                    double si = sgn(i);
                    rhs = rhs + t.bracket_diag([&](std::size_t v) {
                        cplx lam_j = (j == 0) ? cplx(0.0, 0.0)
                                              : t.H[j - 1].matrix().at(static_cast<long>(v),
                                                                       static_cast<long>(v));
                        cplx lam_i = (i == 0) ? cplx(0.0, 0.0)
                                              : t.H[i - 1].matrix().at(static_cast<long>(v),
                                                                       static_cast<long>(v));
                        return si * (lam_j - lam_i);
                    });
                }
                if (have_mid) rhs = rhs + mid * (t.Lx[i] * t.Lbarx[k]);
                if (have_thr) rhs = rhs + (t.Lx[j] * t.Lbarx[l]) * thr;
                rep.record(idx4("pn.sl", i, j, k, l), masked_residual(lhs, rhs, mask));
            }
        }

    // sl Cartan relations on the H_i
    for (int i = 1; i <= nm; ++i) {
        for (int j = i + 1; j <= nm; ++j)
            rep.record("HH " + std::to_string(i) + "," + std::to_string(j),
                       masked_norm(supercommutator(t.H[i - 1], t.H[j - 1]), mask));
        for (int j = 0; j <= nm; ++j)
            for (int k = 0; k <= nm; ++k) {
                if (j == k) continue;
                double f = (j == 0 ? 1.0 : 0.0) - (k == 0 ? 1.0 : 0.0) -
                           sgn(i) * ((i == j ? 1.0 : 0.0) - (i == k ? 1.0 : 0.0));
                rep.record(idx4("He", i, i, j, k),
                           masked_residual(supercommutator(t.H[i - 1], t.e[j][k]),
                                           t.e[j][k].scaled(f), mask));
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Lemma identities behind the Theorem-2 action formulas

inline CheckReport check_lemma_identities(const GeneratorTable& t, int r_max,
                                          double tol = 1e-9) {
    CheckReport rep;
    rep.tolerance = tol;
    const int nm = t.sig.total();

    auto geo = [&](int r, int dir) {  // sum_{t<r} q^{2 dir t} = (q^{2 dir r}-1)/(q^{2 dir}-1)
        cplx s(0.0, 0.0);
        for (int u = 0; u < r; ++u) s += t.q.int_power(2L * dir * u);
        return s;
    };
    auto tag = [](const char* head, std::initializer_list<int> idx, int r) {
        std::string s = head;
        for (int v : idx) s += " " + std::to_string(v);
        return s + " r=" + std::to_string(r);
    };

    for (int i = 1; i <= nm; ++i)
        for (int j = 1; j <= nm; ++j) {
            if (i == j) continue;
            int top = t.sig.theta(j) ? 1 : r_max;
            for (int r = 1; r <= top; ++r) {
                GradedOperator lhs = supercommutator(t.a(i, -1), t.a(j, +1).pow(r));
                GradedOperator rhs =
                    (t.a(j, +1).pow(r - 1) * supercommutator(t.a(i, -1), t.a(j, +1)))
                        .scaled(geo(r, i < j ? -1 : +1));
                rep.record(tag("46", {i, j}, r), masked_residual(lhs, rhs, t.mask(r)));
            }
        }

    for (int i = 1; i <= nm; ++i) {
        int top = t.sig.theta(i) ? 1 : r_max;
        for (int r = 1; r <= top; ++r) {
            GradedOperator lhs = supercommutator(t.a(i, -1), t.a(i, +1).pow(r));
            // (qbar^{2r}-1)/(qbar^2-1) L_i - (q^{2r}-1)/(q^2-1) Lbar_i, all over
            // q - qbar, resummed as sum_{u<r} [H_i - 2u] so the classical mode
            // stays well-defined
            std::vector<cplx> d = t.H[i - 1].matrix().diagonal_values();
            for (cplx& lam : d) {
                cplx s(0.0, 0.0);
                for (int u = 0; u < r; ++u) s += t.q.bracket(lam - 2.0 * u);
                lam = s;
            }
            GradedOperator rhs = t.a(i, +1).pow(r - 1) *
                                 GradedOperator(SparseMatrix::diagonal(d), 0, t.basis);
            rep.record(tag("47", {i}, r), masked_residual(lhs, rhs, t.mask(r)));
        }
    }

    for (int i = 1; i <= nm; ++i)
        for (int j = 1; j < i; ++j) {
            int top = t.sig.theta(i) ? 1 : r_max;
            for (int r = 1; r <= top; ++r) {
                GradedOperator inner = supercommutator(t.a(i, -1), t.a(j, +1));
                GradedOperator lhs =
                    supercommutator(inner, t.a(i, +1).pow(r), t.q.int_power(r));
                double sign = t.sig.theta(j) ? 1.0 : -1.0;
                GradedOperator rhs = (t.Lbar[i - 1] * t.a(j, +1) * t.a(i, +1).pow(r - 1))
                                         .scaled(sign * geo(r, -1));
                rep.record(tag("48", {i, j}, r), masked_residual(lhs, rhs, t.mask(r + 1)));
            }
        }

    for (int i = 1; i <= nm; ++i)
        for (int k = 1; k < i; ++k)
            for (int j = 1; j < k; ++j) {
                int top = t.sig.theta(k) ? 1 : r_max;
                for (int r = 1; r <= top; ++r) {
                    GradedOperator inner = supercommutator(t.a(i, -1), t.a(j, +1));
                    GradedOperator lhs =
                        supercommutator(inner, t.a(k, +1).pow(r), t.q.int_power(r));
                    double sign = t.sig.theta(j) ? -1.0 : 1.0;
                    cplx f = sign * (t.q.int_power(2L * r) - 1.0);
                    GradedOperator rhs = (t.a(j, +1) * t.a(k, +1).pow(r - 1) *
                                          supercommutator(t.a(i, -1), t.a(k, +1)))
                                             .scaled(f);
                    rep.record(tag("49", {i, k, j}, r),
                               masked_residual(lhs, rhs, t.mask(r + 1)));
                }
            }

    // Lemma 2, applied to every vacuum-generated vector with r_1 = 0
    for (int i = 2; i <= nm; ++i) {
        GradedOperator lhs_op = supercommutator(t.a(i, -1), t.a(1, +1));
        double worst = 0.0;
        for (std::size_t k = 0; k < t.basis->size(); ++k) {
            const Occupation& v = t.basis->vector(k);
            if (v[0] != 0) continue;
            int deg = t.basis->degree(k);
            if (!t.exact && deg > t.cutoff - 1) continue;
            std::vector<cplx> unit(t.basis->size(), cplx(0.0, 0.0));
            unit[k] = 1.0;
            std::vector<cplx> lhs = lhs_op.matrix().apply(unit);
            std::vector<cplx> rhs(t.basis->size(), cplx(0.0, 0.0));
            if (v[i - 1] > 0) {
                Occupation w = v;
                ++w[0];
                --w[i - 1];
                long row = t.basis->rank(w);
                int sign_exp = t.sig.theta(1);
                cplx q_exp(0.0, 0.0);
                for (int l = 2; l < i; ++l) {
                    sign_exp += t.sig.theta(l) * v[l - 1];
                    q_exp += 2.0 * v[l - 1];
                }
                for (int l = i; l <= nm; ++l) q_exp += static_cast<double>(v[l - 1]);
                q_exp -= t.p;
                cplx coeff = -((sign_exp & 1) ? -1.0 : 1.0) * t.q.power(q_exp) *
                             t.q.bracket(cplx(static_cast<double>(v[i - 1]), 0.0));
                rhs[static_cast<std::size_t>(row)] = coeff;
            }
            double mx = 0.0, dl = 0.0;
            for (std::size_t u = 0; u < lhs.size(); ++u) {
                mx = std::max(mx, std::abs(lhs[u] - rhs[u]));
                dl = std::max({dl, std::abs(lhs[u]), std::abs(rhs[u])});
            }
            worst = std::max(worst, mx / std::max(1.0, dl));
        }
        rep.record("51a " + std::to_string(i), worst);
    }
    return rep;
}

}  // namespace qsl
