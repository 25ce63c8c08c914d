#pragma once

// Boson-fermion oscillator algebra W(n|m) on a truncated Fock space, and
// the Dyson / Holstein-Primakoff realization maps for all generators.
//
// Realized operators are products of ladder steps and diagonal functions of
// the number operators.  Products are evaluated right-to-left on each basis
// column, so a diagonal function always sees the eigenvalue of the state it
// acts on; apparent 0/0 factors such as [N_i]/N_i left of c_i^+ are
// evaluated on the post-raising eigenvalue and never degenerate.

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qsl/relations.hpp"

namespace qsl {

enum class OscNormalization { Monomial, Normalized };

struct OscFockSpace {
    ModeSignature sig;
    int cutoff = 0;
    OscNormalization norm = OscNormalization::Monomial;
    std::shared_ptr<const FockBasis> basis;
};

inline OscFockSpace make_osc_space(ModeSignature sig, int cutoff, OscNormalization norm) {
    if (cutoff < 0) throw std::domain_error("OscFockSpace: cutoff must be >= 0");
    return OscFockSpace{sig, cutoff, norm,
                        make_basis(sig, cplx(static_cast<double>(cutoff), 0.0), cutoff)};
}

namespace detail {

struct OpFactor {
    int mode = 0;  // 0: diagonal factor, otherwise ladder on this mode
    int dir = 0;   // +1 raise, -1 lower
    std::function<cplx(const Occupation&)> fn;

    static OpFactor ladder(int mode, int dir) { return OpFactor{mode, dir, nullptr}; }
    static OpFactor diag(std::function<cplx(const Occupation&)> f) {
        return OpFactor{0, 0, std::move(f)};
    }
};

// product of the factors (leftmost factor acts last), evaluated columnwise
inline GradedOperator eval_factors(const OscFockSpace& space,
                                   const std::vector<OpFactor>& factors, int parity,
                                   std::string label) {
    const FockBasis& basis = *space.basis;
    const ModeSignature& sig = space.sig;
    long dim = static_cast<long>(basis.size());
    SparseMatrix mat(dim, dim);
    for (long k = 0; k < dim; ++k) {
        Occupation occ = basis.vector(k);
        int degree = basis.degree(static_cast<std::size_t>(k));
        cplx coeff(1.0, 0.0);
        bool alive = true;
        for (auto it = factors.rbegin(); it != factors.rend() && alive; ++it) {
            if (it->mode == 0) {
                coeff *= it->fn(occ);
                if (coeff == cplx(0.0, 0.0)) alive = false;
                continue;
            }
            int i = it->mode;
            if (sig.theta(i)) {
                int pref = 0;
                for (int j = sig.n + 1; j < i; ++j) pref += occ[j - 1];
                if (pref & 1) coeff = -coeff;
            }
            if (it->dir > 0) {
                if ((sig.theta(i) && occ[i - 1] == 1) || degree + 1 > space.cutoff) {
                    alive = false;  // occupancy cap or truncation/quotient projection
                    continue;
                }
                if (space.norm == OscNormalization::Normalized)
                    coeff *= std::sqrt(static_cast<double>(occ[i - 1] + 1));
                ++occ[i - 1];
                ++degree;
            } else {
                if (occ[i - 1] == 0) {
                    alive = false;
                    continue;
                }
                coeff *= (space.norm == OscNormalization::Normalized)
                             ? std::sqrt(static_cast<double>(occ[i - 1]))
                             : static_cast<double>(occ[i - 1]);
                --occ[i - 1];
                --degree;
            }
        }
        if (!alive || coeff == cplx(0.0, 0.0)) continue;
        long row = basis.rank(occ);
        mat.add(row, k, coeff);
    }
    return GradedOperator(std::move(mat), parity, space.basis, std::move(label));
}

inline int occ_sum(const Occupation& l) {
    int s = 0;
    for (int v : l) s += v;
    return s;
}

}  // namespace detail

enum class Osc { CPlus, CMinus, Number, TotalNumber };

inline GradedOperator osc_matrix(const OscFockSpace& space, Osc which, int i = 0) {
    using detail::OpFactor;
    int nm = space.sig.total();
    if ((which == Osc::CPlus || which == Osc::CMinus || which == Osc::Number) &&
        (i < 1 || i > nm))
        throw std::out_of_range("osc_matrix: mode index");
    switch (which) {
    case Osc::CPlus:
        return detail::eval_factors(space, {OpFactor::ladder(i, +1)}, space.sig.theta(i),
                                    "c" + std::to_string(i) + "+");
    case Osc::CMinus:
        return detail::eval_factors(space, {OpFactor::ladder(i, -1)}, space.sig.theta(i),
                                    "c" + std::to_string(i) + "-");
    case Osc::Number:
        return detail::eval_factors(
            space, {OpFactor::diag([i](const Occupation& l) {
                return cplx(static_cast<double>(l[i - 1]), 0.0);
            })},
            0, "N" + std::to_string(i));
    case Osc::TotalNumber:
        return detail::eval_factors(space, {OpFactor::diag([](const Occupation& l) {
                                        return cplx(static_cast<double>(detail::occ_sum(l)), 0.0);
                                    })},
                                    0, "N");
    }
    throw std::logic_error("osc_matrix: unknown operator");
}

enum class DefOsc { Plus, Minus };

// q-deformed oscillators c~ on the normalized space; square roots use the
// principal branch so the operators stay defined beyond the positivity
// window (entries there pick up imaginary parts)
inline GradedOperator deformed_osc_matrix(const OscFockSpace& space, const QParameter& q,
                                          DefOsc which, int i) {
    using detail::OpFactor;
    if (space.norm != OscNormalization::Normalized)
        throw std::domain_error("deformed oscillators require the normalized space");
    if (i < 1 || i > space.sig.total()) throw std::out_of_range("deformed_osc_matrix: mode");
    if (which == DefOsc::Minus) {
        auto f = OpFactor::diag([q, i](const Occupation& l) {
            double v = static_cast<double>(l[i - 1] + 1);
            return std::sqrt(q.bracket(cplx(v, 0.0)) / v);
        });
        return detail::eval_factors(space, {f, OpFactor::ladder(i, -1)}, space.sig.theta(i),
                                    "c~" + std::to_string(i) + "-");
    }
    auto f = OpFactor::diag([q, i](const Occupation& l) {
        double v = static_cast<double>(l[i - 1]);
        return std::sqrt(q.bracket(cplx(v, 0.0)) / v);
    });
    return detail::eval_factors(space, {f, OpFactor::ladder(i, +1)}, space.sig.theta(i),
                                "c~" + std::to_string(i) + "+");
}

enum class RealizationKind { Dyson, HP, HPDeformed };

struct RealizationMap {
    RealizationKind kind = RealizationKind::Dyson;
    cplx p;
    QParameter q = QParameter::classical();
    OscFockSpace space;
};

inline RealizationMap make_realization(RealizationKind kind, cplx p, QParameter q,
                                       ModeSignature sig, int cutoff) {
    OscNormalization norm = (kind == RealizationKind::Dyson) ? OscNormalization::Monomial
                                                             : OscNormalization::Normalized;
    return RealizationMap{kind, p, q, make_osc_space(sig, cutoff, norm)};
}

namespace detail {

inline OpFactor prefix_qpow(const QParameter& q, int i, int sign) {
    return OpFactor::diag([q, i, sign](const Occupation& l) {
        long s = 0;
        for (int j = 0; j < i - 1; ++j) s += l[j];
        return q.int_power(sign * s);
    });
}

// q^{2 theta_a (N_a - 1) + N_{a+1} + ... + N_{b-1}}   (a < b), or
// qbar^{2 theta_b N_b + N_{b+1} + ... + N_{a-1}}      (a > b);
// the summation in the exponent is empty for adjacent indices
inline OpFactor cw_qpow(const QParameter& q, ModeSignature sig, int a, int b) {
    if (a < b)
        return OpFactor::diag([q, sig, a, b](const Occupation& l) {
            long e = 2L * sig.theta(a) * (l[a - 1] - 1);
            for (int t = a + 1; t < b; ++t) e += l[t - 1];
            return q.int_power(e);
        });
    return OpFactor::diag([q, sig, a, b](const Occupation& l) {
        long e = 2L * sig.theta(b) * l[b - 1];
        for (int t = b + 1; t < a; ++t) e += l[t - 1];
        return q.int_power(-e);
    });
}

}  // namespace detail

inline GradedOperator realize(const RealizationMap& map, Jg gen, int i) {
    using detail::OpFactor;
    const ModeSignature& sig = map.space.sig;
    if (i < 1 || i > sig.total()) throw std::out_of_range("realize: mode index");
    const QParameter q = map.q;
    const cplx p = map.p;
    std::string name = (gen == Jg::H ? "H" : "a") + std::to_string(i) +
                       (gen == Jg::APlus ? "+" : (gen == Jg::AMinus ? "-" : ""));

    if (gen == Jg::H) {
        double sg = sig.theta(i) ? 1.0 : -1.0;
        return detail::eval_factors(
            map.space, {OpFactor::diag([p, sg, i](const Occupation& l) {
                return p + sg * static_cast<double>(l[i - 1]) -
                       static_cast<double>(detail::occ_sum(l));
            })},
            0, name);
    }

    std::vector<OpFactor> fs;
    switch (map.kind) {
    case RealizationKind::Dyson:
        if (gen == Jg::AMinus) {
            fs.push_back(detail::prefix_qpow(q, i, +1));
            fs.push_back(OpFactor::diag([q, i](const Occupation& l) {
                double v = static_cast<double>(l[i - 1] + 1);
                return q.bracket(cplx(v, 0.0)) / v;
            }));
            fs.push_back(OpFactor::diag([q, p](const Occupation& l) {
                return q.bracket(p - static_cast<double>(detail::occ_sum(l)));
            }));
            fs.push_back(OpFactor::ladder(i, -1));
        } else {
            fs.push_back(detail::prefix_qpow(q, i, -1));
            fs.push_back(OpFactor::ladder(i, +1));
        }
        break;
    case RealizationKind::HP:
        if (gen == Jg::AMinus) {
            fs.push_back(detail::prefix_qpow(q, i, +1));
            fs.push_back(OpFactor::diag([q, p, i](const Occupation& l) {
                double v = static_cast<double>(l[i - 1] + 1);
                return std::sqrt(q.bracket(cplx(v, 0.0)) / v *
                                 q.bracket(p - static_cast<double>(detail::occ_sum(l))));
            }));
            fs.push_back(OpFactor::ladder(i, -1));
        } else {
            fs.push_back(detail::prefix_qpow(q, i, -1));
            fs.push_back(OpFactor::diag([q, p, i](const Occupation& l) {
                double v = static_cast<double>(l[i - 1]);
                return std::sqrt(q.bracket(cplx(v, 0.0)) / v *
                                 q.bracket(p - static_cast<double>(detail::occ_sum(l)) + 1.0));
            }));
            fs.push_back(OpFactor::ladder(i, +1));
        }
        break;
    case RealizationKind::HPDeformed:
        if (gen == Jg::AMinus) {
            fs.push_back(detail::prefix_qpow(q, i, +1));
            fs.push_back(OpFactor::diag([q, p](const Occupation& l) {
                return std::sqrt(q.bracket(p - static_cast<double>(detail::occ_sum(l))));
            }));
            fs.push_back(OpFactor::diag([q, i](const Occupation& l) {
                double v = static_cast<double>(l[i - 1] + 1);
                return std::sqrt(q.bracket(cplx(v, 0.0)) / v);
            }));
            fs.push_back(OpFactor::ladder(i, -1));
        } else {
            fs.push_back(detail::prefix_qpow(q, i, -1));
            fs.push_back(OpFactor::diag([q, p](const Occupation& l) {
                return std::sqrt(q.bracket(p - static_cast<double>(detail::occ_sum(l)) + 1.0));
            }));
            fs.push_back(OpFactor::diag([q, i](const Occupation& l) {
                double v = static_cast<double>(l[i - 1]);
                return std::sqrt(q.bracket(cplx(v, 0.0)) / v);
            }));
            fs.push_back(OpFactor::ladder(i, +1));
        }
        break;
    }
    return detail::eval_factors(map.space, fs, sig.theta(i), name);
}

// Cartan-Weyl image e_{ab}, a, b in [0; n+m]
inline GradedOperator realize_cw(const RealizationMap& map, int a, int b) {
    using detail::OpFactor;
    const ModeSignature& sig = map.space.sig;
    int nm = sig.total();
    if (a < 0 || a > nm || b < 0 || b > nm) throw std::out_of_range("realize_cw: index");
    const QParameter q = map.q;
    const cplx p = map.p;
    std::string name = "e" + std::to_string(a) + std::to_string(b);

    if (a == 0 && b == 0)
        return detail::eval_factors(map.space, {OpFactor::diag([p](const Occupation& l) {
                                        return p - static_cast<double>(detail::occ_sum(l));
                                    })},
                                    0, name);
    if (a == b)
        return detail::eval_factors(map.space, {OpFactor::diag([a](const Occupation& l) {
                                        return cplx(static_cast<double>(l[a - 1]), 0.0);
                                    })},
                                    0, name);
    if (a == 0) return realize(map, Jg::AMinus, b);
    if (b == 0) return realize(map, Jg::APlus, a);

    std::vector<OpFactor> fs;
    fs.push_back(detail::cw_qpow(q, sig, a, b));
    switch (map.kind) {
    case RealizationKind::Dyson:
        fs.push_back(OpFactor::diag([q, b](const Occupation& l) {
            double v = static_cast<double>(l[b - 1] + 1);
            return q.bracket(cplx(v, 0.0)) / v;
        }));
        fs.push_back(OpFactor::ladder(a, +1));
        fs.push_back(OpFactor::ladder(b, -1));
        break;
    case RealizationKind::HP:
        fs.push_back(OpFactor::diag([q, a, b](const Occupation& l) {
            double va = static_cast<double>(l[a - 1]);
            double vb = static_cast<double>(l[b - 1] + 1);
            return std::sqrt(q.bracket(cplx(va, 0.0)) / va * q.bracket(cplx(vb, 0.0)) / vb);
        }));
        fs.push_back(OpFactor::ladder(a, +1));
        fs.push_back(OpFactor::ladder(b, -1));
        break;
    case RealizationKind::HPDeformed:
        fs.push_back(OpFactor::diag([q, a](const Occupation& l) {
            double v = static_cast<double>(l[a - 1]);
            return std::sqrt(q.bracket(cplx(v, 0.0)) / v);
        }));
        fs.push_back(OpFactor::ladder(a, +1));
        fs.push_back(OpFactor::diag([q, b](const Occupation& l) {
            double v = static_cast<double>(l[b - 1] + 1);
            return std::sqrt(q.bracket(cplx(v, 0.0)) / v);
        }));
        fs.push_back(OpFactor::ladder(b, -1));
        break;
    }
    return detail::eval_factors(map.space, fs, (sig.theta(a) + sig.theta(b)) & 1, name);
}

inline GeneratorTable build_generator_table(const RealizationMap& map) {
    GeneratorTable t;
    t.sig = map.space.sig;
    t.q = map.q;
    t.p = map.p;
    t.basis = map.space.basis;
    long pint = -1;
    t.exact = is_nonneg_int(map.p, map.q.tolerance(), &pint) && pint == map.space.cutoff;
    t.cutoff = map.space.cutoff;
    for (int i = 1; i <= t.sig.total(); ++i) {
        t.a_plus.push_back(realize(map, Jg::APlus, i));
        t.a_minus.push_back(realize(map, Jg::AMinus, i));
        t.H.push_back(realize(map, Jg::H, i));
        std::vector<cplx> lam = t.H.back().matrix().diagonal_values();
        std::vector<cplx> lp(lam.size()), lm(lam.size());
        for (std::size_t k = 0; k < lam.size(); ++k) {
            lp[k] = map.q.power(lam[k]);
            lm[k] = map.q.power(-lam[k]);
        }
        t.L.emplace_back(SparseMatrix::diagonal(lp), 0, t.basis, "L" + std::to_string(i));
        t.Lbar.emplace_back(SparseMatrix::diagonal(lm), 0, t.basis, "Lbar" + std::to_string(i));
    }
    return t;
}

// every Theorem-1 relation with the generators replaced by their images
inline CheckReport check_homomorphism(const RealizationMap& map, double tol = 1e-9) {
    return check_theorem1(build_generator_table(map), tol);
}

// max entrywise deviation between realized Jacobson generators and the
// module matrices under the identification |l> == |p;l>
inline double check_equivalence(const RealizationMap& map, const RepContext& ctx) {
    if (map.space.basis->size() != ctx.basis->size())
        throw std::invalid_argument("check_equivalence: basis shapes differ");
    double dev = 0.0;
    for (int i = 1; i <= map.space.sig.total(); ++i)
        for (Jg g : {Jg::H, Jg::APlus, Jg::AMinus})
            dev = std::max(dev,
                           (realize(map, g, i).matrix() - jg_matrix(ctx, g, i).matrix()).max_abs());
    return dev;
}

// realized e_{ab} against the operator obtained by solving
// [[a_i^-, a_j^+]] = -(-1)^theta L e for e from the realized images
inline double cw_consistency(const RealizationMap& map) {
    GeneratorTable t = build_generator_table(map);
    const ModeSignature& sig = map.space.sig;
    std::vector<char> mask = t.mask(1);
    double dev = 0.0;
    for (int a = 1; a <= sig.total(); ++a)
        for (int b = 1; b <= sig.total(); ++b) {
            if (a == b) continue;
            GradedOperator direct = realize_cw(map, a, b);
            GradedOperator br = supercommutator(t.a(b, -1), t.a(a, +1));
            GradedOperator via = (b < a) ? (t.Lbar[b - 1] * br).scaled(sig.theta(b) ? 1.0 : -1.0)
                                         : (br * t.L[a - 1]).scaled(sig.theta(a) ? 1.0 : -1.0);
            dev = std::max(dev, (direct.matrix() - via.matrix()).max_abs_on_cols(mask));
        }
    return dev;
}

// true iff no realized generator connects span{sum l > p} back to the
// quotient: matrix entries from a column of degree > p to a row of degree
// <= p must be structurally absent
inline bool invariant_subspace_check(const RealizationMap& map) {
    long pint = -1;
    if (!is_nonneg_int(map.p, map.q.tolerance(), &pint))
        throw std::domain_error("invariant_subspace_check: p must be a nonnegative integer");
    const FockBasis& basis = *map.space.basis;
    auto violates = [&](const GradedOperator& op) {
        for (const MatrixEntry& en : op.matrix().entries())
            if (basis.degree(static_cast<std::size_t>(en.col)) > pint &&
                basis.degree(static_cast<std::size_t>(en.row)) <= pint)
                return true;
        return false;
    };
    for (int i = 1; i <= map.space.sig.total(); ++i) {
        if (violates(realize(map, Jg::H, i))) return false;
        if (violates(realize(map, Jg::APlus, i))) return false;
        if (violates(realize(map, Jg::AMinus, i))) return false;
    }
    for (int a = 0; a <= map.space.sig.total(); ++a)
        for (int b = 0; b <= map.space.sig.total(); ++b)
            if (violates(realize_cw(map, a, b))) return false;
    return true;
}

// oscillator algebra relations on the truncation interior
inline CheckReport check_oscillator_relations(const OscFockSpace& space, const QParameter& q,
                                              double tol = 1e-9) {
    CheckReport rep;
    rep.tolerance = tol;
    int nm = space.sig.total();
    std::vector<char> mask = space.basis->degree_mask(space.cutoff - 1);
    long dim = static_cast<long>(space.basis->size());
    auto tag = [](const char* head, int i, int j, const char* tail = "") {
        return std::string(head) + " " + std::to_string(i) + "," + std::to_string(j) + tail;
    };

    std::vector<GradedOperator> cp, cm;
    for (int i = 1; i <= nm; ++i) {
        cp.push_back(osc_matrix(space, Osc::CPlus, i));
        cm.push_back(osc_matrix(space, Osc::CMinus, i));
    }
    for (int i = 1; i <= nm; ++i)
        for (int j = 1; j <= nm; ++j) {
            SparseMatrix delta =
                (i == j) ? SparseMatrix::identity(dim) : SparseMatrix(dim, dim);
            rep.record(tag("cc", i, j),
                       masked_residual(supercommutator(cm[i - 1], cp[j - 1]).matrix(), delta,
                                       mask));
            rep.record(tag("c+c+", i, j),
                       masked_norm(supercommutator(cp[i - 1], cp[j - 1]), mask));
            rep.record(tag("c-c-", i, j),
                       masked_norm(supercommutator(cm[i - 1], cm[j - 1]), mask));
        }

    if (space.norm == OscNormalization::Normalized) {
        std::vector<GradedOperator> dp, dm, num;
        for (int i = 1; i <= nm; ++i) {
            dp.push_back(deformed_osc_matrix(space, q, DefOsc::Plus, i));
            dm.push_back(deformed_osc_matrix(space, q, DefOsc::Minus, i));
            num.push_back(osc_matrix(space, Osc::Number, i));
        }
        for (int i = 1; i <= nm; ++i)
            for (int j = 1; j <= nm; ++j) {
                SparseMatrix rhs(dim, dim);
                if (i == j) {
                    double sg = space.sig.theta(i) ? -1.0 : 1.0;
                    for (long k = 0; k < dim; ++k)
                        rhs.add(k, k,
                                q.int_power(-static_cast<long>(
                                    sg * space.basis->vector(static_cast<std::size_t>(k))[i - 1])));
                }
                rep.record(tag("dcc", i, j),
                           masked_residual(
                               supercommutator(dm[i - 1], dp[j - 1], q.int_power(i == j)).matrix(),
                               rhs, mask));
                double d = (i == j) ? 1.0 : 0.0;
                rep.record(tag("dN+", i, j),
                           masked_residual(supercommutator(num[i - 1], dp[j - 1]),
                                           dp[j - 1].scaled(d), mask));
                rep.record(tag("dN-", i, j),
                           masked_residual(supercommutator(num[i - 1], dm[j - 1]),
                                           dm[j - 1].scaled(-d), mask));
                rep.record(tag("d++", i, j),
                           masked_norm(supercommutator(dp[i - 1], dp[j - 1]), mask));
                rep.record(tag("d--", i, j),
                           masked_norm(supercommutator(dm[i - 1], dm[j - 1]), mask));
                rep.record(tag("dNN", i, j),
                           masked_norm(supercommutator(num[i - 1], num[j - 1]), mask));
            }
    }
    return rep;
}

}  // namespace qsl
