#pragma once

// Matrix representations of U_q[sl(n+1|m)] on the Fock modules W_p (p a
// nonnegative integer) and on degree-truncations of the infinite module
// that exists for generic complex p.
//
// Jacobson generators a_i^+, a_i^-, H_i act columnwise through the closed
// transformation formulas; the remaining Cartan-Weyl elements e_{ab} come
// either from the printed orthonormal-basis actions or, in the unnormalized
// basis, from solving [[a_i^-, a_j^+]] = -(-1)^{theta} L e_{ji} for e_{ji}.

#include <algorithm>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "qsl/fock_basis.hpp"
#include "qsl/qnum.hpp"
#include "qsl/sparse.hpp"

namespace qsl {

enum class Normalization { Unnormalized, Orthonormal };

enum class Jg { H, APlus, AMinus };

struct RepContext {
    ModeSignature sig;
    cplx p;
    QParameter q;
    Normalization norm;
    std::shared_ptr<const FockBasis> basis;
};

namespace detail {

// strictly-positive real bracket required by the orthonormal basis
inline double positive_bracket(const QParameter& q, cplx x, const char* what) {
    cplx b = q.bracket(x);
    double scale = std::max(1.0, std::abs(b));
    if (std::abs(b.imag()) > q.tolerance() * scale)
        throw std::domain_error(std::string("unitarity domain: complex bracket in ") + what);
    if (b.real() <= 0.0)
        throw std::domain_error(std::string("unitarity domain: nonpositive bracket in ") + what);
    return b.real();
}

inline double sqrt_checked(const QParameter& q, cplx v, const char* what) {
    double scale = std::max(1.0, std::abs(v));
    if (std::abs(v.imag()) > q.tolerance() * scale)
        throw std::domain_error(std::string("unitarity domain: complex value under root in ") + what);
    if (v.real() < -q.tolerance() * scale)
        throw std::domain_error(std::string("unitarity domain: negative value under root in ") + what);
    return std::sqrt(std::max(v.real(), 0.0));
}

}  // namespace detail

inline RepContext make_rep_context(ModeSignature sig, cplx p, QParameter q, int cutoff,
                                   Normalization norm) {
    RepContext ctx{sig, p, q, norm, nullptr};
    if (norm == Normalization::Orthonormal) {
        long pint = -1;
        if (!is_nonneg_int(p, q.tolerance(), &pint))
            throw std::domain_error("Orthonormal mode requires p to be a nonnegative integer");
        if (cutoff > pint)
            throw std::domain_error("Orthonormal mode: cutoff cannot exceed p");
        // brackets feeding [r_i]! and [p]!/[p-R]! over the enumerated window
        for (long k = 1; k <= std::min<long>(pint, cutoff); ++k)
            detail::positive_bracket(q, cplx(static_cast<double>(k), 0.0), "orthonormal basis");
        for (long k = std::max<long>(1, pint - cutoff); k <= pint; ++k)
            detail::positive_bracket(q, cplx(static_cast<double>(k), 0.0), "orthonormal basis");
        ctx.p = cplx(static_cast<double>(pint), 0.0);
    }
    ctx.basis = make_basis(sig, ctx.p, cutoff);
    return ctx;
}

// H_i eigenvalue p - (-1)^{theta_i} r_i - sum_j r_j on |p;r>
inline cplx weight(const RepContext& ctx, const Occupation& r, int i) {
    int degree = 0;
    for (int v : r) degree += v;
    double sign = ctx.sig.theta(i) ? 1.0 : -1.0;
    return ctx.p + sign * static_cast<double>(r[i - 1]) - static_cast<double>(degree);
}

inline GradedOperator jg_matrix(const RepContext& ctx, Jg gen, int i) {
    const FockBasis& basis = *ctx.basis;
    const ModeSignature& sig = ctx.sig;
    if (i < 1 || i > sig.total()) throw std::out_of_range("jg_matrix: mode index");
    long dim = static_cast<long>(basis.size());
    SparseMatrix mat(dim, dim);
    bool ortho = ctx.norm == Normalization::Orthonormal;

    switch (gen) {
    case Jg::H: {
        for (long k = 0; k < dim; ++k) mat.add(k, k, weight(ctx, basis.vector(k), i));
        return GradedOperator(std::move(mat), 0, ctx.basis, "H" + std::to_string(i));
    }
    case Jg::AMinus: {
        for (long k = 0; k < dim; ++k) {
            const Occupation& r = basis.vector(k);
            if (r[i - 1] == 0) continue;
            int degree = basis.degree(k);
            GradingData g = grading_data(sig, r, i);
            Occupation target = r;
            --target[i - 1];
            long row = basis.rank(target);
            cplx ri = ctx.q.bracket(cplx(static_cast<double>(r[i - 1]), 0.0));
            cplx tail = ctx.q.bracket(ctx.p - static_cast<double>(degree) + 1.0);
            cplx coeff = static_cast<double>(g.prefix_sign) * ctx.q.int_power(g.prefix_degree);
            coeff *= ortho ? cplx(detail::sqrt_checked(ctx.q, ri * tail, "a^-"), 0.0)
                           : ri * tail;
            mat.add(row, k, coeff);
        }
        return GradedOperator(std::move(mat), sig.theta(i), ctx.basis, "a" + std::to_string(i) + "-");
    }
    case Jg::APlus: {
        for (long k = 0; k < dim; ++k) {
            const Occupation& r = basis.vector(k);
            if (sig.theta(i) && r[i - 1] == 1) continue;
            Occupation target = r;
            ++target[i - 1];
            long row = basis.rank(target);
            if (row < 0) continue;  // quotient / truncation projection
            int degree = basis.degree(k);
            GradingData g = grading_data(sig, r, i);
            cplx coeff = static_cast<double>(g.prefix_sign) * ctx.q.int_power(-g.prefix_degree);
            if (ortho) {
                cplx up = ctx.q.bracket(cplx(static_cast<double>(r[i - 1] + 1), 0.0));
                cplx tail = ctx.q.bracket(ctx.p - static_cast<double>(degree));
                coeff *= detail::sqrt_checked(ctx.q, up * tail, "a^+");
            }
            mat.add(row, k, coeff);
        }
        return GradedOperator(std::move(mat), sig.theta(i), ctx.basis, "a" + std::to_string(i) + "+");
    }
    }
    throw std::logic_error("jg_matrix: unknown generator");
}

// q^{sign H_i} as an exact diagonal on the integer (or complex) weights;
// index 0 gives the identity since H_0 = 0
inline GradedOperator cartan_L(const RepContext& ctx, int i, int sign) {
    long dim = static_cast<long>(ctx.basis->size());
    if (i == 0)
        return GradedOperator(SparseMatrix::identity(dim), 0, ctx.basis, "1");
    SparseMatrix mat(dim, dim);
    for (long k = 0; k < dim; ++k)
        mat.add(k, k, ctx.q.power(static_cast<double>(sign) * weight(ctx, ctx.basis->vector(k), i)));
    return GradedOperator(std::move(mat), 0, ctx.basis,
                          std::string(sign > 0 ? "L" : "Lbar") + std::to_string(i));
}

// Cartan-Weyl element e_{ab}, a, b in [0; n+m].  e_{0b} = a_b^-,
// e_{a0} = a_a^+, e_{aa} and e_{00} are diagonal, and the mixed e_{ab}
// follow the printed orthonormal actions or the supercommutator route.
inline GradedOperator cw_matrix(const RepContext& ctx, int a, int b) {
    const ModeSignature& sig = ctx.sig;
    const FockBasis& basis = *ctx.basis;
    int nm = sig.total();
    if (a < 0 || a > nm || b < 0 || b > nm) throw std::out_of_range("cw_matrix: index");
    long dim = static_cast<long>(basis.size());
    std::string label = "e" + std::to_string(a) + std::to_string(b);

    if (a == 0 && b == 0) {
        SparseMatrix mat(dim, dim);
        for (long k = 0; k < dim; ++k)
            mat.add(k, k, ctx.p - static_cast<double>(basis.degree(k)));
        return GradedOperator(std::move(mat), 0, ctx.basis, label);
    }
    if (a == b) {
        SparseMatrix mat(dim, dim);
        for (long k = 0; k < dim; ++k)
            mat.add(k, k, static_cast<double>(basis.vector(k)[a - 1]));
        return GradedOperator(std::move(mat), 0, ctx.basis, label);
    }
    if (a == 0) return jg_matrix(ctx, Jg::AMinus, b);
    if (b == 0) return jg_matrix(ctx, Jg::APlus, a);

    if (ctx.norm == Normalization::Unnormalized) {
        GradedOperator br = supercommutator(jg_matrix(ctx, Jg::AMinus, b),
                                            jg_matrix(ctx, Jg::APlus, a));
        double sign;
        GradedOperator out;
        if (b < a) {
            sign = sig.theta(b) ? 1.0 : -1.0;
            out = (cartan_L(ctx, b, -1) * br).scaled(sign);
        } else {
            sign = sig.theta(a) ? 1.0 : -1.0;
            out = (br * cartan_L(ctx, a, +1)).scaled(sign);
        }
        return GradedOperator(out.matrix(), (sig.theta(a) + sig.theta(b)) & 1, ctx.basis, label);
    }

    // orthonormal basis, printed actions
    SparseMatrix mat(dim, dim);
    for (long k = 0; k < dim; ++k) {
        const Occupation& r = basis.vector(k);
        if (r[b - 1] == 0) continue;
        if (sig.theta(a) && r[a - 1] == 1) continue;
        Occupation target = r;
        --target[b - 1];
        ++target[a - 1];
        long row = basis.rank(target);
        if (row < 0) continue;
        cplx amp = detail::sqrt_checked(
            ctx.q,
            ctx.q.bracket(cplx(static_cast<double>(r[b - 1]), 0.0)) *
                ctx.q.bracket(cplx(static_cast<double>(r[a - 1] + 1), 0.0)),
            "e_ab");
        int sign_exp = 0;
        long q_exp = 0;
        if (b < a) {
            // e_{ji} with i = b < j = a
            sign_exp = sig.theta(b) * (r[b - 1] + 1);
            for (int l = b + 1; l < a; ++l) {
                sign_exp += sig.theta(l) * r[l - 1];
                q_exp += r[l - 1];
            }
            q_exp -= 2 * sig.theta(b) * (1 - r[b - 1]);
            mat.add(row, k, ((sign_exp & 1) ? -1.0 : 1.0) * ctx.q.int_power(-q_exp) * amp);
        } else {
            // e_{ji} with i = b > j = a
            sign_exp = sig.theta(a) * r[a - 1];
            q_exp = 2 * sig.theta(a) * r[a - 1];
            for (int l = a + 1; l < b; ++l) {
                sign_exp += sig.theta(l) * r[l - 1];
                q_exp += r[l - 1];
            }
            mat.add(row, k, ((sign_exp & 1) ? -1.0 : 1.0) * ctx.q.int_power(q_exp) * amp);
        }
    }
    return GradedOperator(std::move(mat), (sig.theta(a) + sig.theta(b)) & 1, ctx.basis, label);
}

// ([p]!/[p-R]!) prod_{i<=n} [r_i]!  -- positive on W_p for admissible q
inline double norm_squared(const RepContext& ctx, const Occupation& r) {
    long pint = -1;
    if (!is_nonneg_int(ctx.p, ctx.q.tolerance(), &pint))
        throw std::domain_error("norm_squared: p must be a nonnegative integer");
    long degree = 0;
    for (int v : r) degree += v;
    if (degree > pint) throw std::domain_error("norm_squared: vector lies outside W_p");
    cplx out(1.0, 0.0);
    for (long k = pint - degree + 1; k <= pint; ++k)
        out *= ctx.q.bracket(cplx(static_cast<double>(k), 0.0));
    for (int i = 1; i <= ctx.sig.n; ++i) out *= ctx.q.factorial(r[i - 1]);
    double scale = std::max(1.0, std::abs(out));
    if (std::abs(out.imag()) > ctx.q.tolerance() * scale)
        throw std::domain_error("norm_squared: non-real bracket value");
    return out.real();
}

// Recomputes the full Gram matrix from the vacuum using only the
// adjointness postulate and the Theorem-2 coefficients, then reports the
// worst deviation from the closed norm formula (diagonal) and from
// orthogonality (off-diagonal).
inline double gram_check(const RepContext& ctx) {
    if (!ctx.q.is_phase() && !ctx.q.is_classical())
        throw std::domain_error("gram_check: q must be a phase (or classical)");
    long pint = -1;
    if (!is_nonneg_int(ctx.p, ctx.q.tolerance(), &pint))
        throw std::domain_error("gram_check: p must be a nonnegative integer");
    const FockBasis& basis = *ctx.basis;
    long dim = static_cast<long>(basis.size());
    std::vector<std::vector<cplx>> gram(dim, std::vector<cplx>(dim, cplx(0.0, 0.0)));
    gram[0][0] = 1.0;
    for (long kr = 1; kr < dim; ++kr) {
        const Occupation& r = basis.vector(kr);
        int i = 1;
        while (r[i - 1] == 0) ++i;
        Occupation rlow = r;
        --rlow[i - 1];
        long krlow = basis.rank(rlow);
        for (long ks = 0; ks < dim; ++ks) {
            const Occupation& s = basis.vector(ks);
            if (s[i - 1] == 0) continue;
            Occupation slow = s;
            --slow[i - 1];
            long kslow = basis.rank(slow);
            GradingData g = grading_data(ctx.sig, s, i);
            cplx coeff = static_cast<double>(g.prefix_sign) * ctx.q.int_power(g.prefix_degree) *
                         ctx.q.bracket(cplx(static_cast<double>(s[i - 1]), 0.0)) *
                         ctx.q.bracket(ctx.p - static_cast<double>(basis.degree(ks)) + 1.0);
            gram[kr][ks] = coeff * gram[krlow][kslow];
        }
    }
    double dev = 0.0;
    for (long kr = 0; kr < dim; ++kr)
        for (long ks = 0; ks < dim; ++ks) {
            cplx expected = (kr == ks) ? cplx(norm_squared(ctx, basis.vector(kr)), 0.0)
                                       : cplx(0.0, 0.0);
            dev = std::max(dev, std::abs(gram[kr][ks] - expected));
        }
    return dev;
}

struct UnitarityResult {
    bool unitary = false;
    double max_adjoint_deviation = 0.0;
    long offending_bracket = 0;  // smallest k in [1;p] with [k] not positive, 0 if none
};

inline UnitarityResult unitarity_check(ModeSignature sig, long p, const QParameter& q) {
    UnitarityResult out;
    for (long k = 1; k <= p; ++k) {
        cplx b = q.bracket(cplx(static_cast<double>(k), 0.0));
        if (std::abs(b.imag()) > q.tolerance() * std::max(1.0, std::abs(b)) || b.real() <= 0.0) {
            out.offending_bracket = k;
            return out;
        }
    }
    RepContext ctx = make_rep_context(sig, cplx(static_cast<double>(p), 0.0), q,
                                      static_cast<int>(p), Normalization::Orthonormal);
    double dev = 0.0;
    for (int i = 1; i <= sig.total(); ++i) {
        GradedOperator up = jg_matrix(ctx, Jg::APlus, i);
        GradedOperator down = jg_matrix(ctx, Jg::AMinus, i);
        dev = std::max(dev, (up.adjoint().matrix() - down.matrix()).max_abs());
        GradedOperator h = jg_matrix(ctx, Jg::H, i);
        dev = std::max(dev, (h.adjoint().matrix() - h.matrix()).max_abs());
    }
    out.max_adjoint_deviation = dev;
    out.unitary = dev <= q.tolerance();
    return out;
}

struct ScanRow {
    double phi;
    double min_bracket;  // min_{1<=k<=p} sin(k phi)/sin(phi)
    bool unitary;
};

inline std::vector<ScanRow> unitary_scan(long p, const std::vector<double>& phi_grid) {
    if (p < 1) throw std::domain_error("unitary_scan: p must be >= 1");
    std::vector<ScanRow> rows;
    rows.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        double s = std::sin(phi);
        double mn = std::numeric_limits<double>::infinity();
        for (long k = 1; k <= p; ++k) {
            double b = (s == 0.0) ? static_cast<double>(k) : std::sin(k * phi) / s;
            mn = std::min(mn, b);
        }
        rows.push_back({phi, mn, mn > 0.0});
    }
    return rows;
}

}  // namespace qsl
