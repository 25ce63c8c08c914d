#pragma once

// Exclusion-statistics demonstrators: diagonal Hamiltonian spectra on W_p,
// exact partition functions and mean occupations, and the p -> infinity,
// q -> 1 canonical limit of the rescaled ladder operators a_i^+- / sqrt(p).

#include <cmath>
#include <string>
#include <vector>

#include "qsl/relations.hpp"

namespace qsl {

struct SpectrumConfig {
    std::vector<double> eps;  // orbital energies, one per mode
    double beta = 1.0;
};

namespace detail {

// walk the admissible occupation vectors in canonical (degree, lex) order
// without materializing a basis; f(r, energy) sees each vector once
template <typename F>
void walk_states(const ModeSignature& sig, long p, const SpectrumConfig& cfg, F&& f) {
    int nm = sig.total();
    Occupation r(nm, 0);
    std::function<void(int, int)> rec = [&](int mode, int remaining) {
        if (mode == nm) {
            if (remaining > sig.max_occupation(nm)) return;
            r[nm - 1] = remaining;
            double energy = 0.0;
            for (int t = 0; t < nm; ++t) energy += cfg.eps[static_cast<std::size_t>(t)] * r[t];
            f(r, energy);
            return;
        }
        int top = std::min(remaining, sig.max_occupation(mode));
        for (int v = 0; v <= top; ++v) {
            r[mode - 1] = v;
            rec(mode + 1, remaining - v);
        }
    };
    for (long degree = 0; degree <= p; ++degree) rec(1, static_cast<int>(degree));
}

inline void validate_spectrum(const ModeSignature& sig, long p, const SpectrumConfig& cfg) {
    if (p < 0) throw std::domain_error("partition: p must be a nonnegative integer");
    if (cfg.eps.size() != static_cast<std::size_t>(sig.total()))
        throw std::domain_error("partition: need one orbital energy per mode");
    if (!(cfg.beta > 0.0)) throw std::domain_error("partition: beta must be positive");
}

}  // namespace detail

// Z = sum over W_p states of exp(-beta sum_i eps_i r_i)
inline double partition_function(const ModeSignature& sig, long p, const SpectrumConfig& cfg) {
    detail::validate_spectrum(sig, p, cfg);
    double z = 0.0;
    detail::walk_states(sig, p, cfg,
                        [&](const Occupation&, double e) { z += std::exp(-cfg.beta * e); });
    return z;
}

inline std::vector<double> mean_occupations(const ModeSignature& sig, long p,
                                            const SpectrumConfig& cfg) {
    detail::validate_spectrum(sig, p, cfg);
    std::vector<double> acc(static_cast<std::size_t>(sig.total()), 0.0);
    double z = 0.0;
    detail::walk_states(sig, p, cfg, [&](const Occupation& r, double e) {
        double w = std::exp(-cfg.beta * e);
        z += w;
        for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += r[t] * w;
    });
    for (double& v : acc) v /= z;
    return acc;
}

struct LimitRow {
    long p;
    std::string relation;
    double residual;
};

// residuals of [[A_i^-, A_j^+]] - delta_ij for A = a / sqrt(p) on the
// orthonormal W_p, restricted to the low-degree window R <= window
inline std::vector<LimitRow> canonical_limit_check(const ModeSignature& sig,
                                                   const std::vector<long>& p_sequence,
                                                   const std::vector<QParameter>& q_sequence,
                                                   int window = 3) {
    std::vector<LimitRow> rows;
    for (std::size_t t = 0; t < p_sequence.size(); ++t) {
        long p = p_sequence[t];
        if (p < 1) throw std::domain_error("limit check: p must be >= 1");
        QParameter q = q_sequence.empty() ? QParameter::classical()
                                          : q_sequence[t % q_sequence.size()];
        int cutoff = static_cast<int>(std::min<long>(p, window + 2));
        RepContext ctx = make_rep_context(sig, cplx(static_cast<double>(p), 0.0), q, cutoff,
                                          Normalization::Orthonormal);
        std::vector<char> mask = ctx.basis->degree_mask(std::min<int>(window, cutoff - 2));
        double root_p = std::sqrt(static_cast<double>(p));
        long dim = static_cast<long>(ctx.basis->size());
        for (int i = 1; i <= sig.total(); ++i) {
            GradedOperator lower = jg_matrix(ctx, Jg::AMinus, i).scaled(1.0 / root_p);
            for (int j = 1; j <= sig.total(); ++j) {
                GradedOperator raise = jg_matrix(ctx, Jg::APlus, j).scaled(1.0 / root_p);
                SparseMatrix delta =
                    (i == j) ? SparseMatrix::identity(dim) : SparseMatrix(dim, dim);
                double res = (supercommutator(lower, raise).matrix() - delta)
                                 .max_abs_on_cols(mask);
                std::string kind = (sig.theta(i) && sig.theta(j)) ? "anti" : "comm";
                rows.push_back({p,
                                kind + " i=" + std::to_string(i) + " j=" + std::to_string(j),
                                res});
            }
        }
    }
    return rows;
}

}  // namespace qsl
