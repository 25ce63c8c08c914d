#pragma once

// Occupation-vector bases of the Fock modules W_p and of truncations of the
// infinite module that exists for generic p.
//
// A mode signature holds n bosonic modes (theta = 0, unbounded occupation)
// followed by m fermionic modes (theta = 1, occupation 0 or 1).  Basis
// vectors are ordered by ascending total degree R = sum r_i, ties broken
// lexicographically on (r_1, ..., r_{n+m}); the order is deterministic and
// rank/unrank are mutually inverse.

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qsl/qnum.hpp"

namespace qsl {

using Occupation = std::vector<int>;

struct ModeSignature {
    int n = 0;  // bosonic mode count
    int m = 0;  // fermionic mode count

    ModeSignature() = default;
    ModeSignature(int n_, int m_) : n(n_), m(m_) {
        if (n < 0 || m < 0 || n + m < 1)
            throw std::domain_error("ModeSignature: need n, m >= 0 and n + m >= 1");
    }

    int total() const { return n + m; }

    // grading of mode i in [0; n+m]; the auxiliary index 0 is bosonic
    int theta(int i) const {
        if (i < 0 || i > n + m) throw std::out_of_range("mode index out of range");
        return i > n ? 1 : 0;
    }

    int max_occupation(int i) const {
        return theta(i) ? 1 : std::numeric_limits<int>::max();
    }
};

// p interpreted as a nonnegative integer within tol; value returned via out
inline bool is_nonneg_int(cplx p, double tol, long* out = nullptr) {
    double r = std::nearbyint(p.real());
    if (std::abs(p.imag()) > tol || std::abs(p.real() - r) > tol || r < 0.0)
        return false;
    if (out) *out = static_cast<long>(r);
    return true;
}

inline std::uint64_t binomial(long a, long b) {
    if (b < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    std::uint64_t out = 1;
    for (long i = 1; i <= b; ++i) out = out * static_cast<std::uint64_t>(a - b + i) /
                                        static_cast<std::uint64_t>(i);
    return out;
}

// dim W_p = sum_{k=0}^{min(m,p)} C(m,k) C(p-k+n, n)
inline std::uint64_t dimension(const ModeSignature& sig, long p) {
    if (p < 0) throw std::domain_error("dimension: p must be a nonnegative integer");
    std::uint64_t total = 0;
    long kmax = std::min<long>(sig.m, p);
    for (long k = 0; k <= kmax; ++k)
        total += binomial(sig.m, k) * binomial(p - k + sig.n, sig.n);
    return total;
}

struct GradingData {
    int prefix_degree;  // r_1 + ... + r_{i-1}
    int prefix_sign;    // (-1)^{theta_1 r_1 + ... + theta_{i-1} r_{i-1}}
};

inline GradingData grading_data(const ModeSignature& sig, const Occupation& v, int i) {
    if (i < 1 || i > sig.total() || v.size() != static_cast<std::size_t>(sig.total()))
        throw std::out_of_range("grading_data: mode index out of range");
    GradingData g{0, 1};
    for (int j = 1; j < i; ++j) {
        g.prefix_degree += v[j - 1];
        if (sig.theta(j) && (v[j - 1] & 1)) g.prefix_sign = -g.prefix_sign;
    }
    return g;
}

class FockBasis {
public:
    FockBasis(ModeSignature sig, cplx p, int cutoff)
        : sig_(sig), p_(p), cutoff_(cutoff) {
        if (cutoff < 0) throw std::domain_error("FockBasis: cutoff must be >= 0");
        long pint = -1;
        exact_quotient_ = is_nonneg_int(p_, 1e-9, &pint) && pint == cutoff_;
        Occupation scratch(sig_.total(), 0);
        for (int degree = 0; degree <= cutoff_; ++degree)
            emit(scratch, 1, degree);
        for (std::size_t k = 0; k < vectors_.size(); ++k) index_[vectors_[k]] = static_cast<long>(k);
    }

    const ModeSignature& signature() const { return sig_; }
    cplx p() const { return p_; }
    int cutoff() const { return cutoff_; }

    // true when p is a nonnegative integer and cutoff == p, i.e. the basis
    // spans the exact quotient module and no identity needs a domain window
    bool exact_quotient() const { return exact_quotient_; }

    std::size_t size() const { return vectors_.size(); }

    const Occupation& vector(std::size_t k) const {
        if (k >= vectors_.size()) throw std::out_of_range("FockBasis: rank out of range");
        return vectors_[k];
    }

    int degree(std::size_t k) const {
        const Occupation& v = vector(k);
        return std::accumulate(v.begin(), v.end(), 0);
    }

    // -1 when the vector is not enumerated (projected out / beyond cutoff)
    long rank(const Occupation& v) const {
        auto it = index_.find(v);
        return it == index_.end() ? -1 : it->second;
    }

    // column mask selecting degrees <= dmax; dmax < 0 selects everything
    std::vector<char> degree_mask(int dmax) const {
        std::vector<char> mask(size(), 1);
        if (dmax >= 0)
            for (std::size_t k = 0; k < size(); ++k) mask[k] = degree(k) <= dmax;
        return mask;
    }

private:
    void emit(Occupation& scratch, int mode, int remaining) {
        if (mode == sig_.total()) {
            if (remaining <= sig_.max_occupation(mode)) {
                scratch[mode - 1] = remaining;
                vectors_.push_back(scratch);
            }
            return;
        }
        int top = std::min(remaining, sig_.max_occupation(mode));
        for (int r = 0; r <= top; ++r) {
            scratch[mode - 1] = r;
            emit(scratch, mode + 1, remaining - r);
        }
    }

    ModeSignature sig_;
    cplx p_;
    int cutoff_;
    bool exact_quotient_;
    std::vector<Occupation> vectors_;
    std::map<Occupation, long> index_;
};

inline std::shared_ptr<const FockBasis> make_basis(ModeSignature sig, cplx p, int cutoff) {
    return std::make_shared<const FockBasis>(sig, p, cutoff);
}

}  // namespace qsl
