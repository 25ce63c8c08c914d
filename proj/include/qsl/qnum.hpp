#pragma once

// q-number arithmetic: brackets [x], q-factorials and powers of the
// deformation parameter q, including the classical limit q = 1.
//
// q comes in three flavours:
//   Generic   -- a fixed complex number with q != 0 and q^2 != 1
//   Phase     -- q = e^{i phi} with phi in (-pi, pi), phi != 0; brackets
//                of real arguments are real: [x] = sin(x phi)/sin(phi)
//   Classical -- the q -> 1 limit, where [x] = x and q^z = 1

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qsl {

using cplx = std::complex<double>;

enum class QMode { Generic, Phase, Classical };

class QParameter {
public:
    static QParameter generic(cplx q, double tol = 1e-9) {
        if (q == cplx(0.0, 0.0))
            throw std::domain_error("QParameter: q = 0 is not allowed");
        if (q * q == cplx(1.0, 0.0))
            throw std::domain_error("QParameter: q = +-1 needs Classical mode");
        return QParameter(QMode::Generic, q, 0.0, tol);
    }

    static QParameter phase(double phi, double tol = 1e-9) {
        if (!(phi > -M_PI && phi < M_PI) || phi == 0.0)
            throw std::domain_error("QParameter: phase angle must lie in (-pi, pi) \\ {0}");
        return QParameter(QMode::Phase, std::polar(1.0, phi), phi, tol);
    }

    static QParameter classical(double tol = 1e-9) {
        return QParameter(QMode::Classical, cplx(1.0, 0.0), 0.0, tol);
    }

    QMode mode() const { return mode_; }
    bool is_classical() const { return mode_ == QMode::Classical; }
    bool is_phase() const { return mode_ == QMode::Phase; }
    double phi() const { return phi_; }
    double tolerance() const { return tol_; }

    cplx value() const { return value_; }

    // q^k for integer k; exact in Phase (e^{ik phi}) and Classical (1) mode
    cplx int_power(long k) const {
        switch (mode_) {
        case QMode::Classical: return 1.0;
        case QMode::Phase: return std::polar(1.0, static_cast<double>(k) * phi_);
        case QMode::Generic: {
            cplx base = (k >= 0) ? value_ : cplx(1.0, 0.0) / value_;
            unsigned long e = (k >= 0) ? static_cast<unsigned long>(k)
                                       : static_cast<unsigned long>(-k);
            cplx out(1.0, 0.0);
            while (e > 0) {
                if (e & 1u) out *= base;
                base *= base;
                e >>= 1u;
            }
            return out;
        }
        }
        return 1.0;
    }

    // q^z with the principal branch; integer real z dispatches to int_power
    cplx power(cplx z) const {
        if (mode_ == QMode::Classical) return 1.0;
        if (z.imag() == 0.0 && std::nearbyint(z.real()) == z.real() &&
            std::abs(z.real()) < 1e15)
            return int_power(static_cast<long>(z.real()));
        if (mode_ == QMode::Phase)
            return std::exp(cplx(0.0, phi_) * z);
        return std::exp(z * std::log(value_));
    }

    // [x] = (q^x - q^{-x}) / (q - q^{-1})
    cplx bracket(cplx x) const {
        switch (mode_) {
        case QMode::Classical:
            return x;
        case QMode::Phase:
            if (x.imag() == 0.0)
                return std::sin(x.real() * phi_) / std::sin(phi_);
            return std::sin(x * phi_) / std::sin(cplx(phi_, 0.0));
        case QMode::Generic: {
            cplx qx = power(x);
            return (qx - 1.0 / qx) / (value_ - 1.0 / value_);
        }
        }
        return x;
    }

    // [k]! = [1][2]...[k], with [0]! = 1
    cplx factorial(long k) const {
        if (k < 0) throw std::domain_error("q-factorial of a negative integer");
        cplx out(1.0, 0.0);
        for (long j = 1; j <= k; ++j) out *= bracket(cplx(static_cast<double>(j), 0.0));
        return out;
    }

private:
    QParameter(QMode mode, cplx v, double phi, double tol)
        : mode_(mode), value_(v), phi_(phi), tol_(tol) {}

    QMode mode_;
    cplx value_;
    double phi_;
    double tol_;
};

inline cplx q_bracket(double x, const QParameter& q) { return q.bracket(cplx(x, 0.0)); }
inline cplx q_factorial(long k, const QParameter& q) { return q.factorial(k); }
inline cplx q_int_power(const QParameter& q, long k) { return q.int_power(k); }

}  // namespace qsl
