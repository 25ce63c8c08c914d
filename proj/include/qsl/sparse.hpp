#pragma once

// Sparse complex matrices with deterministic entry ordering, and the
// Z2-graded operator wrapper used by every representation module.
//
// Entries are kept keyed by (col, row) so column slices are contiguous for
// products; exported entry lists are sorted by (row, col).  Exact zeros are
// pruned, which keeps structural statements (nilpotency, invariant-subspace
// block triangularity) visible as genuinely absent entries.

#include <algorithm>
#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsl/fock_basis.hpp"
#include "qsl/qnum.hpp"

namespace qsl {

struct MatrixEntry {
    long row;
    long col;
    cplx value;
};

class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(long rows, long cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
    }

    static SparseMatrix identity(long n) {
        SparseMatrix out(n, n);
        for (long i = 0; i < n; ++i) out.add(i, i, 1.0);
        return out;
    }

    static SparseMatrix diagonal(const std::vector<cplx>& d) {
        SparseMatrix out(static_cast<long>(d.size()), static_cast<long>(d.size()));
        for (long i = 0; i < static_cast<long>(d.size()); ++i) out.add(i, i, d[i]);
        return out;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    std::size_t nnz() const { return data_.size(); }
    bool is_zero() const { return data_.empty(); }

    void add(long r, long c, cplx v) {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("SparseMatrix::add: index out of range");
        if (v == cplx(0.0, 0.0)) return;
        auto key = std::make_pair(c, r);
        auto it = data_.find(key);
        if (it == data_.end()) {
            data_.emplace(key, v);
        } else {
            it->second += v;
            if (it->second == cplx(0.0, 0.0)) data_.erase(it);
        }
    }

    cplx at(long r, long c) const {
        auto it = data_.find(std::make_pair(c, r));
        return it == data_.end() ? cplx(0.0, 0.0) : it->second;
    }

    std::vector<cplx> diagonal_values() const {
        std::vector<cplx> d(std::min(rows_, cols_), cplx(0.0, 0.0));
        for (const auto& [key, v] : data_)
            if (key.first == key.second) d[static_cast<std::size_t>(key.first)] = v;
        return d;
    }

    // entries sorted by (row, col)
    std::vector<MatrixEntry> entries() const {
        std::vector<MatrixEntry> out;
        out.reserve(data_.size());
        for (const auto& [key, v] : data_) out.push_back({key.second, key.first, v});
        std::sort(out.begin(), out.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        return out;
    }

    SparseMatrix operator+(const SparseMatrix& o) const {
        check_shape(o);
        SparseMatrix out(*this);
        for (const auto& [key, v] : o.data_) out.add(key.second, key.first, v);
        return out;
    }

    SparseMatrix operator-(const SparseMatrix& o) const {
        check_shape(o);
        SparseMatrix out(*this);
        for (const auto& [key, v] : o.data_) out.add(key.second, key.first, -v);
        return out;
    }

    SparseMatrix operator*(cplx s) const {
        SparseMatrix out(rows_, cols_);
        if (s == cplx(0.0, 0.0)) return out;
        for (const auto& [key, v] : data_) out.data_.emplace(key, v * s);
        return out;
    }

    SparseMatrix operator*(const SparseMatrix& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("SparseMatrix: inner dimensions differ");
        SparseMatrix out(rows_, o.cols_);
        for (const auto& [bkey, bval] : o.data_) {
            long j = bkey.first, k = bkey.second;
            auto lo = data_.lower_bound(std::make_pair(k, std::numeric_limits<long>::min()));
            auto hi = data_.upper_bound(std::make_pair(k, std::numeric_limits<long>::max()));
            for (auto it = lo; it != hi; ++it) out.add(it->first.second, j, it->second * bval);
        }
        return out;
    }

    SparseMatrix adjoint() const {
        SparseMatrix out(cols_, rows_);
        for (const auto& [key, v] : data_)
            out.data_.emplace(std::make_pair(key.second, key.first), std::conj(v));
        return out;
    }

    std::vector<cplx> apply(const std::vector<cplx>& x) const {
        if (static_cast<long>(x.size()) != cols_)
            throw std::invalid_argument("SparseMatrix::apply: size mismatch");
        std::vector<cplx> y(rows_, cplx(0.0, 0.0));
        for (const auto& [key, v] : data_)
            y[static_cast<std::size_t>(key.second)] += v * x[static_cast<std::size_t>(key.first)];
        return y;
    }

    double max_abs() const {
        double mx = 0.0;
        for (const auto& [key, v] : data_) mx = std::max(mx, std::abs(v));
        return mx;
    }

    double max_abs_on_cols(const std::vector<char>& colmask) const {
        double mx = 0.0;
        for (const auto& [key, v] : data_)
            if (colmask[static_cast<std::size_t>(key.first)]) mx = std::max(mx, std::abs(v));
        return mx;
    }

private:
    void check_shape(const SparseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("SparseMatrix: shape mismatch");
    }

    long rows_, cols_;
    std::map<std::pair<long, long>, cplx> data_;  // keyed (col, row)
};

inline SparseMatrix operator*(cplx s, const SparseMatrix& a) { return a * s; }

// Sparse matrix tagged with a Z2 parity and tied to a Fock basis.
class GradedOperator {
public:
    GradedOperator() : parity_(0) {}
    GradedOperator(SparseMatrix mat, int parity, std::shared_ptr<const FockBasis> basis,
                   std::string label = {})
        : mat_(std::move(mat)), parity_(parity & 1), basis_(std::move(basis)),
          label_(std::move(label)) {}

    const SparseMatrix& matrix() const { return mat_; }
    int parity() const { return parity_; }
    const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
    const std::string& label() const { return label_; }

    GradedOperator operator*(const GradedOperator& o) const {
        check_basis(o);
        return GradedOperator(mat_ * o.mat_, parity_ + o.parity_, basis_,
                              label_ + "*" + o.label_);
    }

    GradedOperator operator+(const GradedOperator& o) const {
        check_basis(o);
        return GradedOperator(mat_ + o.mat_, parity_, basis_, label_);
    }

    GradedOperator operator-(const GradedOperator& o) const {
        check_basis(o);
        return GradedOperator(mat_ - o.mat_, parity_, basis_, label_);
    }

    GradedOperator scaled(cplx s) const {
        return GradedOperator(mat_ * s, parity_, basis_, label_);
    }

    GradedOperator adjoint() const {
        return GradedOperator(mat_.adjoint(), parity_, basis_, label_ + "^+");
    }

    GradedOperator pow(int k) const {
        if (k < 0) throw std::invalid_argument("GradedOperator::pow: negative power");
        GradedOperator out(SparseMatrix::identity(mat_.rows()), 0, basis_, "1");
        for (int t = 0; t < k; ++t) out = *this * out;
        out.parity_ = (parity_ * k) & 1;
        return out;
    }

private:
    void check_basis(const GradedOperator& o) const {
        if (mat_.rows() != o.mat_.rows() || mat_.cols() != o.mat_.cols() ||
            (basis_ && o.basis_ && basis_.get() != o.basis_.get() &&
             basis_->size() != o.basis_->size()))
            throw std::invalid_argument("GradedOperator: operands live on different bases");
    }

    SparseMatrix mat_;
    int parity_;
    std::shared_ptr<const FockBasis> basis_;
    std::string label_;
};

// [[A, B]]_x = AB - (-1)^{deg A deg B} x BA; x = 1 gives the plain
// supercommutator
inline GradedOperator supercommutator(const GradedOperator& a, const GradedOperator& b,
                                      cplx x = cplx(1.0, 0.0)) {
    double sign = (a.parity() && b.parity()) ? -1.0 : 1.0;
    GradedOperator ab = a * b;
    GradedOperator ba = b * a;
    return GradedOperator(ab.matrix() - ba.matrix() * (sign * x),
                          a.parity() + b.parity(), a.basis(),
                          "[[" + a.label() + "," + b.label() + "]]");
}

}  // namespace qsl
