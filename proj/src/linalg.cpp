#include "galrep/linalg.hpp"

#include <stdexcept>

namespace galrep {

FFMatrix::FFMatrix(FieldCtxPtr ctx, size_t rows, size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), a_(rows * cols, ctx_->zero()) {}

FFMatrix FFMatrix::identity(const FieldCtxPtr& ctx, size_t n) {
    FFMatrix m(ctx, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = ctx->one();
    return m;
}

FFMatrix FFMatrix::operator*(const FFMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("FFMatrix: dimension mismatch in product");
    FFMatrix r(ctx_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            const FFElement& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                r.at(i, j) += aik * o.at(k, j);
            }
        }
    }
    return r;
}

FFMatrix FFMatrix::operator-(const FFMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw std::invalid_argument("FFMatrix: dimension mismatch in difference");
    }
    FFMatrix r(ctx_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

FFMatrix FFMatrix::sub_scalar_diag(const FFElement& s) const {
    if (rows_ != cols_) throw std::invalid_argument("FFMatrix: sub_scalar_diag on non-square matrix");
    FFMatrix r = *this;
    for (size_t i = 0; i < rows_; ++i) r.at(i, i) -= s;
    return r;
}

FFMatrix FFMatrix::pow(u32 e) const {
    if (rows_ != cols_) throw std::invalid_argument("FFMatrix: pow on non-square matrix");
    FFMatrix acc = identity(ctx_, rows_);
    FFMatrix base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

FFMatrix FFMatrix::transpose() const {
    FFMatrix r(ctx_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    }
    return r;
}

bool FFMatrix::is_zero() const {
    for (const FFElement& e : a_) {
        if (!e.is_zero()) return false;
    }
    return true;
}

bool FFMatrix::operator==(const FFMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i) {
        if (!(a_[i] == o.a_[i])) return false;
    }
    return true;
}

std::vector<u32> rref(FFMatrix& m) {
    std::vector<u32> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t sel = row;
        while (sel < m.rows() && m.at(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row) {
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        }
        FFElement inv = m.at(row, col).inv();
        for (size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            FFElement f = m.at(i, col);
            for (size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(static_cast<u32>(col));
        ++row;
    }
    return pivots;
}

FFMatrix left_kernel(const FFMatrix& m) {
    // u*M = 0  <=>  M^T u^T = 0; run column-style elimination on M^T.
    FFMatrix t = m.transpose();
    std::vector<u32> pivots = rref(t);
    size_t rank = pivots.size();
    size_t n = m.rows();
    std::vector<bool> is_pivot(n, false);
    for (u32 pc : pivots) is_pivot[pc] = true;
    FFMatrix kernel(m.ctx(), n - rank, n);
    size_t krow = 0;
    for (size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        kernel.at(krow, free_col) = m.ctx()->one();
        for (size_t r = 0; r < rank; ++r) {
            kernel.at(krow, pivots[r]) = -t.at(r, free_col);
        }
        ++krow;
    }
    return kernel;
}

FFPoly charpoly(const FFMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("charpoly: non-square matrix");
    const size_t n = m.rows();
    FieldCtxPtr ctx = m.ctx();
    if (n == 0) return FFPoly::constant(ctx->one());

    // Similarity reduction to upper Hessenberg form.
    FFMatrix h = m;
    for (size_t j = 0; j + 2 < n; ++j) {
        size_t piv = j + 1;
        while (piv < n && h.at(piv, j).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            for (size_t c = 0; c < n; ++c) std::swap(h.at(piv, c), h.at(j + 1, c));
            for (size_t r = 0; r < n; ++r) std::swap(h.at(r, piv), h.at(r, j + 1));
        }
        FFElement inv = h.at(j + 1, j).inv();
        for (size_t i = j + 2; i < n; ++i) {
            if (h.at(i, j).is_zero()) continue;
            FFElement f = h.at(i, j) * inv;
            for (size_t c = 0; c < n; ++c) h.at(i, c) -= f * h.at(j + 1, c);
            for (size_t r = 0; r < n; ++r) h.at(r, j + 1) += f * h.at(r, i);
        }
    }

    // charpoly of the leading k x k minor by the Hessenberg recurrence.
    std::vector<FFPoly> p;
    p.reserve(n + 1);
    p.push_back(FFPoly::constant(ctx->one()));
    FFPoly xp = FFPoly::x(ctx);
    for (size_t k = 1; k <= n; ++k) {
        FFPoly term = (xp - FFPoly::constant(h.at(k - 1, k - 1))) * p[k - 1];
        FFElement prod = ctx->one();
        for (size_t i = 2; i <= k; ++i) {
            prod *= h.at(k - i + 1, k - i);  // subdiagonal chain
            FFElement coef = h.at(k - i, k - 1) * prod;
            if (!coef.is_zero()) term = term - p[k - i].scale(coef);
        }
        p.push_back(std::move(term));
    }
    return p[n];
}

}  // namespace galrep
