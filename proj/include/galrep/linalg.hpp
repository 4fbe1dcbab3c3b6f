#pragma once

#include <vector>

#include "galrep/ff.hpp"

namespace galrep {

/// Dense row-major matrix over a FieldCtx. Small dimensions only (the
/// spaces here never exceed a few dozen rows); everything is cubic-time
/// textbook linear algebra, exact over the field.
class FFMatrix {
public:
    FFMatrix(FieldCtxPtr ctx, size_t rows, size_t cols);

    static FFMatrix identity(const FieldCtxPtr& ctx, size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const FieldCtxPtr& ctx() const { return ctx_; }

    FFElement& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const FFElement& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    FFMatrix operator*(const FFMatrix& o) const;
    FFMatrix operator-(const FFMatrix& o) const;
    /// M - s*I (square only).
    FFMatrix sub_scalar_diag(const FFElement& s) const;
    FFMatrix pow(u32 e) const;
    FFMatrix transpose() const;
    bool is_zero() const;

    bool operator==(const FFMatrix& o) const;

private:
    FieldCtxPtr ctx_;
    size_t rows_, cols_;
    std::vector<FFElement> a_;
};

/// In-place reduced row echelon form; returns the pivot column of each
/// nonzero row, in row order.
std::vector<u32> rref(FFMatrix& m);

/// Basis of the left null space {u : u*M = 0}, one vector per row, in
/// reduced echelon form. Deterministic.
FFMatrix left_kernel(const FFMatrix& m);

/// Characteristic polynomial det(xI - M) of a square matrix, computed by
/// similarity reduction to Hessenberg form and the standard recurrence.
FFPoly charpoly(const FFMatrix& m);

}  // namespace galrep
