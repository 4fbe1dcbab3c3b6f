#include "galrep/mfspace.hpp"

#include <sstream>
#include <stdexcept>

namespace galrep {

u32 mk_dimension(i64 k) {
    if (k < 0 || k % 2 != 0 || k == 2) return 0;
    if (k == 0) return 1;
    if (k % 12 == 2) return static_cast<u32>(k / 12);
    return static_cast<u32>(k / 12) + 1;
}

WeightSpace miller_basis(u32 k, u32 p, u32 prec) {
    if (k % 2 != 0 || k < 4) throw std::invalid_argument("miller_basis: weight must be even and >= 4");
    if (p < 5) throw std::invalid_argument("miller_basis: requires p >= 5");
    const u32 d = mk_dimension(k);
    if (prec < d) throw std::invalid_argument("miller_basis: precision below dimension");

    // Spanning forms Delta^j E4^a E6^b with 4a + 6b = k - 12j; since
    // k - 12j = k (mod 4), b is 0 for k = 0 (mod 4) and 1 otherwise.
    const u32 b = k % 4 == 0 ? 0 : 1;
    QSeries e4 = eisenstein(4, prec, p);
    QSeries e6 = eisenstein(6, prec, p);
    QSeries dlt = delta(prec, p);
    QSeries e4_cubed = series_mul(series_mul(e4, e4), e4);

    std::vector<QSeries> rows;
    rows.reserve(d);
    // a decreases by 3 as j increases; build E4 powers from the smallest
    // exponent upward and Delta powers incrementally.
    std::vector<i64> a_exp(d);
    for (u32 j = 0; j < d; ++j) {
        i64 rem = static_cast<i64>(k) - 12 * static_cast<i64>(j) - 6 * b;
        if (rem < 0 || rem % 4 != 0) throw std::logic_error("miller_basis: no exponent solution");
        a_exp[j] = rem / 4;
    }
    std::vector<QSeries> e4_pow(d, series_const(p, prec, 1));
    if (d > 0) {
        e4_pow[d - 1] = series_pow(e4, static_cast<u32>(a_exp[d - 1]));
        for (u32 j = d - 1; j-- > 0;) {
            e4_pow[j] = series_mul(e4_pow[j + 1], e4_cubed);
        }
    }
    QSeries delta_pow = series_const(p, prec, 1);
    for (u32 j = 0; j < d; ++j) {
        if (j > 0) delta_pow = series_mul(delta_pow, dlt);
        QSeries g = series_mul(delta_pow, e4_pow[j]);
        if (b) g = series_mul(g, e6);
        rows.push_back(std::move(g));
    }

    // Row-reduce the d x prec coefficient matrix to the unique echelon
    // basis with row i = q^i + O(q^d). The leading d x d block is
    // unit-triangular, so pivots land on columns 0..d-1.
    PrimeField fp(p);
    for (u32 col = 0; col < d; ++col) {
        u32 sel = col;
        while (sel < d && rows[sel].c[col] == 0) ++sel;
        if (sel == d) throw std::logic_error("miller_basis: echelon pivot missing");
        std::swap(rows[sel], rows[col]);
        u32 inv = fp.inv(rows[col].c[col]);
        if (inv != 1) {
            for (u32& v : rows[col].c) v = fp.mul(v, inv);
        }
        for (u32 r = 0; r < d; ++r) {
            if (r == col) continue;
            u32 f = rows[r].c[col];
            if (f == 0) continue;
            for (u32 j = col; j < prec; ++j) {
                rows[r].c[j] = fp.sub(rows[r].c[j], fp.mul(f, rows[col].c[j]));
            }
        }
    }

    return WeightSpace{p, k, d, prec, std::move(rows)};
}

HeckeMatrix hecke_matrix(const WeightSpace& space, u32 ell) {
    if (ell == space.p) throw std::invalid_argument("hecke_matrix: ell must differ from p");
    const u32 d = space.dim;
    const u64 needed = static_cast<u64>(d) * ell + 1;
    if (space.prec < needed) {
        throw std::invalid_argument("hecke_matrix: precision " + std::to_string(space.prec) +
                                    " insufficient for T_" + std::to_string(ell) + ", need " +
                                    std::to_string(needed));
    }
    PrimeField fp(space.p);
    const u32 ell_pow = fp.pow(ell % space.p, space.k - 1);
    HeckeMatrix m{space.p, space.k, ell, d, std::vector<u32>(static_cast<size_t>(d) * d, 0)};
    for (u32 i = 0; i < d; ++i) {
        const std::vector<u32>& a = space.rows[i].c;
        for (u32 n = 0; n < d; ++n) {
            u32 v = a[static_cast<size_t>(n) * ell];
            if (n % ell == 0) v = fp.add(v, fp.mul(ell_pow, a[n / ell]));
            m.a[static_cast<size_t>(n) * d + i] = v;
        }
    }
    return m;
}

FrobCharpoly frobenius_charpoly(const FFElement& a, u32 ell, u64 k) {
    const u32 p = a.ctx()->p();
    if (ell == p) throw std::invalid_argument("frobenius_charpoly: ell must differ from p");
    PrimeField fp(p);
    u32 det = fp.pow(ell % p, k - 1);
    return FrobCharpoly{a, a.ctx()->from_int(det)};
}

std::string dump_basis(const WeightSpace& space) {
    std::ostringstream os;
    for (const QSeries& row : space.rows) {
        for (size_t i = 0; i < row.c.size(); ++i) {
            if (i) os << ' ';
            os << row.c[i];
        }
        os << '\n';
    }
    return os.str();
}

std::string dump_matrix(const HeckeMatrix& m) {
    std::ostringstream os;
    for (u32 i = 0; i < m.d; ++i) {
        for (u32 j = 0; j < m.d; ++j) {
            if (j) os << ' ';
            os << m.at(i, j);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace galrep
