#pragma once

#include <string>
#include <vector>

#include "galrep/ff.hpp"
#include "galrep/qseries.hpp"

namespace galrep {

/// Dimension of the space of level-1 modular forms of weight k:
/// 0 for odd, negative, or k = 2; 1 for k = 0; for even k >= 4,
/// floor(k/12) when k = 2 (mod 12) and floor(k/12)+1 otherwise.
u32 mk_dimension(i64 k);

/// The space M_k mod p: echelonized basis (row i = q^i + O(q^dim)) built
/// from products of Delta, E4 and E6.
struct WeightSpace {
    u32 p = 0;
    u32 k = 0;
    u32 dim = 0;
    u32 prec = 0;
    std::vector<QSeries> rows;
};

/// Build the echelon basis of M_k mod p at the given precision.
/// Requires even k with 4 <= k, p >= 5, prec >= dim.
WeightSpace miller_basis(u32 k, u32 p, u32 prec);

/// Matrix of the Hecke operator T_ell on a WeightSpace, entries mod p,
/// column i = coordinates of T_ell(basis row i) in the echelon basis.
struct HeckeMatrix {
    u32 p = 0;
    u32 k = 0;
    u32 ell = 0;
    u32 d = 0;
    std::vector<u32> a;  // row-major d x d

    u32 at(size_t row, size_t col) const { return a[row * d + col]; }
};

/// (T_ell f)_n = a_{n*ell} + ell^{k-1} a_{n/ell} (second term only when
/// ell | n). Requires ell != p and space.prec >= dim*ell + 1; throws with
/// the required precision named otherwise.
HeckeMatrix hecke_matrix(const WeightSpace& space, u32 ell);

/// Coefficients (trace, det) of the Frobenius characteristic polynomial
/// X^2 - a X + ell^{k-1}: returns (a, ell^{k-1} mod p embedded in a's
/// field). Requires ell != p.
struct FrobCharpoly {
    FFElement trace;
    FFElement det;
};
FrobCharpoly frobenius_charpoly(const FFElement& a, u32 ell, u64 k);

/// Debug dump: one line per basis row, space-separated residues.
std::string dump_basis(const WeightSpace& space);
/// Debug dump: matrix rows, space-separated residues, one row per line.
std::string dump_matrix(const HeckeMatrix& m);

}  // namespace galrep
