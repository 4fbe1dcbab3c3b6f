#pragma once

#include <utility>
#include <vector>

#include "galrep/linalg.hpp"
#include "galrep/mfspace.hpp"

namespace galrep {

/// A simultaneous generalized Hecke eigenblock: a T-stable subspace of
/// M_k tensored up to K = F_{p^m}, with the eigenvalues assigned so far.
/// basis rows are coordinate vectors in the echelon basis of M_k, kept in
/// reduced echelon form; on the block every assigned T_ell acts as
/// a_ell + nilpotent.
struct Block {
    FieldCtxPtr field;
    u32 weight = 0;
    FFMatrix basis;                                 // r x d, rows = vectors
    std::vector<u32> pivots;                        // pivot column per row
    std::vector<std::pair<u32, FFElement>> eigvals; // (ell, a_ell), ell asc

    u32 dim() const { return static_cast<u32>(basis.rows()); }
};

/// Canonical representative of a Galois orbit of eigenvalue tuples: values
/// live in the canonical field F_{p^m} (modulus = canonical_modulus(p, m)),
/// m is the degree of the field the values generate, and the tuple is the
/// lexicographically least among its m simultaneous Frobenius conjugates.
struct Eigensystem {
    u32 p = 0;
    u32 m = 0;
    std::vector<u32> modulus;                            // canonical, length m+1
    std::vector<std::pair<u32, std::vector<u32>>> values; // (ell, coeffs), ell asc
    u32 weight = 0;

    FieldCtxPtr ctx;  // canonical field; reconstructable from (p, m)

    /// Equality of the eigensystem proper (weight is provenance metadata).
    bool same_system(const Eigensystem& o) const;
    /// Deterministic total order: (m, values).
    bool lex_less(const Eigensystem& o) const;
    std::vector<u32> flattened_values() const;
};

/// Decompose M_k into simultaneous generalized eigenblocks by refining
/// with one Hecke operator at a time, factoring the restriction's
/// characteristic polynomial and extending the coefficient field as
/// irreducible factors of degree >= 2 appear. Every returned block has an
/// eigenvalue assigned for every scheduled prime, and the block dimensions
/// satisfy sum(dim_K * [K:F_p]) = dim M_k.
std::vector<Block> decompose(const WeightSpace& space, const std::vector<u32>& schedule);

/// Reduce a fully-assigned block to its canonical Eigensystem: compute the
/// true degree m of the field generated by the eigenvalues, map them into
/// the canonical F_{p^m} through the lexicographically least root of a
/// deterministic generator's minimal polynomial, and pick the least
/// simultaneous Frobenius conjugate.
Eigensystem canonicalize(const Block& block);

/// miller_basis -> decompose -> canonicalize, collected into a
/// duplicate-free, deterministically sorted list of canonical Galois-orbit
/// representatives. prec is dim * max(schedule) + 1.
std::vector<Eigensystem> weight_eigensystems(u32 p, u32 k, const std::vector<u32>& schedule);

}  // namespace galrep
