#pragma once

#include <optional>
#include <vector>

#include "galrep/eigensplit.hpp"

namespace galrep {

/// All primes ell <= max(ceil((p+1)/6), 7) with ell != p. The floor of 7
/// keeps the set nonempty and discriminating for small p, where the
/// (p+1)/6 bound yields no primes.
std::vector<u32> identification_primes(u32 p);

/// The per-prime operator schedule: primes != p among the first
/// ceil((p+1)/12) primes united with the identification primes. Uniform
/// across weights so eigenvalue tuples from different weights are directly
/// comparable.
std::vector<u32> operator_schedule(u32 p);

/// The i-th twist: multiply each a_ell by ell^i mod p, then re-canonicalize
/// (least Frobenius conjugate; the field degree is unchanged).
Eigensystem twist(const Eigensystem& e, u32 i);

/// An equivalence class of eigensystems up to twist: the representative is
/// the least canonical tuple over all twists of all members, and
/// orbit_count = t*m counts the distinct eigenvalue sequences over the
/// algebraic closure in the class (t distinct twists, each standing for m
/// Frobenius conjugates).
struct TwistClass {
    Eigensystem rep;
    std::vector<std::pair<u32, Eigensystem>> members;  // (weight, system)
    std::vector<u32> member_weights;
    u32 twist_count = 0;   // t, divides p-1
    u64 orbit_count = 0;   // t * m
};

/// Number of distinct eigenvalue sequences in the twist orbit of a
/// canonical eigensystem: t * m where t counts distinct canonical forms
/// among its p-1 twists.
u64 count_orbit(const Eigensystem& rep, u32 p);

/// Merge twist-equivalent eigensystems across weights. Default mode only
/// compares pairs whose weights satisfy k1+k2 = p+1 or p+3 (mod p-1);
/// paranoid mode compares all pairs. When prime_filter is set, equivalence
/// is judged on the values at those primes only (used to validate that the
/// identification primes suffice). Output sorted by representative.
std::vector<TwistClass> dedup(const std::vector<std::pair<u32, Eigensystem>>& items,
                              u32 p, bool paranoid,
                              const std::optional<std::vector<u32>>& prime_filter = std::nullopt);

struct EnumerationResult {
    u32 p = 0;
    std::vector<TwistClass> classes;
    u32 num_classes = 0;
    u64 total = 0;
    // khare_ratio = total / (p^3/48) kept exact as 48*total / p^3.
    u64 khare_num = 0;
    u64 khare_den = 0;

    double khare_ratio() const {
        return khare_den ? static_cast<double>(khare_num) / static_cast<double>(khare_den) : 0.0;
    }
};

struct EnumerateOptions {
    bool paranoid = false;
    u32 jobs = 1;
};

/// Enumerate all Hecke eigensystems mod p: every even weight 4 <= k <= p+1,
/// deduplicated up to twist, with twist-orbit counts. p in {2, 3} is
/// special-cased (one class, total 1). Throws std::invalid_argument for
/// non-prime p.
EnumerationResult enumerate_prime(u32 p, const EnumerateOptions& opts = {});

/// The per-weight eigensystem lists for p, computed with the uniform
/// operator schedule (weights 4, 6, ..., p+1 in order). Exposed for
/// cross-validation tests; enumerate_prime composes this with dedup.
std::vector<std::pair<u32, Eigensystem>> collect_weight_systems(u32 p, u32 jobs = 1);

}  // namespace galrep
