#pragma once

#include <cstdint>
#include <vector>

namespace galrep {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Deterministic primality test by trial division; valid for all 32-bit n.
bool is_prime(u32 n);

/// All primes <= bound, ascending.
std::vector<u32> primes_up_to(u32 bound);

/// The first `count` primes, ascending.
std::vector<u32> first_primes(u32 count);

// Deterministic 64-bit mixer. Used wherever reproducible pseudo-random
// material is needed (equal-degree splitting trials, generator search);
// correctness never depends on the values, only termination speed.
constexpr u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace galrep
