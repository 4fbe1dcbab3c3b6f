#include "galrep/common.hpp"

namespace galrep {

bool is_prime(u32 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (u64 d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<u32> primes_up_to(u32 bound) {
    std::vector<u32> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (u32 i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = static_cast<u64>(i) * i; j <= bound; j += i) {
            composite[j] = true;
        }
    }
    return out;
}

std::vector<u32> first_primes(u32 count) {
    std::vector<u32> out;
    out.reserve(count);
    for (u32 n = 2; out.size() < count; ++n) {
        if (is_prime(n)) out.push_back(n);
    }
    return out;
}

}  // namespace galrep
