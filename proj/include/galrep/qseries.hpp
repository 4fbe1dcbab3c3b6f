#pragma once

#include <vector>

#include "galrep/common.hpp"

namespace galrep {

/// Truncated q-expansion over F_p: coefficients of q^0 ... q^{prec-1},
/// all residues in [0, p). Series carry their precision and refuse
/// mixed-precision arithmetic.
struct QSeries {
    u32 p = 0;
    std::vector<u32> c;

    u32 prec() const { return static_cast<u32>(c.size()); }
    u32 coeff(size_t n) const { return c[n]; }

    bool operator==(const QSeries& o) const = default;
};

/// Zero series at the given precision.
QSeries series_zero(u32 p, u32 prec);
/// Constant series.
QSeries series_const(u32 p, u32 prec, u32 value);

/// Sum over q^n (n >= 1) of sigma_r(n) = sum of d^r over divisors d of n,
/// reduced mod p; computed by a sieve over multiples. Coefficient of q^0
/// is 0.
QSeries sigma_series(u32 r, u32 prec, u32 p);

/// E4 = 1 + 240 sum sigma_3(n) q^n or E6 = 1 - 504 sum sigma_5(n) q^n,
/// mod p. Only k in {4, 6} is supported (throws otherwise); requires p >= 5.
QSeries eisenstein(u32 k, u32 prec, u32 p);

/// Delta = q * prod_{n>=1} (1 - q^n)^24, mod p. No division anywhere, so
/// valid for every prime p.
QSeries delta(u32 prec, u32 p);

QSeries series_add(const QSeries& a, const QSeries& b);
QSeries series_sub(const QSeries& a, const QSeries& b);
/// Truncated product; requires identical p and prec (throws otherwise).
QSeries series_mul(const QSeries& a, const QSeries& b);
/// a^e by repeated squaring of truncated products; a^0 is the constant 1.
QSeries series_pow(const QSeries& a, u32 e);

}  // namespace galrep
