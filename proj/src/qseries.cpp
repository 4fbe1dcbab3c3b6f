#include "galrep/qseries.hpp"

#include <stdexcept>
#include <string>

namespace galrep {

namespace {

u64 pow_mod(u64 base, u64 e, u64 p) {
    base %= p;
    u64 acc = 1;
    while (e > 0) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return acc;
}

void check_compatible(const QSeries& a, const QSeries& b) {
    if (a.p != b.p) {
        throw std::invalid_argument("QSeries: characteristic mismatch (" + std::to_string(a.p) +
                                    " vs " + std::to_string(b.p) + ")");
    }
    if (a.prec() != b.prec()) {
        throw std::invalid_argument("QSeries: precision mismatch (" + std::to_string(a.prec()) +
                                    " vs " + std::to_string(b.prec()) + ")");
    }
}

}  // namespace

QSeries series_zero(u32 p, u32 prec) {
    return QSeries{p, std::vector<u32>(prec, 0)};
}

QSeries series_const(u32 p, u32 prec, u32 value) {
    QSeries s = series_zero(p, prec);
    if (prec > 0) s.c[0] = value % p;
    return s;
}

QSeries sigma_series(u32 r, u32 prec, u32 p) {
    QSeries s = series_zero(p, prec);
    for (u64 d = 1; d < prec; ++d) {
        u64 dr = pow_mod(d, r, p);
        for (u64 n = d; n < prec; n += d) {
            s.c[n] = static_cast<u32>((s.c[n] + dr) % p);
        }
    }
    return s;
}

QSeries eisenstein(u32 k, u32 prec, u32 p) {
    if (k != 4 && k != 6) throw std::invalid_argument("eisenstein: only weights 4 and 6 are built");
    if (p < 5) throw std::invalid_argument("eisenstein: requires p >= 5");
    // E4 = 1 + 240 sum sigma_3 q^n, E6 = 1 - 504 sum sigma_5 q^n.
    u32 scale = k == 4 ? 240 % p : (p - 504 % p) % p;
    QSeries s = sigma_series(k - 1, prec, p);
    for (u32& c : s.c) c = static_cast<u32>(static_cast<u64>(c) * scale % p);
    if (prec > 0) s.c[0] = 1 % p;
    return s;
}

QSeries delta(u32 prec, u32 p) {
    QSeries out = series_zero(p, prec);
    if (prec <= 1) return out;
    // eta = prod (1 - q^n): multiply the sparse binomials one at a time.
    std::vector<u32> eta(prec, 0);
    eta[0] = 1 % p;
    for (u32 n = 1; n < prec; ++n) {
        for (u32 i = prec; i-- > n;) {
            u32 sub = eta[i - n];
            if (sub != 0) eta[i] = (eta[i] + p - sub) % p;
        }
    }
    QSeries eta24 = series_pow(QSeries{p, std::move(eta)}, 24);
    for (u32 i = 1; i < prec; ++i) out.c[i] = eta24.c[i - 1];
    return out;
}

QSeries series_add(const QSeries& a, const QSeries& b) {
    check_compatible(a, b);
    QSeries r = a;
    for (size_t i = 0; i < r.c.size(); ++i) {
        r.c[i] += b.c[i];
        if (r.c[i] >= a.p) r.c[i] -= a.p;
    }
    return r;
}

QSeries series_sub(const QSeries& a, const QSeries& b) {
    check_compatible(a, b);
    QSeries r = a;
    for (size_t i = 0; i < r.c.size(); ++i) {
        r.c[i] = r.c[i] >= b.c[i] ? r.c[i] - b.c[i] : r.c[i] + a.p - b.c[i];
    }
    return r;
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
    check_compatible(a, b);
    const u32 p = a.p;
    const u32 n = a.prec();
    QSeries r = series_zero(p, n);
    // Coefficient k = sum_{i<=k} a_i b_{k-i}. Raw u64 accumulation is safe
    // when n*(p-1)^2 fits; reduce per step otherwise.
    const u64 pm1 = p - 1;
    const bool raw = n == 0 || pm1 * pm1 <= (~0ULL) / n;
    if (raw) {
        for (u32 k = 0; k < n; ++k) {
            u64 acc = 0;
            for (u32 i = 0; i <= k; ++i) {
                acc += static_cast<u64>(a.c[i]) * b.c[k - i];
            }
            r.c[k] = static_cast<u32>(acc % p);
        }
    } else {
        for (u32 k = 0; k < n; ++k) {
            u64 acc = 0;
            for (u32 i = 0; i <= k; ++i) {
                acc = (acc + static_cast<u64>(a.c[i]) * b.c[k - i]) % p;
            }
            r.c[k] = static_cast<u32>(acc);
        }
    }
    return r;
}

QSeries series_pow(const QSeries& a, u32 e) {
    QSeries acc = series_const(a.p, a.prec(), 1);
    QSeries base = a;
    while (e > 0) {
        if (e & 1) acc = series_mul(acc, base);
        e >>= 1;
        if (e) base = series_mul(base, base);
    }
    return acc;
}

}  // namespace galrep
