#include "galrep/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace galrep {

namespace {

constexpr u32 kMaxPrime = (1u << 31) - 1;

std::vector<u32> prime_divisors(u32 n) {
    std::vector<u32> out;
    for (u32 d = 2; static_cast<u64>(d) * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// PrimeField

PrimeField::PrimeField(u32 p) : p_(p) {
    if (p > kMaxPrime) throw std::invalid_argument("PrimeField: p exceeds 2^31");
    if (!is_prime(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
}

u32 PrimeField::pow(u32 a, u64 e) const {
    u64 base = a % p_;
    u64 acc = 1;
    while (e > 0) {
        if (e & 1) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<u32>(acc);
}

u32 PrimeField::inv(u32 a) const {
    a %= p_;
    if (a == 0) throw std::domain_error("PrimeField: division by zero");
    i64 old_r = p_, r = a;
    i64 old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_t -= q * t;
        std::swap(old_t, t);
    }
    // old_r == gcd == 1 since p is prime and a != 0
    if (old_t < 0) old_t += p_;
    return static_cast<u32>(old_t);
}

u32 PrimeField::reduce_signed(i64 v) const {
    i64 r = v % static_cast<i64>(p_);
    if (r < 0) r += p_;
    return static_cast<u32>(r);
}

// ---------------------------------------------------------------------------
// FieldCtx

FieldCtx::FieldCtx(u32 p, u32 m, std::vector<u32> modulus)
    : fp_(p), m_(m), modulus_(std::move(modulus)) {}

FieldCtxPtr FieldCtx::prime(u32 p) {
    return FieldCtxPtr(new FieldCtx(p, 1, {0, 1}));
}

FieldCtxPtr FieldCtx::create(u32 p, std::vector<u32> modulus) {
    PrimeField fp(p);
    if (modulus.size() < 2) throw std::invalid_argument("FieldCtx: modulus must have degree >= 1");
    for (u32& c : modulus) c %= p;
    if (modulus.back() != 1) throw std::invalid_argument("FieldCtx: modulus must be monic");
    u32 m = static_cast<u32>(modulus.size()) - 1;
    if (m == 1) {
        if (modulus[0] != 0) {
            // x + c defines F_p as well; normalize to the conventional x.
            return prime(p);
        }
        return prime(p);
    }
    FieldCtxPtr base = prime(p);
    std::vector<FFElement> coeffs;
    coeffs.reserve(modulus.size());
    for (u32 c : modulus) coeffs.push_back(base->from_int(c));
    FFPoly f(base, std::move(coeffs));
    if (!is_irreducible(f)) {
        throw std::invalid_argument("FieldCtx: modulus is not irreducible over F_" + std::to_string(p));
    }
    return FieldCtxPtr(new FieldCtx(p, m, std::move(modulus)));
}

bool FieldCtx::same(const FieldCtx& other) const {
    if (this == &other) return true;
    return p() == other.p() && m_ == other.m_ && modulus_ == other.modulus_;
}

FFElement FieldCtx::zero() const {
    return FFElement(shared_from_this(), std::vector<u32>(m_, 0));
}

FFElement FieldCtx::one() const {
    std::vector<u32> c(m_, 0);
    c[0] = p() == 1 ? 0 : 1;
    return FFElement(shared_from_this(), std::move(c));
}

FFElement FieldCtx::gen() const {
    std::vector<u32> c(m_, 0);
    if (m_ > 1) c[1] = 1;
    return FFElement(shared_from_this(), std::move(c));
}

FFElement FieldCtx::from_int(i64 v) const {
    std::vector<u32> c(m_, 0);
    c[0] = fp_.reduce_signed(v);
    return FFElement(shared_from_this(), std::move(c));
}

FFElement FieldCtx::element(std::vector<u32> coeffs) const {
    if (coeffs.size() > m_) throw std::invalid_argument("FieldCtx::element: too many coefficients");
    coeffs.resize(m_, 0);
    for (u32& c : coeffs) c %= p();
    return FFElement(shared_from_this(), std::move(coeffs));
}

std::string FieldCtx::to_string() const {
    std::ostringstream os;
    os << "F_" << p();
    if (m_ > 1) os << "^" << m_;
    return os.str();
}

// ---------------------------------------------------------------------------
// FFElement

FFElement::FFElement(FieldCtxPtr ctx, std::vector<u32> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (c_.size() != ctx_->degree()) throw std::invalid_argument("FFElement: wrong coefficient count");
}

void FFElement::check_same_ctx(const FFElement& o) const {
    if (!ctx_ || !o.ctx_) throw std::invalid_argument("FFElement: null context");
    if (ctx_.get() == o.ctx_.get()) return;
    if (!ctx_->same(*o.ctx_)) {
        throw std::invalid_argument("FFElement: mismatched field contexts (" + ctx_->to_string() +
                                    " vs " + o.ctx_->to_string() + ")");
    }
}

bool FFElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u32 v) { return v == 0; });
}

u32 FFElement::as_prime_residue() const {
    for (size_t i = 1; i < c_.size(); ++i) {
        if (c_[i] != 0) throw std::domain_error("FFElement: not a prime-field element");
    }
    return c_[0];
}

FFElement FFElement::operator+(const FFElement& o) const {
    check_same_ctx(o);
    const PrimeField& fp = ctx_->fp();
    std::vector<u32> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = fp.add(c_[i], o.c_[i]);
    return FFElement(ctx_, std::move(r));
}

FFElement FFElement::operator-(const FFElement& o) const {
    check_same_ctx(o);
    const PrimeField& fp = ctx_->fp();
    std::vector<u32> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = fp.sub(c_[i], o.c_[i]);
    return FFElement(ctx_, std::move(r));
}

FFElement FFElement::operator-() const {
    const PrimeField& fp = ctx_->fp();
    std::vector<u32> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = fp.neg(c_[i]);
    return FFElement(ctx_, std::move(r));
}

FFElement FFElement::operator*(const FFElement& o) const {
    check_same_ctx(o);
    const u32 m = ctx_->degree();
    const u32 p = ctx_->p();
    if (m == 1) {
        return FFElement(ctx_, {ctx_->fp().mul(c_[0], o.c_[0])});
    }
    // Schoolbook product then reduction by the monic modulus.
    std::vector<u64> prod(2 * m - 1, 0);
    for (u32 i = 0; i < m; ++i) {
        if (c_[i] == 0) continue;
        for (u32 j = 0; j < m; ++j) {
            prod[i + j] = (prod[i + j] + static_cast<u64>(c_[i]) * o.c_[j]) % p;
        }
    }
    const std::vector<u32>& mod = ctx_->modulus();
    for (u32 i = 2 * m - 2; i >= m; --i) {
        u64 lead = prod[i] % p;
        if (lead != 0) {
            // prod -= lead * x^{i-m} * modulus
            for (u32 j = 0; j < m; ++j) {
                u64 sub = lead * mod[j] % p;
                prod[i - m + j] = (prod[i - m + j] + p - sub) % p;
            }
        }
        prod[i] = 0;
        if (i == m) break;
    }
    std::vector<u32> r(m);
    for (u32 i = 0; i < m; ++i) r[i] = static_cast<u32>(prod[i] % p);
    return FFElement(ctx_, std::move(r));
}

FFElement FFElement::pow(u64 e) const {
    FFElement base = *this;
    FFElement acc = ctx_->one();
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

FFElement FFElement::inv() const {
    if (is_zero()) throw std::domain_error("FFElement: division by zero");
    const u32 m = ctx_->degree();
    if (m == 1) return FFElement(ctx_, {ctx_->fp().inv(c_[0])});
    // Extended Euclid on the representative and the modulus over F_p.
    FieldCtxPtr base = FieldCtx::prime(ctx_->p());
    auto lift = [&](const std::vector<u32>& v) {
        std::vector<FFElement> cs;
        cs.reserve(v.size());
        for (u32 x : v) cs.push_back(base->from_int(x));
        return FFPoly(base, std::move(cs));
    };
    FFPoly r0 = lift(ctx_->modulus());
    FFPoly r1 = lift(c_);
    FFPoly t0 = FFPoly::zero(base);
    FFPoly t1 = FFPoly::constant(base->one());
    while (!r1.is_zero()) {
        FFPoly q(base), rem(base);
        FFPoly::divmod(r0, r1, q, rem);
        r0 = r1;
        r1 = rem;
        FFPoly t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    // r0 = gcd (a nonzero constant); normalize t0 by it.
    FFElement lead = r0.leading();
    FFPoly inv_poly = t0.scale(lead.inv());
    std::vector<u32> r(m, 0);
    for (int i = 0; i <= inv_poly.degree(); ++i) r[i] = inv_poly[i].coeffs()[0];
    return FFElement(ctx_, std::move(r));
}

FFElement FFElement::operator/(const FFElement& o) const {
    check_same_ctx(o);
    return *this * o.inv();
}

bool FFElement::operator==(const FFElement& o) const {
    check_same_ctx(o);
    return c_ == o.c_;
}

FFElement FFElement::frobenius() const { return pow(ctx_->p()); }

u32 FFElement::degree_over_prime() const {
    FFElement a = frobenius();
    u32 t = 1;
    while (!(a == *this)) {
        a = a.frobenius();
        ++t;
        if (t > ctx_->degree()) throw std::logic_error("degree_over_prime: did not stabilize");
    }
    return t;
}

FFElement FFElement::scale(u32 s) const {
    const PrimeField& fp = ctx_->fp();
    s %= ctx_->p();
    std::vector<u32> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = fp.mul(c_[i], s);
    return FFElement(ctx_, std::move(r));
}

bool FFElement::lex_less(const FFElement& o) const {
    return c_ < o.c_;
}

std::string FFElement::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// FFPoly

FFPoly::FFPoly(FieldCtxPtr ctx, std::vector<FFElement> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    normalize();
}

void FFPoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FFPoly FFPoly::constant(const FFElement& c) {
    return FFPoly(c.ctx(), {c});
}

FFPoly FFPoly::x(const FieldCtxPtr& ctx) {
    return FFPoly(ctx, {ctx->zero(), ctx->one()});
}

FFPoly FFPoly::from_ints(const FieldCtxPtr& ctx, const std::vector<i64>& coeffs) {
    std::vector<FFElement> cs;
    cs.reserve(coeffs.size());
    for (i64 v : coeffs) cs.push_back(ctx->from_int(v));
    return FFPoly(ctx, std::move(cs));
}

bool FFPoly::is_monic() const {
    return !c_.empty() && c_.back() == ctx_->one();
}

FFElement FFPoly::coeff_or_zero(size_t i) const {
    return i < c_.size() ? c_[i] : ctx_->zero();
}

const FFElement& FFPoly::leading() const {
    if (c_.empty()) throw std::domain_error("FFPoly: zero polynomial has no leading coefficient");
    return c_.back();
}

FFPoly FFPoly::operator+(const FFPoly& o) const {
    std::vector<FFElement> r;
    size_t n = std::max(c_.size(), o.c_.size());
    r.reserve(n);
    for (size_t i = 0; i < n; ++i) r.push_back(coeff_or_zero(i) + o.coeff_or_zero(i));
    return FFPoly(ctx_, std::move(r));
}

FFPoly FFPoly::operator-(const FFPoly& o) const {
    std::vector<FFElement> r;
    size_t n = std::max(c_.size(), o.c_.size());
    r.reserve(n);
    for (size_t i = 0; i < n; ++i) r.push_back(coeff_or_zero(i) - o.coeff_or_zero(i));
    return FFPoly(ctx_, std::move(r));
}

FFPoly FFPoly::operator*(const FFPoly& o) const {
    if (is_zero() || o.is_zero()) return FFPoly::zero(ctx_);
    std::vector<FFElement> r(c_.size() + o.c_.size() - 1, ctx_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            r[i + j] += c_[i] * o.c_[j];
        }
    }
    return FFPoly(ctx_, std::move(r));
}

FFPoly FFPoly::scale(const FFElement& s) const {
    std::vector<FFElement> r;
    r.reserve(c_.size());
    for (const FFElement& e : c_) r.push_back(e * s);
    return FFPoly(ctx_, std::move(r));
}

void FFPoly::divmod(const FFPoly& a, const FFPoly& b, FFPoly& q, FFPoly& r) {
    if (b.is_zero()) throw std::domain_error("FFPoly: division by zero polynomial");
    FieldCtxPtr ctx = a.ctx_;
    if (a.degree() < b.degree()) {
        q = FFPoly::zero(ctx);
        r = a;
        return;
    }
    FFElement lead_inv = b.leading().inv();
    std::vector<FFElement> rem = a.c_;
    std::vector<FFElement> quot(a.degree() - b.degree() + 1, ctx->zero());
    for (int i = a.degree(); i >= b.degree(); --i) {
        FFElement coef = rem[i];
        if (coef.is_zero()) continue;
        FFElement factor = coef * lead_inv;
        quot[i - b.degree()] = factor;
        for (int j = 0; j <= b.degree(); ++j) {
            rem[i - b.degree() + j] -= factor * b.c_[j];
        }
    }
    q = FFPoly(ctx, std::move(quot));
    r = FFPoly(ctx, std::move(rem));
}

FFPoly FFPoly::operator%(const FFPoly& o) const {
    FFPoly q(ctx_), r(ctx_);
    divmod(*this, o, q, r);
    return r;
}

FFPoly FFPoly::operator/(const FFPoly& o) const {
    FFPoly q(ctx_), r(ctx_);
    divmod(*this, o, q, r);
    return q;
}

bool FFPoly::operator==(const FFPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!(c_[i] == o.c_[i])) return false;
    }
    return true;
}

FFPoly FFPoly::derivative() const {
    if (c_.size() <= 1) return FFPoly::zero(ctx_);
    std::vector<FFElement> r;
    r.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) {
        r.push_back(c_[i].scale(static_cast<u32>(i % ctx_->p())));
    }
    return FFPoly(ctx_, std::move(r));
}

FFPoly FFPoly::monic() const {
    if (is_zero()) throw std::domain_error("FFPoly: cannot normalize zero polynomial");
    if (is_monic()) return *this;
    return scale(leading().inv());
}

FFElement FFPoly::eval(const FFElement& at) const {
    FFElement acc = at.ctx()->zero();
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * at + c_[i];
    }
    return acc;
}

bool FFPoly::lex_less(const FFPoly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].coeffs() != o.c_[i].coeffs()) return c_[i].coeffs() < o.c_[i].coeffs();
    }
    return false;
}

std::string FFPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        os << c_[i].to_string();
        if (i == 1) os << "*x";
        else if (i > 1) os << "*x^" << i;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Polynomial helpers

FFPoly gcd(const FFPoly& a, const FFPoly& b) {
    FFPoly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        FFPoly rem = r0 % r1;
        r0 = r1;
        r1 = rem;
    }
    if (r0.is_zero()) return r0;
    return r0.monic();
}

FFPoly mulmod(const FFPoly& a, const FFPoly& b, const FFPoly& mod) {
    return (a * b) % mod;
}

FFPoly powmod(const FFPoly& base, u64 e, const FFPoly& mod) {
    FFPoly acc = FFPoly::constant(base.ctx()->one()) % mod;
    FFPoly b = base % mod;
    while (e > 0) {
        if (e & 1) acc = mulmod(acc, b, mod);
        e >>= 1;
        if (e) b = mulmod(b, b, mod);
    }
    return acc;
}

FFPoly pow_p_iter_mod(const FFPoly& h, u32 iterations, const FFPoly& mod) {
    FFPoly r = h % mod;
    const u32 p = h.ctx()->p();
    for (u32 i = 0; i < iterations; ++i) r = powmod(r, p, mod);
    return r;
}

namespace {

/// h^{q} mod f where q = p^m is the size of the coefficient field.
FFPoly pow_q_mod(const FFPoly& h, const FFPoly& mod) {
    return pow_p_iter_mod(h, h.ctx()->degree(), mod);
}

}  // namespace

bool is_irreducible(const FFPoly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    const u32 n = static_cast<u32>(f.degree());
    FFPoly fm = f.monic();
    FieldCtxPtr ctx = f.ctx();
    FFPoly xp = FFPoly::x(ctx);
    // x^{q^i} mod f for i = 1..n; check gcd conditions at i = n/r and
    // equality at i = n.
    std::vector<u32> checkpoints;
    for (u32 r : prime_divisors(n)) checkpoints.push_back(n / r);
    FFPoly h = xp % fm;
    for (u32 i = 1; i <= n; ++i) {
        h = pow_q_mod(h, fm);
        if (std::find(checkpoints.begin(), checkpoints.end(), i) != checkpoints.end()) {
            FFPoly g = gcd(h - xp, fm);
            if (g.degree() != 0) return false;
        }
        if (i == n && !(h == xp % fm)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Factorization: squarefree -> distinct degree -> equal degree

namespace {

/// For f with f' = 0 (so f(x) = sum a_i x^{p i}), the polynomial G with
/// G^p = f: coefficients a_{p i}^{p^{m-1}}.
FFPoly pth_root(const FFPoly& f) {
    const u32 p = f.ctx()->p();
    const u32 m = f.ctx()->degree();
    std::vector<FFElement> out;
    out.reserve(f.degree() / p + 1);
    for (int i = 0; i <= f.degree(); i += p) {
        FFElement c = f[i];
        for (u32 j = 0; j + 1 < m; ++j) c = c.frobenius();
        out.push_back(c);
    }
    return FFPoly(f.ctx(), std::move(out));
}

std::vector<std::pair<FFPoly, u32>> squarefree_decompose(const FFPoly& f) {
    std::vector<std::pair<FFPoly, u32>> result;
    const u32 p = f.ctx()->p();
    FFPoly fd = f.derivative();
    if (fd.is_zero()) {
        FFPoly g = pth_root(f).monic();
        for (auto& [s, e] : squarefree_decompose(g)) result.emplace_back(s, e * p);
        return result;
    }
    FFPoly c = gcd(f, fd);
    FFPoly w = f / c;
    u32 i = 1;
    while (w.degree() > 0) {
        FFPoly y = gcd(w, c);
        FFPoly z = w / y;
        if (z.degree() > 0) result.emplace_back(z.monic(), i);
        c = c / y;
        w = y;
        ++i;
    }
    if (c.degree() > 0) {
        FFPoly g = pth_root(c).monic();
        for (auto& [s, e] : squarefree_decompose(g)) result.emplace_back(s, e * p);
    }
    return result;
}

/// (product of irreducibles of degree d, d) pairs for monic squarefree f.
std::vector<std::pair<FFPoly, u32>> distinct_degree_split(const FFPoly& f) {
    std::vector<std::pair<FFPoly, u32>> result;
    FieldCtxPtr ctx = f.ctx();
    FFPoly xp = FFPoly::x(ctx);
    FFPoly fstar = f;
    FFPoly h = xp % fstar;
    for (u32 d = 1; fstar.degree() >= static_cast<int>(2 * d); ++d) {
        h = pow_q_mod(h, fstar);
        FFPoly g = gcd(h - xp, fstar);
        if (g.degree() > 0) {
            result.emplace_back(g.monic(), d);
            fstar = fstar / g;
            if (fstar.degree() == 0) break;
            h = h % fstar;
        }
    }
    if (fstar.degree() > 0) {
        result.emplace_back(fstar.monic(), static_cast<u32>(fstar.degree()));
    }
    return result;
}

/// Deterministic trial polynomial of degree < bound, derived from counter t.
FFPoly trial_poly(const FieldCtxPtr& ctx, u32 bound, u64 t) {
    const u32 p = ctx->p();
    const u32 m = ctx->degree();
    std::vector<FFElement> coeffs;
    coeffs.reserve(bound);
    for (u32 i = 0; i < bound; ++i) {
        std::vector<u32> digits(m);
        for (u32 j = 0; j < m; ++j) {
            digits[j] = static_cast<u32>(splitmix64(t * 0x10001ULL + i * 0x101ULL + j) % p);
        }
        coeffs.push_back(ctx->element(std::move(digits)));
    }
    return FFPoly(ctx, std::move(coeffs));
}

/// Split a monic squarefree product of degree-d irreducibles into its
/// irreducible parts (Cantor-Zassenhaus with deterministic trials).
void equal_degree_split(const FFPoly& f, u32 d, std::vector<FFPoly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f.monic());
        return;
    }
    FieldCtxPtr ctx = f.ctx();
    const u32 p = ctx->p();
    const u32 m = ctx->degree();
    FFPoly one = FFPoly::constant(ctx->one());
    for (u64 t = 1;; ++t) {
        FFPoly r = trial_poly(ctx, static_cast<u32>(f.degree()), t);
        if (r.degree() < 1) continue;  // constants never split
        FFPoly g(ctx);
        if (p == 2) {
            // Trace map over F_2: sum of r^{2^i}, i < d*m.
            FFPoly tr = r % f;
            FFPoly cur = tr;
            for (u32 i = 1; i < d * m; ++i) {
                cur = mulmod(cur, cur, f);
                tr = tr + cur;
            }
            g = gcd(tr, f);
            if (g.degree() == 0 || g.degree() == f.degree()) g = gcd(tr + one, f);
        } else {
            // r^{(q^d-1)/2} mod f without big integers:
            // (q^d-1)/2 = (1 + q + ... + q^{d-1}) * (1 + p + ... + p^{m-1}) * (p-1)/2.
            FFPoly s = r % f;
            FFPoly acc = s;
            for (u32 i = 1; i < d; ++i) {
                s = pow_q_mod(s, f);
                acc = mulmod(acc, s, f);
            }
            FFPoly tpow = acc;
            FFPoly cur = acc;
            for (u32 j = 1; j < m; ++j) {
                cur = pow_p_iter_mod(cur, 1, f);
                tpow = mulmod(tpow, cur, f);
            }
            FFPoly u = powmod(tpow, (p - 1) / 2, f);
            g = gcd(u - one, f);
            if (g.degree() == 0 || g.degree() == f.degree()) g = gcd(u + one, f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g.monic(), d, out);
            equal_degree_split((f / g).monic(), d, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FFPoly, u32>> factor(const FFPoly& f) {
    if (f.is_zero()) throw std::domain_error("factor: zero polynomial");
    if (f.degree() == 0) return {};
    FFPoly fm = f.monic();
    std::vector<std::pair<FFPoly, u32>> result;
    for (auto& [sf, mult] : squarefree_decompose(fm)) {
        for (auto& [prod, d] : distinct_degree_split(sf)) {
            std::vector<FFPoly> irreducibles;
            equal_degree_split(prod, d, irreducibles);
            for (FFPoly& g : irreducibles) result.emplace_back(std::move(g), mult);
        }
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        if (a.first.lex_less(b.first)) return true;
        if (b.first.lex_less(a.first)) return false;
        return a.second < b.second;
    });
    return result;
}

// ---------------------------------------------------------------------------
// Canonical fields

FFPoly canonical_modulus(u32 p, u32 m) {
    if (m < 1) throw std::invalid_argument("canonical_modulus: degree must be >= 1");
    FieldCtxPtr base = FieldCtx::prime(p);
    if (m == 1) return FFPoly::x(base);
    // Enumerate non-leading coefficient vectors by integer value sum c_i p^i.
    for (u64 v = 0;; ++v) {
        std::vector<FFElement> coeffs;
        coeffs.reserve(m + 1);
        u64 rest = v;
        for (u32 i = 0; i < m; ++i) {
            coeffs.push_back(base->from_int(static_cast<i64>(rest % p)));
            rest /= p;
        }
        if (rest != 0) throw std::logic_error("canonical_modulus: search exhausted");
        coeffs.push_back(base->one());
        FFPoly candidate(base, std::move(coeffs));
        if (is_irreducible(candidate)) return candidate;
    }
}

FieldCtxPtr canonical_field(u32 p, u32 m) {
    static std::mutex mu;
    static std::map<std::pair<u32, u32>, FieldCtxPtr> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, m});
        if (it != cache.end()) return it->second;
    }
    FieldCtxPtr ctx;
    if (m == 1) {
        ctx = FieldCtx::prime(p);
    } else {
        FFPoly mod = canonical_modulus(p, m);
        std::vector<u32> coeffs;
        coeffs.reserve(m + 1);
        for (int i = 0; i <= mod.degree(); ++i) coeffs.push_back(mod[i].coeffs()[0]);
        ctx = FieldCtx::create(p, std::move(coeffs));
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(std::make_pair(p, m), ctx);
    return it->second;
}

// ---------------------------------------------------------------------------
// Flat extension construction

namespace {

/// Incremental echelon basis over F_p with expression tracking: each
/// inserted vector is reduced against the pivot rows; insert() reports
/// either the new rank or the dependence combination.
class KrylovBasis {
public:
    KrylovBasis(const PrimeField& fp, u32 dim) : fp_(fp), dim_(dim) {}

    /// Try to add v as the image of "power index" idx. Returns false and
    /// fills dependence (coefficients over earlier indices) if v is in the
    /// span.
    bool insert(std::vector<u32> v, std::vector<u32>& dependence) {
        std::vector<u32> combo(rows_.size() + 1, 0);
        combo.back() = 1;  // coefficient of the new power itself
        for (size_t r = 0; r < rows_.size(); ++r) {
            u32 lead = v[pivot_[r]];
            if (lead == 0) continue;
            for (u32 j = 0; j < dim_; ++j) v[j] = fp_.sub(v[j], fp_.mul(lead, rows_[r][j]));
            for (size_t c = 0; c < transform_[r].size(); ++c) {
                combo[c] = fp_.sub(combo[c], fp_.mul(lead, transform_[r][c]));
            }
        }
        u32 piv = dim_;
        for (u32 j = 0; j < dim_; ++j) {
            if (v[j] != 0) {
                piv = j;
                break;
            }
        }
        if (piv == dim_) {
            dependence = std::move(combo);
            return false;
        }
        u32 inv = fp_.inv(v[piv]);
        for (u32 j = 0; j < dim_; ++j) v[j] = fp_.mul(v[j], inv);
        for (u32& c : combo) c = fp_.mul(c, inv);
        rows_.push_back(std::move(v));
        pivot_.push_back(piv);
        combo.resize(rows_.size(), 0);
        transform_.push_back(std::move(combo));
        return true;
    }

    /// Express an arbitrary vector over the inserted powers; requires the
    /// basis to span it.
    std::vector<u32> express(std::vector<u32> v) const {
        std::vector<u32> combo(rows_.size(), 0);
        for (size_t r = 0; r < rows_.size(); ++r) {
            u32 lead = v[pivot_[r]];
            if (lead == 0) continue;
            for (u32 j = 0; j < dim_; ++j) v[j] = fp_.sub(v[j], fp_.mul(lead, rows_[r][j]));
            for (size_t c = 0; c < transform_[r].size(); ++c) {
                combo[c] = fp_.add(combo[c], fp_.mul(lead, transform_[r][c]));
            }
        }
        for (u32 j = 0; j < dim_; ++j) {
            if (v[j] != 0) throw std::logic_error("KrylovBasis: vector outside span");
        }
        return combo;
    }

    size_t rank() const { return rows_.size(); }

private:
    const PrimeField& fp_;
    u32 dim_;
    std::vector<std::vector<u32>> rows_;
    std::vector<u32> pivot_;
    std::vector<std::vector<u32>> transform_;  // row = combo of power indices
};

/// Flatten a tower element (polynomial in y of degree < e over the base
/// field of degree m) into an F_p vector of length m*e, slot b*m + a for
/// the coefficient of x^a y^b.
std::vector<u32> flatten_tower(const FFPoly& t, u32 m, u32 e) {
    std::vector<u32> v(m * e, 0);
    for (int b = 0; b <= t.degree(); ++b) {
        const std::vector<u32>& cs = t[b].coeffs();
        for (u32 a = 0; a < m; ++a) v[b * m + a] = cs[a];
    }
    return v;
}

struct PrimitiveSearch {
    FFPoly theta;            // tower element
    std::vector<u32> minpoly;  // monic, degree n, coefficients mod p
    KrylovBasis basis;
};

/// Find a primitive element theta of the tower base[y]/(g) over F_p among
/// deterministic candidates, returning its minimal polynomial and the
/// Krylov basis of its powers.
PrimitiveSearch find_primitive(const FieldCtxPtr& base, const FFPoly& g) {
    const u32 p = base->p();
    const u32 m = base->degree();
    const u32 e = static_cast<u32>(g.degree());
    const u32 n = m * e;
    const PrimeField& fp = base->fp();

    FFPoly y = FFPoly::x(base);  // the class of y in base[y]/(g)
    FFElement xgen = base->gen();

    auto try_theta = [&](const FFPoly& theta) -> std::optional<PrimitiveSearch> {
        KrylovBasis kb(fp, n);
        FFPoly power = FFPoly::constant(base->one());
        std::vector<u32> dep;
        for (u32 t = 0; t <= n; ++t) {
            if (!kb.insert(flatten_tower(power, m, e), dep)) {
                if (t < n) return std::nullopt;  // degree too small
                // dep has length n+1 with dep[n] = 1: minpoly = x^n - sum dep[i] x^i
                // dep satisfies sum dep[c] theta^c = 0 with dep[n] = 1, so it
                // is the monic minimal polynomial itself.
                return PrimitiveSearch{theta, std::move(dep), std::move(kb)};
            }
            power = mulmod(power, theta, g);
        }
        throw std::logic_error("find_primitive: power sequence did not terminate");
    };

    if (m == 1) {
        // The tower is already a flat extension of F_p; y itself is primitive.
        auto res = try_theta(y);
        if (!res) throw std::logic_error("find_primitive: y not primitive over prime base");
        return *std::move(res);
    }
    for (u32 c = 0; c < p; ++c) {
        FFPoly theta = y + FFPoly::constant(xgen.scale(c));
        if (auto res = try_theta(theta)) return *std::move(res);
    }
    // Escalate: theta = y + c1 x + c2 x^2 (c2 > 0), still deterministic.
    for (u32 c2 = 1; c2 < p; ++c2) {
        FFElement x2 = (xgen * xgen).scale(c2);
        for (u32 c1 = 0; c1 < p; ++c1) {
            FFPoly theta = y + FFPoly::constant(xgen.scale(c1) + x2);
            if (auto res = try_theta(theta)) return *std::move(res);
        }
    }
    throw std::logic_error("find_primitive: no primitive element found");
}

FFElement element_from_combo(const FieldCtxPtr& field, const std::vector<u32>& combo) {
    // combo are coordinates over powers z^0..z^{n-1} of the field generator,
    // which coincide with the coefficient representation.
    std::vector<u32> coeffs(combo);
    return field->element(std::move(coeffs));
}

}  // namespace

FFElement Extension::embed(const FFElement& a) const {
    // a = sum a_i x^i over the base; image = sum a_i base_gen_image^i.
    const std::vector<u32>& cs = a.coeffs();
    FFElement acc = field->zero();
    for (size_t i = cs.size(); i-- > 0;) {
        acc = acc * base_gen_image + field->from_int(cs[i]);
    }
    return acc;
}

Extension extend(const FieldCtxPtr& base, const FFPoly& g) {
    if (!g.ctx()->same(*base)) throw std::invalid_argument("extend: g not over the base field");
    if (g.degree() < 2) throw std::invalid_argument("extend: degree of g must be >= 2");
    if (!g.is_monic()) throw std::invalid_argument("extend: g must be monic");
    const u32 p = base->p();
    const u32 m = base->degree();
    const u32 e = static_cast<u32>(g.degree());
    const u32 n = m * e;

    PrimitiveSearch prim = find_primitive(base, g);
    FieldCtxPtr field = FieldCtx::create(p, prim.minpoly);

    // Images of the base generator x and of the root y under the
    // isomorphism sending theta to the new field generator z.
    FFPoly y_elem = FFPoly::x(base);
    FFPoly x_elem = FFPoly::constant(base->gen());
    FFElement phi_y = element_from_combo(field, prim.basis.express(flatten_tower(y_elem, m, e)));
    if (m == 1) {
        // Unique embedding of F_p; return the direct image of y.
        return Extension{field, field->zero(), phi_y};
    }
    FFElement phi_x = element_from_combo(field, prim.basis.express(flatten_tower(x_elem, m, e)));

    // Pin the embedding to the lexicographically least root of the base
    // modulus, then take the least compatible image of y.
    std::vector<i64> base_mod_ints(base->modulus().begin(), base->modulus().end());
    FFPoly base_mod = FFPoly::from_ints(FieldCtx::prime(p), base_mod_ints);
    std::vector<FFElement> roots = roots_in_field(base_mod, field);
    if (roots.empty()) throw std::logic_error("extend: base modulus has no root in extension");
    const FFElement& target_root = roots.front();

    FFElement cur_x = phi_x;
    FFElement cur_y = phi_y;
    std::optional<FFElement> best_y;
    for (u32 j = 0; j < n; ++j) {
        if (cur_x == target_root) {
            if (!best_y || cur_y.lex_less(*best_y)) best_y = cur_y;
        }
        cur_x = cur_x.frobenius();
        cur_y = cur_y.frobenius();
    }
    if (!best_y) throw std::logic_error("extend: no Frobenius power matches the chosen root");
    return Extension{field, target_root, *best_y};
}

std::vector<FFElement> roots_in_field(const FFPoly& f, const FieldCtxPtr& target) {
    if (f.is_zero()) throw std::domain_error("roots_in_field: zero polynomial");
    if (f.ctx()->degree() != 1) {
        throw std::invalid_argument("roots_in_field: polynomial must have prime-field coefficients");
    }
    if (f.ctx()->p() != target->p()) {
        throw std::invalid_argument("roots_in_field: characteristic mismatch");
    }
    std::vector<FFElement> lifted;
    lifted.reserve(f.degree() + 1);
    for (int i = 0; i <= f.degree(); ++i) lifted.push_back(target->from_int(f[i].coeffs()[0]));
    FFPoly ft(target, std::move(lifted));
    if (ft.degree() < 1) return {};
    std::vector<FFElement> roots;
    for (auto& [fac, mult] : factor(ft)) {
        if (fac.degree() == 1) roots.push_back(-fac[0]);
    }
    std::sort(roots.begin(), roots.end(),
              [](const FFElement& a, const FFElement& b) { return a.lex_less(b); });
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](const FFElement& a, const FFElement& b) { return a == b; }),
                roots.end());
    return roots;
}

}  // namespace galrep
