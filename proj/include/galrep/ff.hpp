#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "galrep/common.hpp"

namespace galrep {

/// Arithmetic in the prime field F_p. Residues are canonical: 0 <= v < p.
/// p is limited to p < 2^31 so products fit in 64-bit intermediates.
class PrimeField {
public:
    explicit PrimeField(u32 p);

    u32 p() const { return p_; }

    u32 add(u32 a, u32 b) const {
        u32 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
    u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }
    u32 mul(u32 a, u32 b) const {
        return static_cast<u32>(static_cast<u64>(a) * b % p_);
    }
    u32 pow(u32 a, u64 e) const;
    /// Inverse by extended Euclid; throws std::domain_error on 0.
    u32 inv(u32 a) const;
    u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }
    u32 reduce(u64 v) const { return static_cast<u32>(v % p_); }
    u32 reduce_signed(i64 v) const;

private:
    u32 p_;
};

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

class FFElement;
class FFPoly;

/// A finite field F_{p^m} presented as F_p[x]/(modulus), modulus monic
/// irreducible of degree m. For m = 1 the modulus is x and elements are
/// plain residues. Immutable after construction; share freely.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
public:
    /// The prime field F_p (modulus x).
    static FieldCtxPtr prime(u32 p);
    /// F_{p^m} with the given monic modulus (length m+1, coefficients mod p).
    /// Verifies irreducibility; throws std::invalid_argument if it fails.
    static FieldCtxPtr create(u32 p, std::vector<u32> modulus);

    u32 p() const { return fp_.p(); }
    u32 degree() const { return m_; }
    const std::vector<u32>& modulus() const { return modulus_; }
    const PrimeField& fp() const { return fp_; }
    u32 element_count_log_p() const { return m_; }

    bool same(const FieldCtx& other) const;

    FFElement zero() const;
    FFElement one() const;
    /// The class of x (zero when m = 1).
    FFElement gen() const;
    FFElement from_int(i64 v) const;
    /// Element from a coefficient vector (low degree first); shorter vectors
    /// are zero-padded, entries reduced mod p.
    FFElement element(std::vector<u32> coeffs) const;

    std::string to_string() const;

private:
    FieldCtx(u32 p, u32 m, std::vector<u32> modulus);

    PrimeField fp_;
    u32 m_;
    std::vector<u32> modulus_;
};

/// Element of a FieldCtx: coefficient vector of the representative
/// polynomial, lowest degree first, exactly m entries in [0, p).
class FFElement {
public:
    FFElement() = default;  // null element; usable only after assignment

    FFElement(FieldCtxPtr ctx, std::vector<u32> coeffs);

    const FieldCtxPtr& ctx() const { return ctx_; }
    const std::vector<u32>& coeffs() const { return c_; }
    bool is_zero() const;
    /// Constant-term view; valid only when degree_over_prime() == 1.
    u32 as_prime_residue() const;

    FFElement operator+(const FFElement& o) const;
    FFElement operator-(const FFElement& o) const;
    FFElement operator*(const FFElement& o) const;
    /// a / b with b != 0; inverse via extended Euclid on representatives.
    FFElement operator/(const FFElement& o) const;
    FFElement operator-() const;
    FFElement& operator+=(const FFElement& o) { return *this = *this + o; }
    FFElement& operator-=(const FFElement& o) { return *this = *this - o; }
    FFElement& operator*=(const FFElement& o) { return *this = *this * o; }

    bool operator==(const FFElement& o) const;
    bool operator!=(const FFElement& o) const { return !(*this == o); }

    FFElement pow(u64 e) const;
    FFElement inv() const;
    /// a^p, the field Frobenius.
    FFElement frobenius() const;
    /// Least t >= 1 with a^{p^t} == a, i.e. the degree of F_p(a) over F_p.
    u32 degree_over_prime() const;
    /// Multiply by a prime-field scalar (coefficient-wise).
    FFElement scale(u32 s) const;

    /// Lexicographic order on coefficient vectors (c0, c1, ...).
    bool lex_less(const FFElement& o) const;

    std::string to_string() const;

private:
    friend class FieldCtx;
    void check_same_ctx(const FFElement& o) const;

    FieldCtxPtr ctx_;
    std::vector<u32> c_;
};

/// Dense univariate polynomial over a FieldCtx, no trailing zero
/// coefficients (zero polynomial has an empty coefficient vector).
class FFPoly {
public:
    explicit FFPoly(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {}
    FFPoly(FieldCtxPtr ctx, std::vector<FFElement> coeffs);

    static FFPoly zero(FieldCtxPtr ctx) { return FFPoly(std::move(ctx)); }
    static FFPoly constant(const FFElement& c);
    static FFPoly x(const FieldCtxPtr& ctx);
    /// Convenience: coefficients given as integers (reduced mod p).
    static FFPoly from_ints(const FieldCtxPtr& ctx, const std::vector<i64>& coeffs);

    const FieldCtxPtr& ctx() const { return ctx_; }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const;
    const FFElement& operator[](size_t i) const { return c_[i]; }
    const std::vector<FFElement>& coeffs() const { return c_; }
    FFElement coeff_or_zero(size_t i) const;
    const FFElement& leading() const;

    FFPoly operator+(const FFPoly& o) const;
    FFPoly operator-(const FFPoly& o) const;
    FFPoly operator*(const FFPoly& o) const;
    FFPoly scale(const FFElement& s) const;
    /// Euclidean division; divisor must be nonzero.
    static void divmod(const FFPoly& a, const FFPoly& b, FFPoly& q, FFPoly& r);
    FFPoly operator%(const FFPoly& o) const;
    FFPoly operator/(const FFPoly& o) const;

    bool operator==(const FFPoly& o) const;
    bool operator!=(const FFPoly& o) const { return !(*this == o); }

    FFPoly derivative() const;
    FFPoly monic() const;
    FFElement eval(const FFElement& at) const;

    /// Total order: degree first, then coefficient vectors from the constant
    /// term upward, each element lexicographically. Used for deterministic
    /// sorting of factor lists and root lists.
    bool lex_less(const FFPoly& o) const;

    std::string to_string() const;

private:
    void normalize();

    FieldCtxPtr ctx_;
    std::vector<FFElement> c_;
};

FFPoly gcd(const FFPoly& a, const FFPoly& b);
FFPoly powmod(const FFPoly& base, u64 e, const FFPoly& mod);
FFPoly mulmod(const FFPoly& a, const FFPoly& b, const FFPoly& mod);
/// h^{p^k} mod f via iterated p-th powers.
FFPoly pow_p_iter_mod(const FFPoly& h, u32 iterations, const FFPoly& mod);

/// True iff f (monic, degree >= 1) is irreducible over its coefficient field.
bool is_irreducible(const FFPoly& f);

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicities: squarefree decomposition (including the p-th-power
/// case f(x) = g(x^p)), distinct-degree splitting, then equal-degree
/// splitting with a deterministic counter-based trial sequence. Output is
/// sorted by (degree, coefficient order) and reproducible run-to-run.
/// Throws std::domain_error on the zero polynomial.
std::vector<std::pair<FFPoly, u32>> factor(const FFPoly& f);

/// The first monic irreducible polynomial of degree m over F_p, in the
/// enumeration ordered by the integer value sum c_i p^i of the non-leading
/// coefficient vector (c0 ascending fastest). For m = 1 returns x.
FFPoly canonical_modulus(u32 p, u32 m);

/// Memoized field F_p[x]/(canonical_modulus(p, m)).
FieldCtxPtr canonical_field(u32 p, u32 m);

/// Result of flattening a tower base[y]/(g) into a single extension of F_p:
/// the new field, the image of the base field's generator, and the image of
/// the root y of g. embed() maps base elements through the generator image.
struct Extension {
    FieldCtxPtr field;
    FFElement base_gen_image;
    FFElement root;

    FFElement embed(const FFElement& a) const;
};

/// Flatten base[y]/(g) for monic irreducible g of degree >= 2 over base.
/// Searches primitive elements theta = y + c*x (then y + c1*x + c2*x^2)
/// deterministically; the embedding sends the base generator to the
/// lexicographically least root of the base modulus in the new field.
Extension extend(const FieldCtxPtr& base, const FFPoly& g);

/// All distinct roots in `target` of a polynomial with prime-field
/// coefficients, sorted lexicographically by coefficient vector.
std::vector<FFElement> roots_in_field(const FFPoly& f, const FieldCtxPtr& target);

}  // namespace galrep
