#include "galrep/eigensplit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace galrep {

namespace {

/// Restriction of T_ell to a block: with basis rows B (RREF, pivot columns
/// P) and the d x d operator matrix M over F_p (column i = image of basis
/// row i of the ambient space), the image of B_i has block coordinates
/// R[i][j] = (B M^T)[i][P_j].
FFMatrix restriction(const Block& blk, const HeckeMatrix& m) {
    const u32 r = blk.dim();
    const size_t d = blk.basis.cols();
    FFMatrix res(blk.field, r, r);
    for (u32 i = 0; i < r; ++i) {
        for (u32 j = 0; j < r; ++j) {
            FFElement acc = blk.field->zero();
            const u32 target_row = blk.pivots[j];
            for (size_t c = 0; c < d; ++c) {
                u32 scal = m.at(target_row, c);
                if (scal == 0) continue;
                acc += blk.basis.at(i, c).scale(scal);
            }
            res.at(i, j) = acc;
        }
    }
    return res;
}

FFMatrix embed_matrix(const FFMatrix& m, const Extension& ext) {
    FFMatrix out(ext.field, m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) out.at(i, j) = ext.embed(m.at(i, j));
    }
    return out;
}

/// Carve the generalized eigenspace ker((R - lambda)^e) out of a block,
/// returning the refined block over the (possibly extended) field.
Block carve(const Block& blk, const FFMatrix& r_mat, const FFElement& lambda, u32 mult,
            u32 ell, const Extension* ext) {
    const FieldCtxPtr& field = lambda.ctx();
    FFMatrix r_local = ext ? embed_matrix(r_mat, *ext) : r_mat;
    FFMatrix basis_local = ext ? embed_matrix(blk.basis, *ext) : blk.basis;

    FFMatrix nil = r_local.sub_scalar_diag(lambda).pow(mult);
    FFMatrix combos = left_kernel(nil);
    if (combos.rows() != mult) {
        throw std::logic_error("decompose: generalized eigenspace dimension mismatch");
    }
    FFMatrix new_basis = combos * basis_local;
    std::vector<u32> pivots = rref(new_basis);
    if (pivots.size() != mult) throw std::logic_error("decompose: dependent kernel vectors");

    Block out{field, blk.weight, std::move(new_basis), std::move(pivots), {}};
    out.eigvals.reserve(blk.eigvals.size() + 1);
    for (const auto& [l, a] : blk.eigvals) {
        out.eigvals.emplace_back(l, ext ? ext->embed(a) : a);
    }
    out.eigvals.emplace_back(ell, lambda);
    return out;
}

u64 block_weight_in_dim(const Block& b) {
    return static_cast<u64>(b.dim()) * b.field->degree();
}

}  // namespace

std::vector<Block> decompose(const WeightSpace& space, const std::vector<u32>& schedule) {
    if (schedule.empty()) throw std::invalid_argument("decompose: empty operator schedule");
    const u32 d = space.dim;
    FieldCtxPtr fp_ctx = FieldCtx::prime(space.p);

    Block whole{fp_ctx, space.k, FFMatrix::identity(fp_ctx, d), {}, {}};
    whole.pivots.resize(d);
    std::iota(whole.pivots.begin(), whole.pivots.end(), 0);
    std::vector<Block> blocks;
    blocks.push_back(std::move(whole));

    for (u32 ell : schedule) {
        HeckeMatrix m = hecke_matrix(space, ell);
        std::vector<Block> next;
        next.reserve(blocks.size());
        for (Block& blk : blocks) {
            FFMatrix r_mat = restriction(blk, m);
            const u32 r = blk.dim();
            if (r == 1) {
                blk.eigvals.emplace_back(ell, r_mat.at(0, 0));
                next.push_back(std::move(blk));
                continue;
            }
            FFPoly chi = charpoly(r_mat);
            auto factors = factor(chi);
            if (factors.size() == 1 && factors[0].first.degree() == 1) {
                // Scalar plus nilpotent: the whole block is the
                // generalized eigenspace already.
                blk.eigvals.emplace_back(ell, -factors[0].first[0]);
                next.push_back(std::move(blk));
                continue;
            }
            for (const auto& [g, mult] : factors) {
                if (g.degree() == 1) {
                    next.push_back(carve(blk, r_mat, -g[0], mult, ell, nullptr));
                } else {
                    Extension ext = extend(blk.field, g);
                    next.push_back(carve(blk, r_mat, ext.root, mult, ell, &ext));
                }
            }
        }
        blocks = std::move(next);
        u64 total = 0;
        for (const Block& b : blocks) total += block_weight_in_dim(b);
        if (total != d) throw std::logic_error("decompose: block dimensions do not conserve");
    }

    // Every surviving multi-dimensional block must be scalar-plus-nilpotent
    // for every scheduled operator; anything else means the schedule failed
    // to separate distinct eigensystems.
    for (const Block& blk : blocks) {
        if (blk.dim() == 1) continue;
        for (const auto& [ell, a] : blk.eigvals) {
            HeckeMatrix m = hecke_matrix(space, ell);
            FFMatrix r_mat = restriction(blk, m);
            if (!r_mat.sub_scalar_diag(a).pow(blk.dim()).is_zero()) {
                throw std::logic_error("decompose: splitting schedule exhausted at weight " +
                                       std::to_string(space.k));
            }
        }
    }
    return blocks;
}

// ---------------------------------------------------------------------------
// Canonicalization

namespace {

std::vector<u32> flatten_values(const std::vector<std::pair<u32, std::vector<u32>>>& values) {
    std::vector<u32> flat;
    for (const auto& [ell, cs] : values) {
        flat.insert(flat.end(), cs.begin(), cs.end());
    }
    return flat;
}

/// Minimal polynomial of a over F_p as the product of (x - conjugate).
FFPoly min_poly_over_prime(const FFElement& a) {
    const FieldCtxPtr& K = a.ctx();
    FFPoly acc = FFPoly::constant(K->one());
    FFPoly xp = FFPoly::x(K);
    FFElement conj = a;
    u32 deg = a.degree_over_prime();
    for (u32 i = 0; i < deg; ++i) {
        acc = acc * (xp - FFPoly::constant(conj));
        conj = conj.frobenius();
    }
    // Coefficients lie in the prime subfield; rebuild over F_p.
    FieldCtxPtr fp_ctx = FieldCtx::prime(K->p());
    std::vector<FFElement> coeffs;
    coeffs.reserve(acc.degree() + 1);
    for (int i = 0; i <= acc.degree(); ++i) {
        coeffs.push_back(fp_ctx->from_int(acc[i].as_prime_residue()));
    }
    return FFPoly(fp_ctx, std::move(coeffs));
}

/// Solve G c = v over F_p for several right-hand sides at once, where G's
/// columns are the flattened powers of the generator. Throws if a system
/// is inconsistent (cannot happen for values inside F_p(generator)).
std::vector<std::vector<u32>> solve_coordinates(const PrimeField& fp,
                                                const std::vector<std::vector<u32>>& gen_powers,
                                                const std::vector<std::vector<u32>>& rhs) {
    const size_t nrows = gen_powers[0].size();
    const size_t ncols = gen_powers.size();
    const size_t naug = rhs.size();
    std::vector<std::vector<u32>> mat(nrows, std::vector<u32>(ncols + naug, 0));
    for (size_t j = 0; j < ncols; ++j) {
        for (size_t i = 0; i < nrows; ++i) mat[i][j] = gen_powers[j][i];
    }
    for (size_t j = 0; j < naug; ++j) {
        for (size_t i = 0; i < nrows; ++i) mat[i][ncols + j] = rhs[j][i];
    }
    std::vector<u32> pivot_of_col(ncols, 0);
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < nrows; ++col) {
        size_t sel = row;
        while (sel < nrows && mat[sel][col] == 0) ++sel;
        if (sel == nrows) throw std::logic_error("canonicalize: generator powers are dependent");
        std::swap(mat[sel], mat[row]);
        u32 inv = fp.inv(mat[row][col]);
        for (size_t j = col; j < ncols + naug; ++j) mat[row][j] = fp.mul(mat[row][j], inv);
        for (size_t i = 0; i < nrows; ++i) {
            if (i == row || mat[i][col] == 0) continue;
            u32 f = mat[i][col];
            for (size_t j = col; j < ncols + naug; ++j) {
                mat[i][j] = fp.sub(mat[i][j], fp.mul(f, mat[row][j]));
            }
        }
        pivot_of_col[col] = static_cast<u32>(row);
        ++row;
    }
    for (size_t i = row; i < nrows; ++i) {
        for (size_t j = 0; j < naug; ++j) {
            if (mat[i][ncols + j] != 0) throw std::logic_error("canonicalize: value outside generated field");
        }
    }
    std::vector<std::vector<u32>> out(naug, std::vector<u32>(ncols, 0));
    for (size_t j = 0; j < naug; ++j) {
        for (size_t col = 0; col < ncols; ++col) out[j][col] = mat[pivot_of_col[col]][ncols + j];
    }
    return out;
}

/// Replace a tuple of canonical-field values by its lexicographically
/// least simultaneous Frobenius conjugate.
void frobenius_minimize(std::vector<std::pair<u32, std::vector<u32>>>& values,
                        const FieldCtxPtr& ctx) {
    const u32 m = ctx->degree();
    if (m == 1) return;
    std::vector<FFElement> current;
    current.reserve(values.size());
    for (const auto& [ell, cs] : values) current.push_back(ctx->element(cs));
    std::vector<std::vector<u32>> best;
    best.reserve(values.size());
    for (const auto& [ell, cs] : values) best.push_back(cs);
    std::vector<std::vector<u32>> cand(values.size());
    for (u32 j = 1; j < m; ++j) {
        bool less = false, greater = false;
        for (size_t v = 0; v < current.size(); ++v) {
            current[v] = current[v].frobenius();
            cand[v] = current[v].coeffs();
        }
        for (size_t v = 0; v < cand.size() && !less && !greater; ++v) {
            if (cand[v] < best[v]) less = true;
            else if (cand[v] > best[v]) greater = true;
        }
        if (less) best = cand;
    }
    for (size_t v = 0; v < values.size(); ++v) values[v].second = best[v];
}

}  // namespace

bool Eigensystem::same_system(const Eigensystem& o) const {
    return p == o.p && m == o.m && modulus == o.modulus && values == o.values;
}

bool Eigensystem::lex_less(const Eigensystem& o) const {
    if (m != o.m) return m < o.m;
    return values < o.values;
}

std::vector<u32> Eigensystem::flattened_values() const {
    return flatten_values(values);
}

Eigensystem canonicalize(const Block& block) {
    if (block.eigvals.empty()) throw std::invalid_argument("canonicalize: block has no eigenvalues");
    const u32 p = block.field->p();
    const PrimeField fp(p);

    std::vector<u32> degs;
    degs.reserve(block.eigvals.size());
    u32 m_true = 1;
    for (const auto& [ell, a] : block.eigvals) {
        u32 da = a.degree_over_prime();
        degs.push_back(da);
        m_true = std::lcm(m_true, da);
    }

    Eigensystem out;
    out.p = p;
    out.weight = block.weight;
    out.m = m_true;
    out.ctx = canonical_field(p, m_true);
    out.modulus = out.ctx->modulus();

    if (m_true == 1) {
        for (const auto& [ell, a] : block.eigvals) {
            out.values.emplace_back(ell, std::vector<u32>{a.coeffs()[0]});
        }
        return out;
    }

    // Deterministic generator search: a_{l1}, a_{l1}+a_{l2}, sum l*a_l,
    // then counter-indexed combinations; the first whose minimal
    // polynomial has degree lcm(value degrees) generates the subfield.
    const FieldCtxPtr& K = block.field;
    std::vector<FFElement> candidates;
    candidates.push_back(block.eigvals[0].second);
    if (block.eigvals.size() > 1) {
        candidates.push_back(block.eigvals[0].second + block.eigvals[1].second);
    }
    {
        FFElement comb = K->zero();
        for (const auto& [ell, a] : block.eigvals) comb += a.scale(ell % p);
        candidates.push_back(comb);
    }
    FFElement gen = K->zero();
    bool found = false;
    for (const FFElement& c : candidates) {
        if (c.degree_over_prime() == m_true) {
            gen = c;
            found = true;
            break;
        }
    }
    for (u64 t = 1; !found; ++t) {
        FFElement comb = K->zero();
        size_t idx = 0;
        for (const auto& [ell, a] : block.eigvals) {
            u32 coef = static_cast<u32>(splitmix64(t * 0x9e3779b9ULL + idx) % p);
            comb += a.scale(coef);
            ++idx;
        }
        if (comb.degree_over_prime() == m_true) {
            gen = comb;
            found = true;
        }
        if (t > 10000) throw std::logic_error("canonicalize: generator search exhausted");
    }

    FFPoly mp = min_poly_over_prime(gen);
    std::vector<FFElement> roots = roots_in_field(mp, out.ctx);
    if (roots.empty()) throw std::logic_error("canonicalize: generator minpoly has no canonical root");
    const FFElement& rho = roots.front();

    // Coordinates of each eigenvalue over the generator powers, solved in
    // the flat F_p presentation of K.
    std::vector<std::vector<u32>> gen_powers;
    gen_powers.reserve(m_true);
    FFElement gp = K->one();
    for (u32 j = 0; j < m_true; ++j) {
        gen_powers.push_back(gp.coeffs());
        if (j + 1 < m_true) gp *= gen;
    }
    std::vector<std::vector<u32>> rhs;
    rhs.reserve(block.eigvals.size());
    for (const auto& [ell, a] : block.eigvals) rhs.push_back(a.coeffs());
    std::vector<std::vector<u32>> coords = solve_coordinates(fp, gen_powers, rhs);

    std::vector<FFElement> rho_powers;
    rho_powers.reserve(m_true);
    FFElement rp = out.ctx->one();
    for (u32 j = 0; j < m_true; ++j) {
        rho_powers.push_back(rp);
        if (j + 1 < m_true) rp = rp * rho;
    }
    for (size_t v = 0; v < block.eigvals.size(); ++v) {
        FFElement img = out.ctx->zero();
        for (u32 j = 0; j < m_true; ++j) {
            if (coords[v][j] != 0) img += rho_powers[j].scale(coords[v][j]);
        }
        out.values.emplace_back(block.eigvals[v].first, img.coeffs());
    }

    frobenius_minimize(out.values, out.ctx);
    return out;
}

std::vector<Eigensystem> weight_eigensystems(u32 p, u32 k, const std::vector<u32>& schedule) {
    if (k % 2 != 0 || k < 4 || k > p + 1) {
        throw std::invalid_argument("weight_eigensystems: weight out of range");
    }
    u32 ell_max = *std::max_element(schedule.begin(), schedule.end());
    u32 d = mk_dimension(k);
    u32 prec = d * ell_max + 1;
    WeightSpace space = miller_basis(k, p, prec);
    std::vector<Block> blocks = decompose(space, schedule);
    std::vector<Eigensystem> systems;
    systems.reserve(blocks.size());
    for (const Block& b : blocks) systems.push_back(canonicalize(b));
    std::sort(systems.begin(), systems.end(),
              [](const Eigensystem& a, const Eigensystem& b) { return a.lex_less(b); });
    systems.erase(std::unique(systems.begin(), systems.end(),
                              [](const Eigensystem& a, const Eigensystem& b) {
                                  return a.same_system(b);
                              }),
                  systems.end());
    return systems;
}

}  // namespace galrep
