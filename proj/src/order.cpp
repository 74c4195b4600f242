#include "selmer2/order.hpp"

namespace selmer2 {

std::vector<Rat> powbasis_mul(const std::vector<Rat>& a, const std::vector<Rat>& b,
                              const IntPoly& F) {
    // multiply then reduce theta^3 = -(a2 theta^2 + a1 theta + a0), theta^4 likewise
    std::vector<Rat> prod(5, Rat(0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) prod[i + j] += a[i] * b[j];
    const Int &c0 = F.c[0], &c1 = F.c[1], &c2 = F.c[2];
    for (int k = 4; k >= 3; --k) {
        Rat t = prod[k];
        if (t == 0) continue;
        prod[k] = 0;
        prod[k - 1] -= t * Rat(c2);
        prod[k - 2] -= t * Rat(c1);
        prod[k - 3] -= t * Rat(c0);
    }
    return {prod[0], prod[1], prod[2]};
}

namespace {

// solution basis of x * P = 0 over F_p for a 3 x m matrix P (entries reduced)
std::vector<std::vector<Int>> left_kernel_mod_p(const std::vector<std::vector<Int>>& P,
                                                const Int& p) {
    size_t rows = P.size(), cols = rows ? P[0].size() : 0;
    // row-reduce P^T to find left kernel of P = right kernel of P^T
    // work with the transpose: solve P^T y^T = 0 where y = x
    std::vector<std::vector<Int>> m(cols, std::vector<Int>(rows));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m[j][i] = mod_reduce(P[i][j], p);
    // Gaussian elimination on m (cols x rows)
    std::vector<long> pivot_col(rows, -1);
    size_t r = 0;
    for (size_t c = 0; c < rows && r < m.size(); ++c) {
        size_t piv = m.size();
        for (size_t i = r; i < m.size(); ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        Int inv = invmod(m[r][c], p);
        for (size_t j = 0; j < rows; ++j) m[r][j] = m[r][j] * inv % p;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Int f = m[i][c];
            for (size_t j = 0; j < rows; ++j) m[i][j] = mod_reduce(m[i][j] - f * m[r][j], p);
        }
        pivot_col[c] = (long)r;
        ++r;
    }
    std::vector<std::vector<Int>> kernel;
    for (size_t free_c = 0; free_c < rows; ++free_c) {
        if (pivot_col[free_c] != -1) continue;
        std::vector<Int> v(rows, Int(0));
        v[free_c] = 1;
        for (size_t c = 0; c < rows; ++c)
            if (pivot_col[c] != -1) v[c] = mod_reduce(-m[pivot_col[c]][free_c], p);
        kernel.push_back(v);
    }
    return kernel;
}

struct OrderCtx {
    IntPoly F;
    QMat basis;   // rows of the current order in the power basis
    QMat inv;     // power -> order coordinates
    Mat table[3]; // mult_by_basis[i]: coords of w_i * w_j over the order basis
    Int order_disc;

    void rebuild() {
        inv = qmat_inverse(basis);
        for (int i = 0; i < 3; ++i) {
            Mat m(3, std::vector<Int>(3));
            for (int j = 0; j < 3; ++j) {
                std::vector<Rat> prod =
                    powbasis_mul({basis[i][0], basis[i][1], basis[i][2]},
                                 {basis[j][0], basis[j][1], basis[j][2]}, F);
                // convert to order coordinates
                for (int k = 0; k < 3; ++k) {
                    Rat v = prod[0] * inv[0][k] + prod[1] * inv[1][k] + prod[2] * inv[2][k];
                    if (den(v) != 1)
                        throw internal_inconsistency("order basis not closed under *");
                    m[j][k] = num(v);
                }
            }
            table[i] = std::move(m);
        }
    }
};

// HNF basis of the lattice spanned by rational rows (common denominator d):
// returns rows over Q again.
QMat rational_hnf(const QMat& rows) {
    Int d = 1;
    for (auto& row : rows)
        for (auto& v : row) d = lcm(d, den(v));
    Mat m(rows.size(), std::vector<Int>(rows.empty() ? 0 : rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m[i][j] = num(rows[i][j] * Rat(d));
    Mat h = hnf(m);
    QMat out(h.size(), std::vector<Rat>(h.empty() ? 0 : h[0].size()));
    for (size_t i = 0; i < h.size(); ++i)
        for (size_t j = 0; j < h[i].size(); ++j) {
            out[i][j] = Rat(h[i][j], d);
            out[i][j].canonicalize();
        }
    return out;
}

// one round-2 enlargement step at p; returns true if the order grew
bool round2_step(OrderCtx& ctx, const Int& p) {
    ctx.rebuild();
    // Frobenius matrix: w_j -> w_j^(p^t) mod p, t minimal with p^t >= 3
    Int q = p;
    while (q < 3) q *= p;
    auto pow_element = [&](int j) {
        // compute w_j^q in order coordinates mod p by square and multiply
        std::vector<Int> base(3, Int(0)), result(3, Int(0));
        base[j] = 1;
        result[0] = 1;  // w_0 = 1 since basis[0] = (1,0,0)
        auto mul_coords = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
            std::vector<Int> z(3, Int(0));
            for (int i = 0; i < 3; ++i) {
                if (x[i] == 0) continue;
                for (int jj = 0; jj < 3; ++jj) {
                    if (y[jj] == 0) continue;
                    for (int k = 0; k < 3; ++k) z[k] += x[i] * y[jj] * ctx.table[i][jj][k];
                }
            }
            for (auto& v : z) v = mod_reduce(v, p);
            return z;
        };
        Int e = q;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) result = mul_coords(result, base);
            base = mul_coords(base, base);
            e >>= 1;
        }
        return result;
    };
    std::vector<std::vector<Int>> frob(3);
    for (int j = 0; j < 3; ++j) frob[j] = pow_element(j);
    // radical = left kernel of the Frobenius matrix (rows = images)
    auto kern = left_kernel_mod_p(frob, p);
    // radical lattice: kernel lifts + p * O (in order coordinates)
    Mat radgen;
    for (auto& v : kern) radgen.push_back(v);
    for (int i = 0; i < 3; ++i) {
        std::vector<Int> row(3, Int(0));
        row[i] = p;
        radgen.push_back(row);
    }
    Mat rad = hnf(radgen);
    if (rad.size() != 3) throw internal_inconsistency("radical lattice rank deficient");
    // ring of multipliers: x with x * rad_row ⊆ rad for all radical rows
    // Mult-by-r action in order coordinates
    QMat radq(3, std::vector<Rat>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) radq[i][j] = Rat(rad[i][j]);
    QMat radq_inv = qmat_inverse(radq);
    // big rational matrix P (3 x 9): columns grouped by radical generator
    QMat P(3, std::vector<Rat>(9, Rat(0)));
    for (int g = 0; g < 3; ++g) {
        // mult matrix of rad row g: M[i][k] = coords of w_i * r_g over w
        QMat M(3, std::vector<Rat>(3, Rat(0)));
        for (int i = 0; i < 3; ++i)
            for (int jj = 0; jj < 3; ++jj) {
                if (rad[g][jj] == 0) continue;
                for (int k = 0; k < 3; ++k)
                    M[i][k] += Rat(rad[g][jj]) * Rat(ctx.table[i][jj][k]);
            }
        QMat MR = qmat_mul(M, radq_inv);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) P[i][3 * g + k] = MR[i][k];
    }
    // solve x P ∈ Z^9 over x ∈ Q^3: clear denominators, P = Pi / d
    Int d = 1;
    for (auto& row : P)
        for (auto& v : row) d = lcm(d, den(v));
    Mat Pi(3, std::vector<Int>(9));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 9; ++j) Pi[i][j] = num(P[i][j] * Rat(d));
    // x Pi ≡ 0 (mod d): via Smith form of Pi
    SmithForm sf = smith_form(Pi);
    // y = x u^{-1}: y_i * D_i ≡ 0 mod d -> y_i ∈ (d / gcd(D_i, d)) * (1/?) ...
    // precisely y_i ∈ (d / D_i) Z for D_i != 0 (rational multiple allowed)
    QMat ybasis(3, std::vector<Rat>(3, Rat(0)));
    for (int i = 0; i < 3; ++i) {
        if (i < (int)sf.diag.size() && sf.diag[i] != 0) {
            ybasis[i][i] = Rat(d, sf.diag[i]);
            ybasis[i][i].canonicalize();
        } else {
            throw internal_inconsistency("multiplier lattice unbounded");
        }
    }
    // x = y * u ; multiplier lattice in order coordinates
    QMat xbasis(3, std::vector<Rat>(3, Rat(0)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) xbasis[i][j] += ybasis[i][k] * Rat(sf.u[k][j]);
    // sanity: lattice must contain Z^3 (the order multiplies radical into itself)
    // convert to power-basis rows: new_basis = xbasis * ctx.basis
    QMat newrows = qmat_mul(xbasis, ctx.basis);
    QMat newbasis = rational_hnf(newrows);
    if (newbasis.size() != 3) throw internal_inconsistency("multiplier ring rank deficient");
    // index of old order in new one
    Rat det_new = qmat_det3(newbasis);
    Rat det_old = qmat_det3(ctx.basis);
    Rat ratio = det_old / det_new;  // = [O' : O] >= 1
    if (ratio == 1) return false;
    if (den(ratio) != 1) throw internal_inconsistency("order index not integral");
    Int idx = num(ratio);
    ctx.basis = newbasis;
    ctx.order_disc /= idx * idx;
    return true;
}

// canonicalize basis: lower-triangular HNF (1, w_2, w_3) with w_2 supported
// on {1, theta} and w_3 on {1, theta, theta^2}; O ∩ Q = Z forces w_1 = 1
QMat canonical_basis(const QMat& basis) {
    size_t n = basis.size(), m = basis.empty() ? 0 : basis[0].size();
    QMat rev(n, std::vector<Rat>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) rev[i][j] = basis[i][m - 1 - j];
    QMat h = rational_hnf(rev);
    QMat out(h.size(), std::vector<Rat>(m));
    for (size_t i = 0; i < h.size(); ++i)
        for (size_t j = 0; j < m; ++j) out[i][j] = h[h.size() - 1 - i][m - 1 - j];
    if (out[0][0] != 1 || out[0][1] != 0 || out[0][2] != 0)
        throw internal_inconsistency("order basis does not start with 1");
    return out;
}

}  // namespace

OrderData maximal_order(const IntPoly& F) {
    if (F.degree() != 3 || !F.is_monic()) throw input_error("maximal_order: monic cubic required");
    Int disc = poly_disc(F);
    if (disc == 0) throw input_error("maximal_order: discriminant is zero");
    OrderCtx ctx;
    ctx.F = F;
    ctx.basis = QMat{{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
    ctx.order_disc = disc;
    for (auto& [p, e] : factor_integer(disc)) {
        if (e < 2) continue;
        while (valuation(ctx.order_disc, p) >= 2) {
            if (!round2_step(ctx, p)) break;
            ctx.basis = canonical_basis(ctx.basis);
        }
    }
    ctx.basis = canonical_basis(ctx.basis);
    OrderData od;
    od.basis = ctx.basis;
    od.field_disc = ctx.order_disc;
    Int idx2 = disc / ctx.order_disc;
    if (!is_perfect_square(idx2)) throw internal_inconsistency("disc/field_disc not a square");
    od.index = isqrt_floor(idx2);
    return od;
}

int local_disc_exponent(const IntPoly& F, const Int& p) {
    Int disc = poly_disc(F);
    if (disc == 0) throw input_error("local_disc_exponent: discriminant is zero");
    unsigned v = valuation(disc, p);
    if (v < 2) return (int)v;
    OrderCtx ctx;
    ctx.F = F;
    ctx.basis = QMat{{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
    ctx.order_disc = disc;
    while (valuation(ctx.order_disc, p) >= 2) {
        if (!round2_step(ctx, p)) break;
        ctx.basis = canonical_basis(ctx.basis);
    }
    return (int)valuation(ctx.order_disc, p);
}

}  // namespace selmer2
