#include "selmer2/padic.hpp"

#include "selmer2/order.hpp"

namespace selmer2 {

std::string to_string(LocalShape s) {
    switch (s) {
        case LocalShape::inert: return "inert";
        case LocalShape::totally_ramified: return "totally ramified";
        case LocalShape::three_linear: return "three linear";
        case LocalShape::linear_quad_unram: return "linear x quadratic (unramified)";
        case LocalShape::linear_quad_ram: return "linear x quadratic (ramified)";
    }
    return "?";
}

namespace {

Int ipow(const Int& p, int k) {
    Int r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

// valuation of n mod p^k; returns k when n ≡ 0 (meaning ">= k")
int capped_valuation(const Int& n, const Int& p, int k) {
    Int m = mod_reduce(n, ipow(p, k));
    if (m == 0) return k;
    return (int)valuation(m, p);
}

}  // namespace

namespace {

// Approximate roots of a squarefree G in Z_p by content-extraction recursion:
// each root mod p is refined through the substitution X = r0 + p Y, dividing
// out the coefficient content, until the approximation enters the Newton
// basin of the top-level polynomial F (or hits F exactly). One entry per
// Z_p root.
void zp_roots_rec(const IntPoly& G, const Int& p, int depth_budget, int level, const IntPoly& F,
                  std::vector<Int>& out, const Int& shift_scale, const Int& shift_base) {
    if (depth_budget < 0)
        throw internal_inconsistency("zp_roots: separation beyond the discriminant depth");
    for (const Int& r0 : roots_mod_p(G, p)) {
        Int x = shift_base + shift_scale * r0;
        Int fx = eval(F, x);
        Int dfx = eval(derivative(F), x);
        // emit only when the Hensel basin condition holds AND the current
        // ball x mod p^{level+1} sits inside the uniqueness ball p^{b+1};
        // otherwise siblings inside this ball could be missed
        if (dfx != 0) {
            int b = (int)valuation(dfx, p);
            bool basin = fx == 0 || (int)valuation(fx, p) > 2 * b;
            if (basin && level + 1 >= b + 1) {
                out.push_back(x);
                continue;
            }
        }
        // substitute X = r0 + p Y and strip the coefficient content
        IntPoly H = translate(G, r0);
        std::vector<Int> c(H.c);
        Int pw = 1;
        for (size_t i = 0; i < c.size(); ++i) {
            c[i] *= pw;
            pw *= p;
        }
        int content_val = 1 << 20;
        for (auto& v : c) {
            if (v == 0) continue;
            content_val = std::min(content_val, (int)valuation(v, p));
        }
        if (content_val == (1 << 20)) throw internal_inconsistency("zp_roots: zero polynomial");
        Int pc = ipow(p, content_val);
        for (auto& v : c) v /= pc;
        IntPoly Hred{std::move(c)};
        zp_roots_rec(Hred, p, depth_budget - 1, level + 1, F, out, shift_scale * p,
                     shift_base + shift_scale * r0);
    }
}

}  // namespace

std::vector<Int> zp_roots(const IntPoly& F, const Int& p, int k) {
    if (k < 1) throw input_error("zp_roots: k >= 1 required");
    Int disc = poly_disc_general(F);
    if (disc == 0) throw input_error("zp_roots: polynomial not squarefree");
    int depth = 2 * (int)valuation(disc, p) + 6;
    std::vector<Int> approx;
    zp_roots_rec(F, p, depth, 0, F, approx, Int(1), Int(0));
    // polish each approximation to precision p^k with Newton against F
    IntPoly Fp = derivative(F);
    Int pk = ipow(p, k);
    std::vector<Int> roots;
    for (const Int& r0 : approx) {
        Int r = r0;
        if (eval(F, r) == 0) {
            roots.push_back(mod_reduce(r, pk));
            continue;
        }
        Int dfr = eval(Fp, r);
        if (dfr == 0) throw internal_inconsistency("zp_roots: derivative vanishes at basin");
        int b = (int)valuation(dfr, p);
        for (int guard = 0; mod_reduce(eval(F, r), pk) != 0; ++guard) {
            if (guard > 64) throw internal_inconsistency("zp_roots: Newton failed to converge");
            Int mod = pk * ipow(p, 2 * b);
            Int fr = mod_reduce(eval(F, r), mod);
            Int dd = mod_reduce(eval(Fp, r), mod);
            Int pb = ipow(p, b);
            if (fr % pb != 0 || dd % pb != 0)
                throw internal_inconsistency("zp_roots: misaligned Newton step");
            Int step = (fr / pb) * invmod(mod_reduce(dd / pb, mod), mod) % mod;
            r = mod_reduce(r - step, mod);
        }
        roots.push_back(mod_reduce(r, pk));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

CubicLocalFactorization cubic_factorization_mod_p(const IntPoly& F, const Int& p, int k) {
    if (F.degree() != 3 || !F.is_monic())
        throw input_error("cubic_factorization_mod_p: monic cubic required");
    if (!is_prime(p)) throw input_error("cubic_factorization_mod_p: p not prime");
    Int pk = ipow(p, k);
    CubicLocalFactorization out;
    out.p = p;
    out.precision = k;
    std::vector<Int> roots = zp_roots(F, p, k);
    if (roots.size() == 2 || roots.size() > 3)
        throw internal_inconsistency("cubic cannot have exactly two p-adic roots");
    if (roots.size() == 3) {
        out.shape = LocalShape::three_linear;
        for (const Int& r : roots) {
            LocalFactor lf;
            lf.factor = IntPoly{std::vector<Int>{mod_reduce(-r, pk), Int(1)}};
            lf.e = lf.f = 1;
            lf.root = r;
            out.factors.push_back(lf);
        }
        return out;
    }
    if (roots.size() == 1) {
        const Int& r = roots[0];
        LocalFactor lin;
        lin.factor = IntPoly{std::vector<Int>{mod_reduce(-r, pk), Int(1)}};
        lin.e = lin.f = 1;
        lin.root = r;
        // synthetic division F = (x - r) * (x^2 + B x + C) mod p^k
        Int a2 = F.c[2], a1 = F.c[1];
        Int B = mod_reduce(a2 + r, pk);
        Int C = mod_reduce(a1 + r * B, pk);
        LocalFactor quad;
        quad.factor = IntPoly{std::vector<Int>{C, B, Int(1)}};
        Int d = mod_reduce(B * B - 4 * C, pk);
        if (d == 0) throw precision_error("quadratic factor discriminant needs more precision");
        int v = (int)valuation(d, p);
        if (v >= k - 1) throw precision_error("quadratic factor discriminant needs more precision");
        bool ramified;
        if (p == 2) {
            // Q_2(sqrt(d)): unramified iff v even and odd part ≡ 5 (mod 8)
            Int odd = d / ipow(p, v);
            Int m8 = mod_reduce(odd, Int(8));
            if (v + 3 > k) throw precision_error("need d mod 8 beyond precision");
            if (v % 2 == 0 && m8 == 1)
                throw internal_inconsistency("quadratic splits but only one root found");
            ramified = (v % 2 == 1) || (m8 == 3 || m8 == 7);
        } else {
            if (v % 2 == 0) {
                Int odd = d / ipow(p, v);
                if (kronecker_symbol(odd, p) == 1)
                    throw internal_inconsistency("quadratic splits but only one root found");
                ramified = false;
            } else {
                ramified = true;
            }
        }
        quad.e = ramified ? 2 : 1;
        quad.f = ramified ? 1 : 2;
        out.shape = ramified ? LocalShape::linear_quad_ram : LocalShape::linear_quad_unram;
        out.factors = {lin, quad};
        return out;
    }
    // irreducible over Q_p
    LocalFactor whole;
    whole.factor = F;
    Int disc = poly_disc(F);
    if (valuation(disc, p) == 0 || irreducible_cubic_mod_p(F, p)) {
        whole.e = 1;
        whole.f = 3;
        out.shape = LocalShape::inert;
    } else {
        // distinguish unramified from totally ramified via the local
        // discriminant exponent of the field
        int d = local_disc_exponent(F, p);
        if (d == 0) {
            whole.e = 1;
            whole.f = 3;
            out.shape = LocalShape::inert;
        } else {
            whole.e = 3;
            whole.f = 1;
            out.shape = LocalShape::totally_ramified;
        }
    }
    out.factors = {whole};
    return out;
}

CubicLocalFactorization cubic_factorization_auto(const IntPoly& F, const Int& p) {
    Int disc = poly_disc(F);
    int k = (disc == 0 ? 0 : (int)valuation(disc, p)) + 5;
    for (int tries = 0; tries < 8; ++tries) {
        try {
            return cubic_factorization_mod_p(F, p, k);
        } catch (const precision_error&) {
            k *= 2;
        }
    }
    throw precision_error("cubic_factorization_auto: precision kept failing");
}

}  // namespace selmer2
