#include "selmer2/modp.hpp"

#include <algorithm>
#include <random>

namespace selmer2 {

void modp_normalize(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int modp_degree(const ModPoly& f) { return (int)f.size() - 1; }

ModPoly reduce_mod(const IntPoly& f, const Int& p) {
    ModPoly r(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) r[i] = mod_reduce(f.c[i], p);
    modp_normalize(r);
    return r;
}

ModPoly modp_mul(const ModPoly& a, const ModPoly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    for (auto& v : c) v = mod_reduce(v, p);
    modp_normalize(c);
    return c;
}

ModPoly modp_rem(ModPoly a, const ModPoly& b, const Int& p) {
    if (b.empty()) throw input_error("modp_rem: zero divisor");
    Int inv_lb = invmod(b.back(), p);
    int db = modp_degree(b);
    modp_normalize(a);
    while (modp_degree(a) >= db) {
        Int t = a.back() * inv_lb % p;
        int shift = modp_degree(a) - db;
        for (int j = 0; j <= db; ++j) a[shift + j] = mod_reduce(a[shift + j] - t * b[j], p);
        modp_normalize(a);
    }
    return a;
}

ModPoly modp_monic(ModPoly f, const Int& p) {
    modp_normalize(f);
    if (f.empty()) return f;
    Int inv = invmod(f.back(), p);
    for (auto& v : f) v = v * inv % p;
    return f;
}

ModPoly modp_gcd(ModPoly a, ModPoly b, const Int& p) {
    modp_normalize(a);
    modp_normalize(b);
    while (!b.empty()) {
        ModPoly r = modp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return modp_monic(a, p);
}

ModPoly modp_pow_x(const Int& e, const ModPoly& f, const Int& p) {
    ModPoly base{Int(0), Int(1)};
    base = modp_rem(base, f, p);
    ModPoly result{Int(1)};
    Int n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) result = modp_rem(modp_mul(result, base, p), f, p);
        base = modp_rem(modp_mul(base, base, p), f, p);
        n >>= 1;
    }
    return result;
}

namespace {

Int modp_eval(const ModPoly& f, const Int& r, const Int& p) {
    Int v = 0;
    for (size_t i = f.size(); i-- > 0;) v = mod_reduce(v * r + f[i], p);
    return v;
}

ModPoly modp_divide_exact(const ModPoly& g, const ModPoly& h, const Int& p) {
    ModPoly r = g;
    Int invl = invmod(h.back(), p);
    int dh = modp_degree(h);
    modp_normalize(r);
    ModPoly quot(std::max(0, modp_degree(r) - dh + 1), Int(0));
    while (modp_degree(r) >= dh) {
        Int t = r.back() * invl % p;
        int shift = modp_degree(r) - dh;
        quot[shift] = t;
        for (int j = 0; j <= dh; ++j) r[shift + j] = mod_reduce(r[shift + j] - t * h[j], p);
        modp_normalize(r);
    }
    if (!r.empty()) throw internal_inconsistency("modp_divide_exact: not exact");
    modp_normalize(quot);
    return quot;
}

// distinct roots of g, a squarefree product of monic linear factors
void split_linear_product(const ModPoly& g, const Int& p, std::vector<Int>& out,
                          std::mt19937_64& rng) {
    int d = modp_degree(g);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(mod_reduce(-g[0] * invmod(g[1], p), p));
        return;
    }
    for (int tries = 0; tries < 256; ++tries) {
        Int a = Int((unsigned long)rng()) % p;
        // h = gcd((x+a)^((p-1)/2) - 1, g)
        ModPoly base = modp_rem(ModPoly{a, Int(1)}, g, p);
        ModPoly pw{Int(1)};
        Int e = (p - 1) / 2;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) pw = modp_rem(modp_mul(pw, base, p), g, p);
            base = modp_rem(modp_mul(base, base, p), g, p);
            e >>= 1;
        }
        if (pw.empty()) pw = ModPoly{Int(0)};
        pw[0] = mod_reduce(pw[0] - 1, p);
        modp_normalize(pw);
        ModPoly h = modp_gcd(pw, g, p);
        int dh = modp_degree(h);
        if (dh > 0 && dh < d) {
            ModPoly quot = modp_divide_exact(g, h, p);
            split_linear_product(h, p, out, rng);
            split_linear_product(quot, p, out, rng);
            return;
        }
    }
    throw internal_inconsistency("equal-degree splitting failed");
}

}  // namespace

int count_roots_mod_p(const IntPoly& f, const Int& p) {
    ModPoly fp = reduce_mod(f, p);
    if (fp.empty()) throw input_error("count_roots_mod_p: f vanishes mod p");
    if (p <= 64) {
        int c = 0;
        for (Int r = 0; r < p; ++r)
            if (modp_eval(fp, r, p) == 0) ++c;
        return c;
    }
    ModPoly xp = modp_pow_x(p, fp, p);
    if (xp.size() < 2) xp.resize(2, Int(0));
    xp[1] = mod_reduce(xp[1] - 1, p);
    modp_normalize(xp);
    ModPoly g = modp_gcd(fp, xp, p);
    return modp_degree(g);
}

std::vector<Int> roots_mod_p(const IntPoly& f, const Int& p) {
    ModPoly fp = reduce_mod(f, p);
    if (fp.empty()) throw input_error("roots_mod_p: f vanishes mod p");
    std::vector<Int> out;
    if (p <= 128) {
        for (Int r = 0; r < p; ++r)
            if (modp_eval(fp, r, p) == 0) out.push_back(r);
        return out;
    }
    ModPoly xp = modp_pow_x(p, fp, p);
    if (xp.size() < 2) xp.resize(2, Int(0));
    xp[1] = mod_reduce(xp[1] - 1, p);
    modp_normalize(xp);
    ModPoly g = modp_gcd(fp, xp, p);
    std::mt19937_64 rng(0x5e1fabcdULL);
    split_linear_product(g, p, out, rng);
    std::sort(out.begin(), out.end());
    return out;
}

bool irreducible_cubic_mod_p(const IntPoly& f, const Int& p) {
    ModPoly fp = reduce_mod(f, p);
    if (modp_degree(fp) != 3) throw input_error("irreducible_cubic_mod_p: not cubic mod p");
    return count_roots_mod_p(f, p) == 0;
}

std::optional<Int> sqrt_mod_p(const Int& a0, const Int& p) {
    Int a = mod_reduce(a0, p);
    if (a == 0) return Int(0);
    if (p == 2) return a;
    if (kronecker_symbol(a, p) != 1) return std::nullopt;
    Int q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    q >>= s;
    Int z = 2;
    while (kronecker_symbol(z, p) != -1) ++z;
    Int m = (long)s;
    Int c = powmod(z, q, p);
    Int t = powmod(a, q, p);
    Int r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        Int i = 0;
        Int tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (Int j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

bool quadratic_has_root_mod_p(const Int& a0, const Int& b0, const Int& c0, const Int& p) {
    Int a = mod_reduce(a0, p), b = mod_reduce(b0, p), c = mod_reduce(c0, p);
    if (p == 2) {
        for (Int x = 0; x < 2; ++x)
            if (mod_reduce(a * x * x + b * x + c, p) == 0) return true;
        return false;
    }
    if (a == 0) return b != 0 || c == 0;
    Int d = mod_reduce(b * b - 4 * a * c, p);
    return kronecker_symbol(d, p) >= 0;
}

}  // namespace selmer2
