#include "selmer2/curve_local.hpp"

#include <sstream>

#include "selmer2/order.hpp"

namespace selmer2 {

std::string kodaira_name(KodairaType t, int n) {
    std::ostringstream os;
    switch (t) {
        case KodairaType::good: return "I0";
        case KodairaType::In: os << "I" << n; return os.str();
        case KodairaType::II: return "II";
        case KodairaType::III: return "III";
        case KodairaType::IV: return "IV";
        case KodairaType::I0star: return "I0*";
        case KodairaType::Instar: os << "I" << n << "*"; return os.str();
        case KodairaType::IVstar: return "IV*";
        case KodairaType::IIIstar: return "III*";
        case KodairaType::IIstar: return "II*";
    }
    return "?";
}

int LocalReduction::components() const {
    switch (kodaira) {
        case KodairaType::good: return 1;
        case KodairaType::In: return n;
        case KodairaType::II: return 1;
        case KodairaType::III: return 2;
        case KodairaType::IV: return 3;
        case KodairaType::I0star: return 5;
        case KodairaType::Instar: return 5 + n;
        case KodairaType::IVstar: return 7;
        case KodairaType::IIIstar: return 8;
        case KodairaType::IIstar: return 9;
    }
    return 0;
}

namespace {

struct WModel {
    Int a1, a2, a3, a4, a6;

    Int b2() const { return a1 * a1 + 4 * a2; }
    Int b4() const { return 2 * a4 + a1 * a3; }
    Int b6() const { return a3 * a3 + 4 * a6; }
    Int b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    Int disc() const {
        Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    // x = x' + r, y = y' + s x' + t
    void translate(const Int& r, const Int& s, const Int& t) {
        Int A1 = a1 + 2 * s;
        Int A2 = a2 - s * a1 + 3 * r - s * s;
        Int A3 = a3 + r * a1 + 2 * t;
        Int A4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        Int A6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        a1 = A1;
        a2 = A2;
        a3 = A3;
        a4 = A4;
        a6 = A6;
    }

    bool singular_at_origin(const Int& p) const {
        return a3 % p == 0 && a4 % p == 0 && a6 % p == 0;
    }
};

Int exact_div(const Int& a, const Int& b) {
    if (a % b != 0) throw internal_inconsistency("tate: expected divisibility failed");
    return a / b;
}

int val_or_huge(const Int& a, const Int& p) {
    if (a == 0) return 1 << 20;
    return (int)valuation(a, p);
}

}  // namespace

LocalReduction tate_algorithm_long(const Int& A1, const Int& A2, const Int& A3, const Int& A4,
                                   const Int& A6, const Int& p) {
    if (!is_prime(p)) throw input_error("tate_algorithm: p not prime");
    WModel E{A1, A2, A3, A4, A6};
    LocalReduction out;
    out.p = p;
    int u_scalings = 0;
    for (;; ++u_scalings) {
        if (u_scalings > 64) throw internal_inconsistency("tate: runaway rescaling");
        Int delta = E.disc();
        if (delta == 0) throw input_error("tate_algorithm: singular curve");
        int n = (int)valuation(delta, p);
        if (n == 0) {
            out.kodaira = KodairaType::good;
            out.n = 0;
            out.f_p = 0;
            out.c_p = 1;
            out.reduction = ReductionKind::good;
            out.v_disc_min = 0;
            return out;
        }
        // move the singular point of the reduction to the origin
        if (p <= 3) {
            bool found = false;
            for (Int r = 0; r < p && !found; ++r)
                for (Int t = 0; t < p && !found; ++t) {
                    WModel T = E;
                    T.translate(r, Int(0), t);
                    if (T.singular_at_origin(p)) {
                        E = T;
                        found = true;
                    }
                }
            if (!found) throw internal_inconsistency("tate: singular point not found");
        } else {
            // short-form singular x0: A = -c4/48, B = -c6/864 mod p
            Int b2 = E.b2(), b4 = E.b4(), b6 = E.b6();
            Int c4 = b2 * b2 - 24 * b4;
            Int c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
            Int A = mod_reduce(-c4 * invmod(Int(48), p), p);
            Int B = mod_reduce(-c6 * invmod(Int(864), p), p);
            Int x0;
            if (A % p != 0)
                x0 = mod_reduce(-3 * B * invmod(2 * A, p), p);
            else
                x0 = 0;
            Int r = mod_reduce(x0 - b2 * invmod(Int(12), p), p);
            Int t = mod_reduce(-(E.a1 * r + E.a3) * invmod(Int(2), p), p);
            E.translate(r, Int(0), t);
            if (!E.singular_at_origin(p))
                throw internal_inconsistency("tate: singular point formula failed");
        }
        // multiplicative?
        if (E.b2() % p != 0) {
            out.kodaira = KodairaType::In;
            out.n = n;
            out.f_p = 1;
            out.c_p = 1;
            out.v_disc_min = n;
            bool split = quadratic_has_root_mod_p(Int(1), E.a1, -E.a2, p);
            out.reduction =
                split ? ReductionKind::split_multiplicative : ReductionKind::nonsplit_multiplicative;
            out.c_p = split ? Int(n) : Int(n % 2 == 0 ? 2 : 1);
            return out;
        }
        out.reduction = ReductionKind::additive;
        out.v_disc_min = n;
        if (val_or_huge(E.a6, p) < 2) {
            out.kodaira = KodairaType::II;
            out.f_p = n;
            out.c_p = 1;
            return out;
        }
        if (val_or_huge(E.b8(), p) < 3) {
            out.kodaira = KodairaType::III;
            out.f_p = n - 1;
            out.c_p = 2;
            return out;
        }
        if (val_or_huge(E.b6(), p) < 3) {
            out.kodaira = KodairaType::IV;
            out.f_p = n - 2;
            Int a3p = exact_div(E.a3, p);
            Int a6p2 = exact_div(E.a6, p * p);
            out.c_p = quadratic_has_root_mod_p(Int(1), a3p, -a6p2, p) ? 3 : 1;
            return out;
        }
        // normalize to p | a1, a2 ; p^2 | a3, a4 ; p^3 | a6
        {
            Int s, t;
            if (p == 2) {
                s = mod_reduce(E.a2, p);
                E.translate(Int(0), s, Int(0));
                bool ok = false;
                for (Int tt = 0; tt < 8 && !ok; ++tt) {
                    WModel T = E;
                    T.translate(Int(0), Int(0), tt);
                    if (valuation(T.a3 == 0 ? Int(4) : T.a3, p) >= 2 &&
                        val_or_huge(T.a3, p) >= 2 && val_or_huge(T.a6, p) >= 3) {
                        E = T;
                        ok = true;
                    }
                }
                if (!ok) throw internal_inconsistency("tate: p=2 normalization failed");
            } else {
                s = mod_reduce(-E.a1 * invmod(Int(2), p), p);
                E.translate(Int(0), s, Int(0));
                Int p3 = p * p * p;
                t = mod_reduce(-E.a3 * invmod(Int(2), p3), p3);
                E.translate(Int(0), Int(0), t);
            }
            if (E.a1 % p != 0 || E.a2 % p != 0 || val_or_huge(E.a3, p) < 2 ||
                val_or_huge(E.a4, p) < 2 || val_or_huge(E.a6, p) < 3)
                throw internal_inconsistency("tate: normalization invariants failed");
        }
        // P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3)
        Int p2 = p * p, p3 = p * p * p;
        IntPoly P{std::vector<Int>{exact_div(E.a6, p3), exact_div(E.a4, p2),
                                   exact_div(E.a2, p), Int(1)}};
        std::vector<Int> roots = roots_mod_p(P, p);
        // root multiplicities decide I0* vs Im* vs the cuspidal chain; a
        // repeated root of a cubic is always rational
        int mult = 0;
        Int x1 = 0;
        if (poly_disc(P) % p != 0) {
            out.kodaira = KodairaType::I0star;
            out.n = 0;
            out.f_p = n - 4;
            out.c_p = 1 + (long)roots.size();
            return out;
        }
        for (const Int& r : roots) {
            int m = 0;
            ModPoly cur = reduce_mod(P, p);
            while (true) {
                Int val = 0;
                for (size_t i = cur.size(); i-- > 0;) val = mod_reduce(val * r + cur[i], p);
                if (val != 0) break;
                // synthetic division by (T - r) mod p
                ModPoly q(cur.size() - 1, Int(0));
                Int carry = 0;
                for (size_t i = cur.size(); i-- > 1;) {
                    Int c = mod_reduce(cur[i] + carry, p);
                    q[i - 1] = c;
                    carry = c * r;
                }
                cur = q;
                ++m;
                if (cur.empty()) break;
            }
            if (m >= 2) {
                x1 = r;
                mult = m;
                break;
            }
        }
        if (mult < 2) throw internal_inconsistency("tate: repeated root not found");
        if (mult == 2) {
            // exactly one double root: type Im*
            E.translate(p * x1, Int(0), Int(0));
            // now v(a2) = 1, v(a3) >= 2, v(a4) >= 3, v(a6) >= 4
            int m = 1;
            Int mx = p * p, my = p * p;
            for (;;) {
                Int a2t = exact_div(E.a2, p);
                Int a3t = exact_div(E.a3, my);
                Int a4t = exact_div(E.a4, p * mx);
                Int a6t = exact_div(E.a6, mx * my);
                if ((a3t * a3t + 4 * a6t) % p != 0) {
                    out.c_p = quadratic_has_root_mod_p(Int(1), a3t, -a6t, p) ? 4 : 2;
                    break;
                }
                // translate the double root of Y^2 + a3t Y - a6t upward
                Int y0 = p == 2 ? mod_reduce(a6t, p)
                                : mod_reduce(-a3t * invmod(Int(2), p), p);
                E.translate(Int(0), Int(0), my * y0);
                ++m;
                my *= p;
                a3t = exact_div(E.a3, my);
                a4t = exact_div(E.a4, p * mx);
                a6t = exact_div(E.a6, mx * my);
                if ((a4t * a4t - 4 * a2t * a6t) % p != 0) {
                    out.c_p = quadratic_has_root_mod_p(a2t, a4t, a6t, p) ? 4 : 2;
                    break;
                }
                Int x0 = p == 2 ? mod_reduce(a6t * a2t, p)
                                : mod_reduce(-a4t * invmod(2 * a2t, p), p);
                E.translate(mx * x0, Int(0), Int(0));
                ++m;
                mx *= p;
            }
            out.kodaira = KodairaType::Instar;
            out.n = m;
            out.f_p = n - 4 - m;
            return out;
        }
        // triple root: translate it to zero
        E.translate(p * x1, Int(0), Int(0));
        // step: Y^2 + (a3/p^2) Y - (a6/p^4)
        Int p4 = p2 * p2;
        Int a3t = exact_div(E.a3, p2);
        Int a6t = exact_div(E.a6, p4);
        if ((a3t * a3t + 4 * a6t) % p != 0) {
            out.kodaira = KodairaType::IVstar;
            out.f_p = n - 6;
            out.c_p = quadratic_has_root_mod_p(Int(1), a3t, -a6t, p) ? 3 : 1;
            return out;
        }
        {
            Int y1 = p == 2 ? mod_reduce(a6t, p) : mod_reduce(-a3t * invmod(Int(2), p), p);
            E.translate(Int(0), Int(0), p2 * y1);
        }
        if (val_or_huge(E.a4, p) < 4) {
            out.kodaira = KodairaType::IIIstar;
            out.f_p = n - 7;
            out.c_p = 2;
            return out;
        }
        if (val_or_huge(E.a6, p) < 6) {
            out.kodaira = KodairaType::IIstar;
            out.f_p = n - 8;
            out.c_p = 1;
            return out;
        }
        // non-minimal: rescale and restart
        E.a1 = exact_div(E.a1, p);
        E.a2 = exact_div(E.a2, p2);
        E.a3 = exact_div(E.a3, p3);
        E.a4 = exact_div(E.a4, p4);
        E.a6 = exact_div(E.a6, p3 * p3);
    }
}

LocalReduction tate_algorithm(const CurveModel& E, const Int& p) {
    return tate_algorithm_long(Int(0), E.F.coeff(2), Int(0), E.F.coeff(1), E.F.coeff(0), p);
}

Int conductor(const CurveModel& E) {
    Int d = E.disc();
    Int N = 1;
    for (auto& [p, e] : factor_integer(d)) {
        LocalReduction lr = tate_algorithm(E, p);
        for (int i = 0; i < lr.f_p; ++i) N *= p;
    }
    return N;
}

namespace {

// local discriminant exponent of the etale algebra Q_p[x]/(F) for a
// squarefree monic cubic F, reducible allowed
int etale_disc_exponent(const IntPoly& F, const Int& p) {
    std::vector<Rat> rr = rational_roots(F);
    if (rr.empty()) return local_disc_exponent(F, p);
    // split off rational roots; components: linear pieces (exponent 0) and
    // possibly a quadratic field
    IntPoly g = F;
    for (const Rat& r : rr) {
        if (den(r) != 1) throw internal_inconsistency("monic cubic with non-integral root");
        g = divide_exact(g, IntPoly{std::vector<Int>{-num(r), Int(1)}});
    }
    if (g.degree() <= 1) return 0;  // three rational roots
    // quadratic component x^2 + b x + c
    Int b = g.coeff(1), c = g.coeff(0);
    Int d = b * b - 4 * c;
    if (d == 0) throw input_error("etale_disc_exponent: cubic not squarefree");
    unsigned v = valuation(d, p);
    Int u = d;
    for (unsigned i = 0; i < v; ++i) u /= p;
    if (p == 2) {
        if (v % 2 == 1) return 3;
        Int m8 = mod_reduce(u, Int(8));
        if (m8 == 1 || m8 == 5) return 0;  // split or unramified
        return 2;
    }
    if (v % 2 == 1) return 1;
    return 0;
}

}  // namespace

DaggerVerdict dagger_check(const CurveModel& E, const Int& p) {
    DaggerVerdict out;
    out.p = p;
    const IntPoly& F = E.F;
    if (poly_disc(F) == 0) throw input_error("dagger_check: singular model");
    // (i): A tensor Q_p is a field
    bool irr_q = rational_roots(F).empty();
    if (irr_q) {
        CubicLocalFactorization loc = cubic_factorization_auto(F, p);
        if (loc.shape == LocalShape::inert || loc.shape == LocalShape::totally_ramified) {
            out.result = DaggerCase::field_ext;
            out.witness = "F irreducible over Q_p (" + to_string(loc.shape) + ")";
            return out;
        }
    }
    // (ii): Z_p[T]/(F) is maximal: v_p(disc F) equals the local etale
    // discriminant exponent
    {
        int vF = (int)valuation(poly_disc(F), p);
        int vA = etale_disc_exponent(F, p);
        if (vF == vA) {
            out.result = DaggerCase::monogenic_at_p;
            std::ostringstream os;
            os << "v_p(disc F) = v_p(disc A) = " << vF;
            out.witness = os.str();
            return out;
        }
        std::ostringstream os;
        os << "v_p(disc F) = " << vF << " > " << vA << " = v_p(disc A)";
        out.witness = os.str();
    }
    // (iii): p odd and odd Tamagawa index
    LocalReduction lr = tate_algorithm(E, p);
    if (p != 2 && lr.c_p % 2 == 1) {
        out.result = DaggerCase::odd_tamagawa;
        std::ostringstream os;
        os << "c_p = " << lr.c_p.get_str() << " odd (" << kodaira_name(lr.kodaira, lr.n) << ")";
        out.witness = os.str();
        return out;
    }
    // (iv): p = 2 with good reduction (Q is unramified at 2)
    if (p == 2 && lr.f_p == 0) {
        out.result = DaggerCase::good_at_two;
        out.witness = "good reduction at 2";
        return out;
    }
    out.result = DaggerCase::fail;
    std::ostringstream os;
    os << "no condition holds: not locally a field; " << out.witness << "; "
       << (p == 2 ? "bad reduction at 2" : "c_p = " + lr.c_p.get_str() + " even")
       << " (" << kodaira_name(lr.kodaira, lr.n) << ")";
    out.witness = os.str();
    return out;
}

HypothesesReport hypotheses_check(const CurveModel& E) {
    HypothesesReport rep;
    rep.narrow_class_number_odd = true;  // base field Q
    rep.no_rational_two_torsion = rational_roots(E.F).empty();
    if (!rep.no_rational_two_torsion) {
        rep.pass = false;
        rep.failure_reason = "curve has rational 2-torsion: F is reducible over Q";
        return rep;
    }
    Int d = E.disc();
    bool all_ok = true;
    std::string fail;
    for (auto& [p, e] : factor_integer(d)) {
        DaggerVerdict v = dagger_check(E, p);
        if (v.result == DaggerCase::fail) {
            all_ok = false;
            if (fail.empty()) fail = "local condition fails at p = " + p.get_str();
        }
        rep.verdicts.push_back(std::move(v));
    }
    rep.pass = all_ok;
    rep.failure_reason = fail;
    return rep;
}

DeltaParityReport local_delta_valuation_parity(const CurveModel& E, const Int& p, const Rat& x,
                                               const Rat& y) {
    if (eval(E.F, x) != y * y) throw input_error("point is not on the curve");
    if (y == 0) throw input_error("x(P) - T is not invertible (2-torsion point)");
    for (int k = (int)valuation(poly_disc(E.F), p) + 5, tries = 0; tries < 8; k *= 2, ++tries) {
        try {
            CubicLocalFactorization loc = cubic_factorization_mod_p(E.F, p, k);
            Int pk = 1;
            for (int i = 0; i < k; ++i) pk *= p;
            DeltaParityReport rep;
            long vden = valuation(den(x), p);
            for (auto& lf : loc.factors) {
                DeltaParity dp;
                dp.factor = lf.factor;
                dp.e = lf.e;
                dp.f = lf.f;
                long v;
                if (lf.factor.degree() == 3) {
                    // exact: N(x - theta) = F(x)
                    Rat val = eval(E.F, x);
                    v = valuation(val, p);
                    if (v % lf.f != 0)
                        throw internal_inconsistency("norm valuation not divisible by f");
                    v /= lf.f;
                } else {
                    // evaluate the factor at x with numerator mod p^k
                    int deg = lf.factor.degree();
                    Int b = den(x), a = num(x);
                    // den^deg * factor(x)
                    Int acc = 0;
                    Int apow = 1;
                    std::vector<Int> bpow(deg + 1);
                    bpow[0] = 1;
                    for (int i = 1; i <= deg; ++i) bpow[i] = bpow[i - 1] * b;
                    for (int i = 0; i <= deg; ++i) {
                        acc += lf.factor.coeff(i) * apow * bpow[deg - i];
                        apow *= a;
                    }
                    acc = mod_reduce(acc, pk);
                    if (acc == 0) throw precision_error("delta parity: raise precision");
                    long vnum = (long)valuation(acc, p);
                    if (vnum >= k - (long)deg * vden - 2)
                        throw precision_error("delta parity: raise precision");
                    v = vnum - (long)deg * vden;
                    if (v % lf.f != 0)
                        throw internal_inconsistency("factor valuation not divisible by f");
                    v /= lf.f;
                }
                dp.valuation = (int)v;
                dp.parity = ((v % 2) + 2) % 2;
                if (dp.parity != 0) rep.integral_square_class = false;
                rep.parities.push_back(std::move(dp));
            }
            return rep;
        } catch (const precision_error&) {
            continue;
        }
    }
    throw precision_error("local_delta_valuation_parity: precision kept failing");
}

}  // namespace selmer2
