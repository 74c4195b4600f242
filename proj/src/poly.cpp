#include "selmer2/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace selmer2 {

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> c(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(c));
}

IntPoly operator*(const Int& s, const IntPoly& a) {
    std::vector<Int> c(a.c);
    for (auto& v : c) v *= s;
    return IntPoly(std::move(c));
}

IntPoly derivative(const IntPoly& a) {
    if (a.c.size() <= 1) return IntPoly();
    std::vector<Int> c(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = Int((long)i) * a.c[i];
    return IntPoly(std::move(c));
}

Int eval(const IntPoly& f, const Int& x) {
    Int r = 0;
    for (size_t i = f.c.size(); i-- > 0;) r = r * x + f.c[i];
    return r;
}

Rat eval(const IntPoly& f, const Rat& x) {
    Rat r = 0;
    for (size_t i = f.c.size(); i-- > 0;) r = r * x + Rat(f.c[i]);
    return r;
}

RatInterval eval(const IntPoly& f, const RatInterval& x) {
    RatInterval r{Rat(0)};
    for (size_t i = f.c.size(); i-- > 0;) r = r * x + Rat(f.c[i]);
    return r;
}

IntPoly translate(const IntPoly& f, const Int& a) {
    // synthetic Horner: f(x+a)
    std::vector<Int> c(f.c);
    int n = (int)c.size();
    for (int i = 0; i < n; ++i)
        for (int j = n - 2; j >= i; --j) c[j] += a * c[j + 1];
    return IntPoly(std::move(c));
}

IntPoly reverse(const IntPoly& f) {
    std::vector<Int> c(f.c.rbegin(), f.c.rend());
    // drop leading zeros of the reversed form (roots at 0 become degree drop)
    return IntPoly(std::move(c));
}

IntPoly compose_scale(const IntPoly& f, const Int& n, const Int& d) {
    // returns d^deg * f(n x / d)
    int deg = f.degree();
    std::vector<Int> c(f.c);
    Int npow = 1, dpow = 1;
    for (int i = 0; i <= deg; ++i) {
        c[i] *= npow;
        npow *= n;
    }
    for (int i = deg; i >= 0; --i) {
        c[i] *= dpow;
        dpow *= d;
    }
    return IntPoly(std::move(c));
}

IntPoly divide_exact(const IntPoly& f, const IntPoly& g) {
    if (!g.is_monic()) throw input_error("divide_exact: divisor must be monic");
    std::vector<Int> r(f.c);
    int df = f.degree(), dg = g.degree();
    if (df < dg) throw input_error("divide_exact: degree mismatch");
    std::vector<Int> q(df - dg + 1, Int(0));
    for (int i = df; i >= dg; --i) {
        Int t = r[i];
        q[i - dg] = t;
        if (t == 0) continue;
        for (int j = 0; j <= dg; ++j) r[i - dg + j] -= t * g.c[j];
    }
    for (auto& v : r)
        if (v != 0) throw input_error("divide_exact: division not exact");
    return IntPoly(std::move(q));
}

Int content(const IntPoly& f) {
    Int g = 0;
    for (auto& v : f.c) g = gcd(g, v);
    return g;
}

IntPoly primitive_part(const IntPoly& f) {
    if (f.is_zero()) return f;
    Int g = content(f);
    if (sign(f.lead()) < 0) g = -g;
    std::vector<Int> c(f.c);
    for (auto& v : c) v /= g;
    return IntPoly(std::move(c));
}

Int resultant(const IntPoly& f0, const IntPoly& g0) {
    // subresultant pseudo-remainder sequence
    if (f0.is_zero() || g0.is_zero()) return 0;
    IntPoly f = f0, g = g0;
    Int s = 1;
    Int gg = 1, h = 1;
    if (f.degree() < g.degree()) {
        std::swap(f, g);
        if ((f.degree() & 1) && (g.degree() & 1)) s = -1;
    }
    while (g.degree() > 0) {
        int d = f.degree() - g.degree();
        if ((f.degree() & 1) && (g.degree() & 1)) s = -s;
        // pseudo remainder of f by g
        IntPoly r = f;
        Int lg = g.lead();
        Int lgd = 1;
        for (int i = 0; i <= d; ++i) lgd *= lg;
        r = lgd * r;
        // polynomial division remainder
        {
            std::vector<Int> rc(r.c);
            int dr = (int)rc.size() - 1, dg2 = g.degree();
            while (dr >= dg2) {
                Int t = rc[dr] / g.c[dg2];
                for (int j = 0; j <= dg2; ++j) rc[dr - dg2 + j] -= t * g.c[j];
                while (dr >= 0 && rc[dr] == 0) --dr;
            }
            rc.resize(dr + 1);
            r = IntPoly(std::move(rc));
        }
        f = g;
        g = r;
        if (g.is_zero()) return 0;
        // divide by g*h^d
        Int div = gg;
        for (int i = 1; i <= d; ++i) div *= h;
        std::vector<Int> gc(g.c);
        for (auto& v : gc) v /= div;
        g = IntPoly(std::move(gc));
        gg = f.lead();
        // h = g^d h^{1-d}
        if (d == 0) {
            // h unchanged
        } else {
            Int gpow = 1;
            for (int i = 0; i < d; ++i) gpow *= gg;
            Int hpow = 1;
            for (int i = 0; i + 1 < d; ++i) hpow *= h;
            h = gpow / hpow;
        }
    }
    // g is a constant
    Int res = 1;
    Int c = g.c.empty() ? Int(0) : g.c[0];
    for (int i = 0; i < f.degree(); ++i) res *= c;
    Int hpow = 1;
    for (int i = 0; i + 1 < f.degree(); ++i) hpow *= h;
    if (f.degree() >= 1) res /= hpow;
    return s * res;
}

Int poly_disc_general(const IntPoly& f) {
    int n = f.degree();
    if (n < 1) throw input_error("discriminant needs degree >= 1");
    Int r = resultant(f, derivative(f));
    r /= f.lead();
    // sign (-1)^{n(n-1)/2}
    if (((n * (n - 1)) / 2) % 2 == 1) r = -r;
    return r;
}

Int poly_disc(const IntPoly& f) {
    if (f.degree() != 3) throw input_error("poly_disc: polynomial is not cubic");
    if (!f.is_monic()) throw input_error("poly_disc: polynomial is not monic");
    const Int &a = f.c[2], &b = f.c[1], &c = f.c[0];
    return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
}

std::string to_string(const IntPoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        Int c = f.coeff(i);
        if (c == 0) continue;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Int a = abs(c);
        if (a != 1 || i == 0) {
            os << a.get_str();
            if (i > 0) os << "*";
        }
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

namespace {

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
}

}  // namespace

IntPoly parse_cubic(const std::string& text) {
    bool has_var = text.find_first_of("xXtT") != std::string::npos;
    if (!has_var) {
        // coefficient triple [a2, a1, a0] (monic cubic implied)
        std::vector<Int> vals;
        std::string cur;
        for (char ch : text) {
            if (ch == '[' || ch == ']' || ch == ',' || std::isspace((unsigned char)ch)) {
                if (!cur.empty()) {
                    vals.emplace_back(cur);
                    cur.clear();
                }
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) vals.emplace_back(cur);
        if (vals.size() != 3)
            throw input_error("coefficient form must be a triple [a2, a1, a0]");
        return IntPoly(std::vector<Int>{vals[2], vals[1], vals[0], Int(1)});
    }
    std::vector<Int> coeffs(4, Int(0));
    size_t i = 0;
    skip_ws(text, i);
    int termsign = 1;
    bool any = false;
    while (i < text.size()) {
        skip_ws(text, i);
        if (i >= text.size()) break;
        if (text[i] == '+') {
            termsign = 1;
            ++i;
            continue;
        }
        if (text[i] == '-') {
            termsign = -termsign;
            ++i;
            continue;
        }
        // term: [number][*][var[^k]]
        Int coef = 1;
        bool have_num = false;
        skip_ws(text, i);
        size_t j = i;
        while (j < text.size() && (std::isdigit((unsigned char)text[j]))) ++j;
        if (j > i) {
            coef = Int(text.substr(i, j - i));
            have_num = true;
            i = j;
        }
        skip_ws(text, i);
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws(text, i);
        }
        int power = 0;
        if (i < text.size() && (text[i] == 'x' || text[i] == 'X' || text[i] == 't' || text[i] == 'T')) {
            ++i;
            power = 1;
            skip_ws(text, i);
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws(text, i);
                size_t k = i;
                while (k < text.size() && std::isdigit((unsigned char)text[k])) ++k;
                if (k == i) throw input_error("parse error: exponent expected");
                power = std::stoi(text.substr(i, k - i));
                i = k;
            }
        } else if (!have_num) {
            throw input_error("parse error in cubic: " + text);
        }
        if (power > 3) throw input_error("polynomial degree exceeds 3");
        coeffs[power] += termsign * coef;
        termsign = 1;
        any = true;
    }
    if (!any) throw input_error("empty polynomial");
    IntPoly f{std::vector<Int>(coeffs)};
    if (f.degree() != 3 || !f.is_monic())
        throw input_error("curve polynomial must be a monic integer cubic");
    return f;
}

std::vector<Rat> rational_roots(const IntPoly& f0) {
    std::vector<Rat> roots;
    if (f0.is_zero()) throw input_error("rational_roots of zero polynomial");
    IntPoly f = primitive_part(f0);
    // strip roots at zero
    size_t z = 0;
    while (z < f.c.size() && f.c[z] == 0) ++z;
    if (z > 0) {
        roots.push_back(Rat(0));
        std::vector<Int> c(f.c.begin() + z, f.c.end());
        f = IntPoly(std::move(c));
    }
    if (f.degree() < 1) return roots;
    auto ps = divisors(factor_integer(f.c[0]));
    auto qs = divisors(factor_integer(f.lead()));
    for (const Int& p : ps)
        for (const Int& q : qs) {
            Rat r(p, q);
            r.canonicalize();
            for (int s = 0; s < 2; ++s) {
                Rat cand = s ? -r : r;
                if (eval(f, cand) == 0) {
                    if (std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                }
            }
        }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

// polynomial with rational-root factors removed; g retains only irrational roots
IntPoly deflate_rational_roots(const IntPoly& f, const std::vector<Rat>& roots) {
    IntPoly g = primitive_part(f);
    for (const Rat& r : roots) {
        // divide by (den*x - num), exact over Z after primitivizing
        IntPoly lin{std::vector<Int>{-num(r), den(r)}};
        // generalized exact division (divisor not monic): use rational division
        int dg = g.degree();
        std::vector<Rat> q(dg, Rat(0));
        std::vector<Rat> rest(g.c.size());
        for (size_t i = 0; i < g.c.size(); ++i) rest[i] = Rat(g.c[i]);
        for (int i = dg; i >= 1; --i) {
            Rat t = rest[i] / Rat(lin.c[1]);
            q[i - 1] = t;
            rest[i] = 0;
            rest[i - 1] -= t * Rat(lin.c[0]);
        }
        if (rest[0] != 0) throw internal_inconsistency("deflation not exact");
        Int l = 1;
        for (auto& v : q) l = lcm(l, den(v));
        std::vector<Int> qi(q.size());
        for (size_t i = 0; i < q.size(); ++i) qi[i] = num(q[i] * Rat(l));
        g = primitive_part(IntPoly(std::move(qi)));
    }
    return g;
}

int sign_variations(const IntPoly& f) {
    int v = 0, last = 0;
    for (const Int& c : f.c) {
        int s = sign(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

// number-of-roots test for the open interval (a, b) via Descartes' rule on
// the Moebius-transformed polynomial; returns the variation count
int descartes_count(const IntPoly& g, const Rat& a, const Rat& b) {
    // h(x) ~ g(a + (b-a)x) up to positive scale
    Rat w = b - a;
    Int D = lcm(den(a), den(w));
    Int na = num(a * Rat(D)), nw = num(w * Rat(D));
    // Horner in the polynomial ring: h = sum c_i (na + nw x)^i D^{deg-i}
    int deg = g.degree();
    IntPoly acc;
    IntPoly base{std::vector<Int>{na, nw}};
    Int dpow = 1;
    std::vector<Int> dpows(deg + 1);
    for (int k = 0; k <= deg; ++k) {
        dpows[k] = dpow;
        dpow *= D;
    }
    for (int i = deg; i >= 0; --i) {
        acc = acc * base;
        acc = acc + IntPoly(std::vector<Int>{g.c[i] * dpows[deg - i]});
    }
    IntPoly p = translate(reverse(acc), Int(1));
    return sign_variations(p);
}

void isolate_rec(const IntPoly& g, const Rat& a, const Rat& b, std::vector<RootInterval>& out,
                 int depth) {
    if (depth > 256) throw internal_inconsistency("root isolation recursion too deep");
    int v = descartes_count(g, a, b);
    if (v == 0) return;
    if (v == 1) {
        out.push_back(RootInterval{a, b});
        return;
    }
    Rat m = (a + b) / 2;
    // no rational roots remain in g, so g(m) != 0
    isolate_rec(g, a, m, out, depth + 1);
    isolate_rec(g, m, b, out, depth + 1);
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const IntPoly& f, const Rat& width) {
    if (f.degree() < 1) throw input_error("isolate_real_roots: degree < 1");
    if (width <= 0) throw input_error("isolate_real_roots: width must be positive");
    std::vector<Rat> rr = rational_roots(f);
    IntPoly g = deflate_rational_roots(f, rr);
    std::vector<RootInterval> out;
    for (const Rat& r : rr) out.push_back(RootInterval{r, r});
    if (g.degree() >= 1) {
        // Cauchy bound, rounded to a power of two
        Rat maxc(0);
        for (int i = 0; i < g.degree(); ++i) {
            Rat a = Rat(abs(g.c[i]), abs(g.lead()));
            if (a > maxc) maxc = a;
        }
        long k = ceil_log2_abs(Rat(1) + maxc);
        Rat B = Rat(Int(1) << std::max(0L, k));
        isolate_rec(g, Rat(0), B, out, 0);
        // negative side: roots of g(-x) in (0, B) map to (-B, 0)
        IntPoly gn = compose_scale(g, Int(-1), Int(1));
        std::vector<RootInterval> neg;
        isolate_rec(gn, Rat(0), B, neg, 0);
        for (auto& iv : neg) out.push_back(RootInterval{-iv.hi, -iv.lo});
        for (auto& iv : out) {
            if (iv.exact()) continue;
            refine_root(g, iv, width);
            // keep exact rational roots outside open intervals
            for (bool again = true; again;) {
                again = false;
                for (const Rat& r : rr)
                    if (iv.lo < r && r < iv.hi) {
                        again = true;
                        break;
                    }
                if (again) refine_root(g, iv, iv.width() / 4);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    for (size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].hi > out[i + 1].lo)
            throw internal_inconsistency("isolated root intervals overlap");
    return out;
}

void refine_root(const IntPoly& f, RootInterval& iv, const Rat& width) {
    if (iv.exact()) return;
    if (iv.width() <= width) return;
    int sa = sign(eval(f, iv.lo));
    int sb = sign(eval(f, iv.hi));
    if (sa == 0 || sb == 0 || sa == sb)
        throw internal_inconsistency("refine_root: invalid isolating interval");
    IntPoly fp = derivative(f);
    long target_bits = std::max(4L, -ceil_log2_abs(width) + 4);
    while (iv.width() > width) {
        bool stepped = false;
        if (iv.width() <= Rat(1, 4)) {
            // Newton step from the midpoint, validated by exact sign checks
            Rat m = iv.mid();
            Rat fm = eval(f, m);
            Rat dm = eval(fp, m);
            if (fm != 0 && dm != 0) {
                Rat x1 = m - fm / dm;
                Rat w = iv.width() * iv.width();
                for (int attempt = 0; attempt < 3 && !stepped; ++attempt) {
                    long bits = std::max<long>(target_bits, -ceil_log2_abs(w) + 4);
                    Rat lo2 = dyadic_floor(x1 - w, bits);
                    Rat hi2 = dyadic_ceil(x1 + w, bits);
                    if (lo2 < iv.lo) lo2 = iv.lo;
                    if (hi2 > iv.hi) hi2 = iv.hi;
                    if (lo2 < hi2 && (hi2 - lo2) < iv.width()) {
                        int s1 = sign(eval(f, lo2));
                        int s2 = sign(eval(f, hi2));
                        if (s1 == sa && s2 == sb) {
                            iv.lo = lo2;
                            iv.hi = hi2;
                            stepped = true;
                        }
                    }
                    w = w * 8;
                }
            } else if (fm == 0) {
                iv.lo = iv.hi = m;
                return;
            }
        }
        if (!stepped) {
            long bits = std::max<long>(4, -ceil_log2_abs(iv.width()) + 4);
            Rat m = dyadic_floor(iv.mid(), bits);
            if (m <= iv.lo || m >= iv.hi) m = iv.mid();
            int sm = sign(eval(f, m));
            if (sm == 0) {
                iv.lo = iv.hi = m;
                return;
            }
            if (sm == sa)
                iv.lo = m;
            else
                iv.hi = m;
        }
    }
}

}  // namespace selmer2
