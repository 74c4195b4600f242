#include "selmer2/cubic_field.hpp"

#include <algorithm>
#include <sstream>

namespace selmer2 {

namespace {

constexpr long kMaxPrecBits = 1L << 16;

struct CplxI {
    RatInterval re, im;
    CplxI operator*(const CplxI& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CplxI operator+(const CplxI& o) const { return {re + o.re, im + o.im}; }
};

}  // namespace

CubicField::CubicField(const IntPoly& F) : F_(F) {
    if (F.degree() != 3 || !F.is_monic())
        throw input_error("build_field: monic integer cubic required");
    if (!rational_roots(F).empty())
        throw input_error("curve has rational 2-torsion: cubic is reducible over Q");
    discF_ = poly_disc(F);
    if (discF_ == 0) throw input_error("build_field: discriminant is zero");
    OrderData od = maximal_order(F);
    field_disc_ = od.field_disc;
    index_ = od.index;
    basis_ = od.basis;
    basis_inv_ = qmat_inverse(basis_);
    basis_den_ = 1;
    for (auto& row : basis_)
        for (auto& v : row) basis_den_ = lcm(basis_den_, den(v));
    basis_num_.assign(3, std::vector<Int>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) basis_num_[i][j] = num(basis_[i][j] * Rat(basis_den_));
    // integral structure constants
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::vector<Rat> prod = powbasis_mul({basis_[i][0], basis_[i][1], basis_[i][2]},
                                                 {basis_[j][0], basis_[j][1], basis_[j][2]}, F_);
            for (int k = 0; k < 3; ++k) {
                Rat c = prod[0] * basis_inv_[0][k] + prod[1] * basis_inv_[1][k] +
                        prod[2] * basis_inv_[2][k];
                if (den(c) != 1)
                    throw internal_inconsistency("integral basis not multiplicatively closed");
                table_[i][j][k] = num(c);
            }
        }
    r1_ = discF_ > 0 ? 3 : 1;
    r2_ = discF_ > 0 ? 0 : 1;
}

Elem CubicField::one() const {
    Elem x;
    // basis_[0] = (1,0,0) so integral coordinates of 1 are (1,0,0)
    x.v = {Rat(1), Rat(0), Rat(0)};
    return x;
}

Elem CubicField::from_int(const Int& n) const { return mul_scalar(one(), Rat(n)); }

Elem CubicField::theta() const { return from_power_basis({Rat(0), Rat(1), Rat(0)}); }

Elem CubicField::from_power_basis(const std::vector<Rat>& p) const {
    Elem x;
    for (int k = 0; k < 3; ++k)
        x.v[k] = p[0] * basis_inv_[0][k] + p[1] * basis_inv_[1][k] + p[2] * basis_inv_[2][k];
    return x;
}

std::vector<Rat> CubicField::to_power_basis(const Elem& x) const {
    std::vector<Rat> p(3, Rat(0));
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i) p[k] += x.v[i] * basis_[i][k];
    return p;
}

Elem CubicField::add(const Elem& x, const Elem& y) const {
    Elem z;
    for (int i = 0; i < 3; ++i) z.v[i] = x.v[i] + y.v[i];
    return z;
}

Elem CubicField::sub(const Elem& x, const Elem& y) const {
    Elem z;
    for (int i = 0; i < 3; ++i) z.v[i] = x.v[i] - y.v[i];
    return z;
}

Elem CubicField::neg(const Elem& x) const {
    Elem z;
    for (int i = 0; i < 3; ++i) z.v[i] = -x.v[i];
    return z;
}

Elem CubicField::mul(const Elem& x, const Elem& y) const {
    Elem z;
    for (int i = 0; i < 3; ++i) {
        if (x.v[i] == 0) continue;
        for (int j = 0; j < 3; ++j) {
            if (y.v[j] == 0) continue;
            Rat c = x.v[i] * y.v[j];
            for (int k = 0; k < 3; ++k)
                if (table_[i][j][k] != 0) z.v[k] += c * Rat(table_[i][j][k]);
        }
    }
    return z;
}

Elem CubicField::mul_scalar(const Elem& x, const Rat& s) const {
    Elem z;
    for (int i = 0; i < 3; ++i) z.v[i] = x.v[i] * s;
    return z;
}

Rat CubicField::trace(const Elem& x) const {
    // trace of multiplication-by-x
    Rat t(0);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) t += x.v[i] * Rat(table_[i][j][j]);
    return t;
}

Rat CubicField::norm(const Elem& x) const {
    // determinant of multiplication-by-x over the integral basis
    QMat m(3, std::vector<Rat>(3, Rat(0)));
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            if (x.v[i] == 0) continue;
            for (int k = 0; k < 3; ++k) m[j][k] += x.v[i] * Rat(table_[i][j][k]);
        }
    return qmat_det3(m);
}

Elem CubicField::conj_product(const Elem& x) const {
    // N(x)/x = x^2 - tr(x) x + e2(x), e2 = (tr(x)^2 - tr(x^2)) / 2
    Elem x2 = mul(x, x);
    Rat t = trace(x);
    Rat e2 = (t * t - trace(x2)) / 2;
    return add(sub(x2, mul_scalar(x, t)), mul_scalar(one(), e2));
}

Elem CubicField::inv(const Elem& x) const {
    if (x.is_zero()) throw input_error("division by zero field element");
    Rat n = norm(x);
    return mul_scalar(conj_product(x), 1 / n);
}

Elem CubicField::pow(const Elem& x, long e) const {
    Elem base = e < 0 ? inv(x) : x;
    unsigned long m = e < 0 ? -(unsigned long)e : (unsigned long)e;
    Elem r = one();
    while (m) {
        if (m & 1) r = mul(r, base);
        base = mul(base, base);
        m >>= 1;
    }
    return r;
}

bool CubicField::is_integral(const Elem& x) const {
    return den(x.v[0]) == 1 && den(x.v[1]) == 1 && den(x.v[2]) == 1;
}

Int CubicField::integral_scale(const Elem& x) const {
    return lcm(lcm(den(x.v[0]), den(x.v[1])), den(x.v[2]));
}

Elem CubicField::reduce_coords_mod(const Elem& x, const Int& m) const {
    if (!is_integral(x)) throw input_error("reduce_coords_mod: element not integral");
    Elem z;
    for (int i = 0; i < 3; ++i) z.v[i] = Rat(mod_reduce(num(x.v[i]), m));
    return z;
}

void CubicField::refine_roots(long prec_bits) const {
    if (roots_.empty()) {
        roots_ = isolate_real_roots(F_, Rat(1, 16));
        if ((int)roots_.size() != r1_)
            throw internal_inconsistency("real root count does not match signature");
    }
    Rat w(Int(1), Int(1) << prec_bits);
    for (auto& r : roots_)
        if (!r.exact() && r.width() > w) refine_root(F_, r, w);
}

RatInterval CubicField::root_enclosure(int i, long prec_bits) const {
    std::lock_guard<std::mutex> lk(mu_);
    refine_roots(prec_bits);
    return roots_[i].as_interval();
}

std::vector<RatInterval> CubicField::real_embeddings(const Elem& x, long prec_bits) const {
    std::vector<Rat> p = to_power_basis(x);
    std::vector<RatInterval> out;
    std::lock_guard<std::mutex> lk(mu_);
    refine_roots(prec_bits);
    for (int i = 0; i < r1_; ++i) {
        RatInterval t = roots_[i].as_interval();
        RatInterval val = (t * t) * p[2] + t * p[1] + RatInterval(p[0]);
        out.push_back(val);
    }
    return out;
}

std::vector<int> CubicField::signature_of(const Elem& x) const {
    if (x.is_zero()) throw input_error("signature of zero");
    for (long prec = 64; prec <= kMaxPrecBits; prec *= 2) {
        auto em = real_embeddings(x, prec);
        std::vector<int> sig;
        bool ok = true;
        for (auto& iv : em) {
            if (iv.contains_zero()) {
                ok = false;
                break;
            }
            sig.push_back(iv.lo > 0 ? 1 : -1);
        }
        if (ok) return sig;
    }
    throw precision_error("signature_of: could not separate from zero");
}

QMat CubicField::embedding_rows(long prec_bits) const {
    // rows: r1 real embeddings (ascending), then Re/Im of the complex one
    long pad = 8;
    Rat target(Int(1), Int(1) << prec_bits);
    for (;; pad *= 2) {
        if (prec_bits + pad > kMaxPrecBits)
            throw precision_error("embedding_rows: precision cap hit");
        std::vector<RatInterval> entries;
        QMat rows(3, std::vector<Rat>(3));
        bool ok = true;
        {
            std::lock_guard<std::mutex> lk(mu_);
            refine_roots(prec_bits + pad);
            std::vector<CplxI> sigma;  // embeddings of theta
            for (int i = 0; i < r1_; ++i)
                sigma.push_back({roots_[i].as_interval(), RatInterval(Rat(0))});
            if (r2_ == 1) {
                RatInterval t1 = roots_[0].as_interval();
                // F = (x - t1)(x^2 + p x + q)
                RatInterval p = t1 + Rat(F_.c[2]);
                RatInterval q = t1 * t1 + t1 * Rat(F_.c[2]) + RatInterval(Rat(F_.c[1]));
                RatInterval re = p * Rat(-1, 2);
                RatInterval im2 = q - (p * p) * Rat(1, 4);
                if (im2.lo < 0) im2.lo = 0;  // true value is positive
                RatInterval im = interval_sqrt(im2, prec_bits + pad);
                sigma.push_back({re, im});
            }
            for (int place = 0; place < (r2_ ? 2 : 3); ++place) {
                const CplxI& s = sigma[place == 0 ? 0 : (r2_ ? 1 : place)];
                // embed basis elements: w_j = b0 + b1 s + b2 s^2
                CplxI s2 = s * s;
                for (int j = 0; j < 3; ++j) {
                    CplxI val{RatInterval(basis_[j][0]), RatInterval(Rat(0))};
                    val = val + CplxI{RatInterval(basis_[j][1]), RatInterval(Rat(0))} * s;
                    val = val + CplxI{RatInterval(basis_[j][2]), RatInterval(Rat(0))} * s2;
                    if (place == 0 || r2_ == 0) {
                        // real row(s)
                        int rowidx = r2_ ? 0 : place;
                        if (val.re.width() > target) ok = false;
                        rows[rowidx][j] = val.re.mid();
                        entries.push_back(val.re);
                    } else {
                        if (val.re.width() > target || val.im.width() > target) ok = false;
                        rows[1][j] = val.re.mid();
                        rows[2][j] = val.im.mid();
                    }
                }
            }
            if (r2_ == 0) {
                // all three places are real; redo cleanly: rows[i][j]
                ok = true;
                for (int i = 0; i < 3; ++i) {
                    RatInterval t = roots_[i].as_interval();
                    RatInterval t2 = t * t;
                    for (int j = 0; j < 3; ++j) {
                        RatInterval val = t2 * basis_[j][2] + t * basis_[j][1] +
                                          RatInterval(basis_[j][0]);
                        if (val.width() > target) ok = false;
                        rows[i][j] = val.mid();
                    }
                }
            }
        }
        if (ok) return rows;
    }
}

QMat CubicField::t2_gram(const std::vector<std::vector<Rat>>& elems, long prec_bits) const {
    QMat m = embedding_rows(prec_bits);
    size_t n = elems.size();
    // embedding vectors u_r = M * coords
    QMat u(n, std::vector<Rat>(3, Rat(0)));
    for (size_t r = 0; r < n; ++r)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) u[r][i] += m[i][j] * elems[r][j];
    std::vector<Rat> w(3, Rat(1));
    if (r2_ == 1) {
        w = {Rat(1), Rat(2), Rat(2)};
    }
    QMat g(n, std::vector<Rat>(n, Rat(0)));
    for (size_t r = 0; r < n; ++r)
        for (size_t s = r; s < n; ++s) {
            Rat val(0);
            for (int i = 0; i < 3; ++i) val += w[i] * u[r][i] * u[s][i];
            g[r][s] = val;
            g[s][r] = val;
        }
    return g;
}

// ---------- ideals ----------

IdealHNF CubicField::make_ideal(Mat rows, const Int& d) const {
    Mat h = hnf(rows);
    if (h.size() != 3) throw internal_inconsistency("ideal lattice not full rank");
    Int g = d;
    for (auto& row : h)
        for (auto& v : row) g = gcd(g, v);
    IdealHNF out;
    out.den = d / g;
    out.a = h;
    for (auto& row : out.a)
        for (auto& v : row) v /= g;
    if (out.den < 0) {
        out.den = -out.den;
    }
    return out;
}

IdealHNF CubicField::unit_ideal() const {
    IdealHNF i;
    i.a = identity_mat(3);
    i.den = 1;
    return i;
}

IdealHNF CubicField::principal_ideal(const Elem& x) const {
    if (x.is_zero()) throw input_error("principal_ideal of zero");
    Int c = integral_scale(x);
    Mat rows(3, std::vector<Int>(3));
    for (int j = 0; j < 3; ++j) {
        // c * x * w_j
        Elem p = mul_scalar(mul(x, basis_elem(j)), Rat(c));
        for (int k = 0; k < 3; ++k) {
            if (den(p.v[k]) != 1) throw internal_inconsistency("principal ideal row not integral");
            rows[j][k] = num(p.v[k]);
        }
    }
    return make_ideal(std::move(rows), c);
}

IdealHNF CubicField::ideal_from_generators(const std::vector<Elem>& gens) const {
    Int c = 1;
    for (auto& g : gens) c = lcm(c, integral_scale(g));
    Mat rows;
    for (auto& g : gens) {
        for (int j = 0; j < 3; ++j) {
            Elem p = mul_scalar(mul(g, basis_elem(j)), Rat(c));
            std::vector<Int> row(3);
            for (int k = 0; k < 3; ++k) row[k] = num(p.v[k]);
            rows.push_back(row);
        }
    }
    return make_ideal(std::move(rows), c);
}

IdealHNF CubicField::ideal_mul(const IdealHNF& a, const IdealHNF& b) const {
    Mat rows;
    rows.reserve(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::vector<Int> z(3, Int(0));
            for (int s = 0; s < 3; ++s) {
                if (a.a[i][s] == 0) continue;
                for (int t = 0; t < 3; ++t) {
                    if (b.a[j][t] == 0) continue;
                    Int c = a.a[i][s] * b.a[j][t];
                    for (int k = 0; k < 3; ++k)
                        if (table_[s][t][k] != 0) z[k] += c * table_[s][t][k];
                }
            }
            rows.push_back(std::move(z));
        }
    return make_ideal(std::move(rows), a.den * b.den);
}

IdealHNF CubicField::ideal_inverse(const IdealHNF& a) const {
    // (O : I) via x * M(b_i) ∈ Z^3 for the three basis elements b_i of I
    QMat P(3, std::vector<Rat>(9, Rat(0)));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                Rat acc(0);
                for (int l = 0; l < 3; ++l)
                    if (a.a[i][l] != 0 && table_[j][l][k] != 0)
                        acc += Rat(a.a[i][l]) * Rat(table_[j][l][k]);
                P[j][3 * i + k] = acc / Rat(a.den);
            }
        }
    }
    QMat sol = rational_solution_lattice(P);
    Int d = 1;
    for (auto& row : sol)
        for (auto& v : row) d = lcm(d, den(v));
    Mat rows(3, std::vector<Int>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rows[i][j] = num(sol[i][j] * Rat(d));
    return make_ideal(std::move(rows), d);
}

IdealHNF CubicField::ideal_pow(const IdealHNF& a, long e) const {
    IdealHNF base = e < 0 ? ideal_inverse(a) : a;
    unsigned long m = e < 0 ? -(unsigned long)e : (unsigned long)e;
    IdealHNF r = unit_ideal();
    while (m) {
        if (m & 1) r = ideal_mul(r, base);
        base = ideal_mul(base, base);
        m >>= 1;
    }
    return r;
}

Rat CubicField::ideal_norm_rat(const IdealHNF& a) const {
    Rat n = Rat(abs(mat_det3(a.a)));
    Rat d = Rat(a.den * a.den * a.den);
    Rat r = n / d;
    r.canonicalize();
    return r;
}

Int CubicField::ideal_norm(const IdealHNF& a) const {
    Rat r = ideal_norm_rat(a);
    if (den(r) != 1) throw input_error("ideal_norm: ideal is fractional");
    return num(r);
}

bool CubicField::ideal_is_integral(const IdealHNF& a) const {
    return a.den == 1;
}

bool CubicField::ideal_contains(const IdealHNF& a, const Elem& x) const {
    // a.den * x must lie in the row lattice of a.a
    std::vector<Rat> y(3);
    for (int i = 0; i < 3; ++i) y[i] = x.v[i] * Rat(a.den);
    // forward substitution along HNF pivots
    std::vector<Rat> rem = y;
    for (int i = 0; i < 3; ++i) {
        Rat k = rem[i] / Rat(a.a[i][i]);
        if (den(k) != 1) return false;
        for (int j = 0; j < 3; ++j) rem[j] -= k * Rat(a.a[i][j]);
    }
    return rem[0] == 0 && rem[1] == 0 && rem[2] == 0;
}

bool CubicField::ideal_subset(const IdealHNF& a, const IdealHNF& b) const {
    for (int i = 0; i < 3; ++i) {
        Elem x;
        for (int k = 0; k < 3; ++k) x.v[k] = Rat(a.a[i][k], a.den);
        for (auto& v : x.v) v.canonicalize();
        if (!ideal_contains(b, x)) return false;
    }
    return true;
}

std::vector<Elem> CubicField::ideal_basis(const IdealHNF& a) const {
    std::vector<Elem> out(3);
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            out[i].v[k] = Rat(a.a[i][k], a.den);
            out[i].v[k].canonicalize();
        }
    }
    return out;
}

int CubicField::ideal_valuation(const IdealHNF& I, const PrimeIdeal& P) const {
    // v(I) = v(den * I) - v((den)) with den * I integral
    IdealHNF J;
    J.a = I.a;
    J.den = 1;
    int shift = -(int)valuation(I.den, P.p) * P.e;
    IdealHNF Pinv = ideal_inverse(P.ideal);
    int v = 0;
    while (ideal_subset(J, P.ideal)) {
        J = ideal_mul(J, Pinv);
        ++v;
        if (v > 4096) throw internal_inconsistency("ideal_valuation runaway");
    }
    return v + shift;
}

const std::vector<PrimeIdeal>& CubicField::factor_prime(const Int& p) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = prime_cache_.find(p);
        if (it != prime_cache_.end()) return it->second;
    }
    if (!is_prime(p)) throw input_error("factor_prime: p is not prime");
    std::vector<PrimeIdeal> out;
    Elem th = theta();
    auto factor_ideal = [&](const IntPoly& g) {
        // p O + g(theta) O
        Elem gt = mul_scalar(one(), Rat(g.coeff(0)));
        Elem power = one();
        for (int i = 1; i <= g.degree(); ++i) {
            power = mul(power, th);
            gt = add(gt, mul_scalar(power, Rat(g.coeff(i))));
        }
        Mat rows;
        for (int j = 0; j < 3; ++j) {
            std::vector<Int> row(3, Int(0));
            row[j] = p;
            rows.push_back(row);
        }
        for (int j = 0; j < 3; ++j) {
            Elem e = mul(gt, basis_elem(j));
            std::vector<Int> row(3);
            for (int k = 0; k < 3; ++k) {
                if (den(e.v[k]) != 1)
                    throw internal_inconsistency("factor_prime: non-integral generator row");
                row[k] = num(e.v[k]);
            }
            rows.push_back(row);
        }
        return make_ideal(std::move(rows), Int(1));
    };
    if (index_ % p != 0) {
        // Dedekind: factor F mod p with multiplicities
        ModPoly fp = reduce_mod(F_, p);
        std::vector<std::pair<IntPoly, int>> factors;
        std::vector<Int> roots = roots_mod_p(F_, p);
        IntPoly rest = F_;
        for (const Int& r : roots) {
            IntPoly lin{std::vector<Int>{mod_reduce(-r, p), Int(1)}};
            int mult = 0;
            bool divides = true;
            while (divides) {
                // attempt division of rest by lin mod p
                ModPoly rp = reduce_mod(rest, p);
                // synthetic division by (x - r) mod p
                std::vector<Int> q(rp.size() >= 1 ? rp.size() - 1 : 0, Int(0));
                Int carry = 0;
                for (size_t i = rp.size(); i-- > 0;) {
                    Int cur = mod_reduce(rp[i] + carry, p);
                    if (i == 0) {
                        divides = (cur == 0);
                    } else {
                        q[i - 1] = cur;
                        carry = cur * r;
                    }
                }
                if (divides) {
                    ++mult;
                    std::vector<Int> qq(q);
                    rest = IntPoly(std::move(qq));
                    if (rest.degree() == 0) divides = false;
                }
            }
            factors.emplace_back(lin, mult);
        }
        int degree_used = 0;
        for (auto& [g, e] : factors) degree_used += e;
        if (degree_used < 3) {
            // remaining factor of degree 3 - degree_used, irreducible
            // recover it by dividing F mod p by the linear powers
            ModPoly remaining = fp;
            for (auto& [g, e] : factors)
                for (int i = 0; i < e; ++i) {
                    ModPoly lin = reduce_mod(g, p);
                    // exact division
                    ModPoly quot;
                    {
                        ModPoly r2 = remaining;
                        Int invl = invmod(lin.back(), p);
                        int dh = modp_degree(lin);
                        quot.assign(modp_degree(r2) - dh + 1, Int(0));
                        while (modp_degree(r2) >= dh) {
                            Int t = r2.back() * invl % p;
                            int shift = modp_degree(r2) - dh;
                            quot[shift] = t;
                            for (int jj = 0; jj <= dh; ++jj)
                                r2[shift + jj] = mod_reduce(r2[shift + jj] - t * lin[jj], p);
                            modp_normalize(r2);
                        }
                        if (!r2.empty())
                            throw internal_inconsistency("factor_prime: division not exact");
                    }
                    remaining = quot;
                }
            std::vector<Int> coeffs(remaining);
            factors.emplace_back(IntPoly(std::move(coeffs)), 1);
        }
        for (auto& [g, e] : factors) {
            PrimeIdeal P;
            P.p = p;
            P.e = e;
            P.f = g.degree();
            P.ideal = factor_ideal(g);
            if (P.f == 1 && P.e == 1) {
                // Hensel-liftable simple root
                Int r = mod_reduce(-g.coeff(0), p);
                int K = std::max(8, (int)valuation(discF_, p) + 2);
                // lift via zp_roots on a focused Newton iteration
                IntPoly Fp = derivative(F_);
                Int pk = 1;
                for (int i = 0; i < K; ++i) pk *= p;
                Int cur = r;
                int prec = 1;
                while (prec < K) {
                    prec = std::min(2 * prec, K);
                    Int mod = 1;
                    for (int i = 0; i < prec; ++i) mod *= p;
                    Int fr = mod_reduce(eval(F_, cur), mod);
                    Int dfr = mod_reduce(eval(Fp, cur), mod);
                    cur = mod_reduce(cur - fr * invmod(dfr, mod), mod);
                }
                P.root = cur;
                P.root_precision = K;
            }
            out.push_back(P);
        }
    } else {
        // index primes: use the p-adic factorization and kernel constructions
        CubicLocalFactorization loc = cubic_factorization_auto(F_, p);
        std::vector<PrimeIdeal> linear;
        for (auto& lf : loc.factors) {
            if (lf.factor.degree() != 1) continue;
            PrimeIdeal P;
            P.p = p;
            P.e = lf.e;
            P.f = lf.f;
            P.root = *lf.root;
            P.root_precision = loc.precision;
            // kernel of evaluation-at-root mod p on the integral basis
            Int r = *lf.root;
            std::vector<Int> t(3);
            Int pk = 1;
            for (int i = 0; i < loc.precision; ++i) pk *= p;
            for (int j = 0; j < 3; ++j) {
                // w_j = (basis_num_[j] polynomial at theta) / basis_den_
                Int val = basis_num_[j][0] + basis_num_[j][1] * r + basis_num_[j][2] * r * r;
                val = mod_reduce(val, pk);
                unsigned vd = valuation(basis_den_, p);
                if (vd > 0) {
                    if (val != 0 && valuation(val, p) < vd)
                        throw internal_inconsistency("integral basis value not p-integral");
                    Int pv = 1;
                    for (unsigned i = 0; i < vd; ++i) pv *= p;
                    val = val / pv;
                    Int dd = basis_den_ / pv;
                    val = val * invmod(dd, p);
                } else {
                    val = val * invmod(basis_den_ % p == 0 ? Int(1) : basis_den_, p);
                }
                t[j] = mod_reduce(val, p);
            }
            // rows x with sum x_j t_j ≡ 0 mod p, plus p O
            Mat rows;
            for (int j = 0; j < 3; ++j) {
                std::vector<Int> row(3, Int(0));
                row[j] = p;
                rows.push_back(row);
            }
            // kernel basis of the single linear condition
            int piv = -1;
            for (int j = 0; j < 3; ++j)
                if (t[j] % p != 0) piv = j;
            if (piv < 0) throw internal_inconsistency("degenerate evaluation kernel");
            for (int j = 0; j < 3; ++j) {
                if (j == piv) continue;
                std::vector<Int> row(3, Int(0));
                row[j] = 1;
                row[piv] = mod_reduce(-t[j] * invmod(t[piv], p), p);
                rows.push_back(row);
            }
            P.ideal = make_ideal(std::move(rows), Int(1));
            linear.push_back(P);
        }
        // radical lattice: kernel of Frobenius plus p O
        Int q = p;
        while (q < 3) q *= p;
        auto mul_coords_modp = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
            std::vector<Int> z(3, Int(0));
            for (int i = 0; i < 3; ++i) {
                if (x[i] == 0) continue;
                for (int j = 0; j < 3; ++j) {
                    if (y[j] == 0) continue;
                    for (int k = 0; k < 3; ++k) z[k] += x[i] * y[j] * table_[i][j][k];
                }
            }
            for (auto& v : z) v = mod_reduce(v, p);
            return z;
        };
        std::vector<std::vector<Int>> frob(3);
        for (int j = 0; j < 3; ++j) {
            std::vector<Int> base(3, Int(0)), result(3, Int(0));
            base[j] = 1;
            result[0] = 1;
            Int e = q;
            while (e > 0) {
                if (mpz_odd_p(e.get_mpz_t())) result = mul_coords_modp(result, base);
                base = mul_coords_modp(base, base);
                e >>= 1;
            }
            frob[j] = result;
        }
        // left kernel of frob mod p by elimination over F_p
        Mat radrows;
        {
            // solve sum_j x_j frob[j] = 0 mod p
            Mat m(3, std::vector<Int>(3));
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m[i][j] = frob[i][j];
            // gaussian elimination tracking combos
            Mat aug = identity_mat(3);
            int rank = 0;
            for (int c = 0; c < 3 && rank < 3; ++c) {
                int piv = -1;
                for (int i = rank; i < 3; ++i)
                    if (m[i][c] % p != 0) {
                        piv = i;
                        break;
                    }
                if (piv < 0) continue;
                std::swap(m[piv], m[rank]);
                std::swap(aug[piv], aug[rank]);
                Int invp = invmod(mod_reduce(m[rank][c], p), p);
                for (int j = 0; j < 3; ++j) {
                    m[rank][j] = mod_reduce(m[rank][j] * invp, p);
                    aug[rank][j] = mod_reduce(aug[rank][j] * invp, p);
                }
                for (int i = 0; i < 3; ++i) {
                    if (i == rank) continue;
                    Int f = mod_reduce(m[i][c], p);
                    if (f == 0) continue;
                    for (int j = 0; j < 3; ++j) {
                        m[i][j] = mod_reduce(m[i][j] - f * m[rank][j], p);
                        aug[i][j] = mod_reduce(aug[i][j] - f * aug[rank][j], p);
                    }
                }
                ++rank;
            }
            for (int i = rank; i < 3; ++i) radrows.push_back(aug[i]);
        }
        for (int j = 0; j < 3; ++j) {
            std::vector<Int> row(3, Int(0));
            row[j] = p;
            radrows.push_back(row);
        }
        IdealHNF radical = make_ideal(std::move(radrows), Int(1));
        // the non-linear prime (if any): radical / product of linear primes
        const LocalFactor* hard = nullptr;
        for (auto& lf : loc.factors)
            if (lf.factor.degree() > 1) hard = &lf;
        if (hard) {
            IdealHNF quot = radical;
            for (auto& P : linear) quot = ideal_mul(quot, ideal_inverse(P.ideal));
            PrimeIdeal P;
            P.p = p;
            P.e = hard->e;
            P.f = hard->f;
            P.ideal = quot;
            if (ideal_norm(P.ideal) != P.norm())
                throw internal_inconsistency("hard prime norm mismatch");
            out = linear;
            out.push_back(P);
        } else {
            out = linear;
        }
    }
    // consistency: sum e_i f_i = 3 and norms correct
    int sum = 0;
    for (auto& P : out) {
        sum += P.e * P.f;
        if (ideal_norm(P.ideal) != P.norm())
            throw internal_inconsistency("prime ideal norm mismatch");
    }
    if (sum != 3) throw internal_inconsistency("sum e*f != 3 in factor_prime");
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.f != b.f) return a.f < b.f;
        return a.ideal < b.ideal;
    });
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = prime_cache_.emplace(p, std::move(out));
    return it->second;
}

std::vector<int> CubicField::element_valuations_above(const Elem& x, const Int& p) const {
    if (x.is_zero()) throw input_error("element_valuations_above: zero element");
    const std::vector<PrimeIdeal>& primes = factor_prime(p);
    Int c = integral_scale(x);
    Elem y = mul_scalar(x, Rat(c));
    unsigned vc = valuation(c, p);
    Rat ny = norm(y);
    Int nyi = num(ny);
    int V = (int)valuation(nyi, p);
    std::vector<int> vals(primes.size(), 0);
    if (V > 0) {
        int vden = (int)valuation(basis_den_, p);
        int need = V + vden + 2;
        int hard = -1;
        int known = 0;
        for (size_t i = 0; i < primes.size(); ++i) {
            const PrimeIdeal& P = primes[i];
            if (!P.root.has_value()) {
                if (hard >= 0) throw internal_inconsistency("two primes without root data");
                hard = (int)i;
                continue;
            }
            // evaluate y at the root: value = (sum_j y_j G_j(r)) / basis_den_
            Int r = *P.root;
            int prec = P.root_precision;
            if (prec < need) {
                int kk = std::max(need, (int)valuation(discF_, p) + 5);
                std::vector<Int> lifted = zp_roots(F_, p, kk);
                Int pp = 1;
                for (int ii = 0; ii < prec; ++ii) pp *= p;
                bool matched = false;
                for (const Int& rr : lifted)
                    if (mod_reduce(rr - r, pp) == 0) {
                        r = rr;
                        matched = true;
                        break;
                    }
                if (!matched) throw internal_inconsistency("lifted root lost its branch");
                prec = kk;
            }
            Int pk = 1;
            for (int ii = 0; ii < need; ++ii) pk *= p;
            Int val = 0;
            for (int j = 0; j < 3; ++j) {
                if (y.v[j] == 0) continue;
                Int gj = basis_num_[j][0] + basis_num_[j][1] * r + basis_num_[j][2] * r * r;
                val += num(y.v[j]) * gj;
            }
            val = mod_reduce(val, pk);
            if (val == 0) throw internal_inconsistency("element valuation exceeds norm bound");
            int vnum = (int)valuation(val, p);
            int v = vnum - vden;
            vals[i] = v;
            known += P.f * v;
        }
        if (hard >= 0) {
            int rem = V - known;
            if (rem % primes[hard].f != 0)
                throw internal_inconsistency("norm valuation does not split by residue degree");
            vals[hard] = rem / primes[hard].f;
        } else {
            int total = 0;
            for (size_t i = 0; i < primes.size(); ++i) total += primes[i].f * vals[i];
            if (total != V) throw internal_inconsistency("valuation bookkeeping mismatch");
        }
    }
    for (size_t i = 0; i < primes.size(); ++i) vals[i] -= (int)vc * primes[i].e;
    return vals;
}

// ---------- squares and odd powers ----------

bool CubicField::kth_power_mod_test(const Elem& x, unsigned k, int trials) const {
    // a k-th power reduces to a k-th power at every degree-1 prime away from
    // its support, so one failing residue is a certificate of non-power-ness
    if (x.is_zero()) return true;
    Int c = integral_scale(x);
    Elem m = mul_scalar(x, Rat(c));
    for (unsigned i = 0; i < k - 1; ++i) m = mul_scalar(m, Rat(c));
    Rat nm = norm(m);
    Int bad = abs(num(nm)) * basis_den_ * c;
    int done = 0;
    for (Int q = 3; done < trials && q < 300000; q = next_prime(q)) {
        if (k > 2 && mod_reduce(q - 1, Int(k)) != 0) continue;
        if (bad % q == 0) continue;
        auto roots = roots_mod_p(F_, q);
        if (roots.empty()) continue;
        Int r = roots[0];
        Int val = 0;
        for (int j = 0; j < 3; ++j) {
            if (m.v[j] == 0) continue;
            Int gj = basis_num_[j][0] + basis_num_[j][1] * r + basis_num_[j][2] * r * r;
            val += num(m.v[j]) * gj;
        }
        val = mod_reduce(val * invmod(mod_reduce(basis_den_, q), q), q);
        if (val == 0) continue;
        if (k == 2) {
            if (kronecker_symbol(val, q) == -1) return false;
        } else {
            if (powmod(val, (q - 1) / k, q) != 1) return false;
        }
        ++done;
    }
    return true;
}

bool CubicField::is_square(const Elem& x, Elem* root) const {
    if (x.is_zero()) {
        if (root) *root = zero();
        return true;
    }
    if (!kth_power_mod_test(x, 2, 16)) return false;
    Int c = integral_scale(x);
    Elem m = mul_scalar(x, Rat(c * c));  // m = x c^2, integral; root scales by c
    // rational elements: a cubic field has no quadratic subfield
    std::vector<Rat> pb = to_power_basis(m);
    if (pb[1] == 0 && pb[2] == 0) {
        if (!is_rational_square(pb[0])) return false;
        Rat r = Rat(isqrt_floor(num(pb[0]))) / Rat(isqrt_floor(den(pb[0])));
        if (root) *root = mul_scalar(one(), r / Rat(c));
        return true;
    }
    Rat nm = norm(m);
    if (!is_rational_square(nm)) return false;
    for (long prec = 96; prec <= kMaxPrecBits; prec *= 2) {
        // real enclosures of m at each place
        std::vector<Rat> p = to_power_basis(m);
        std::vector<CplxI> sigma_m;
        std::vector<CplxI> sigma_theta;
        {
            std::lock_guard<std::mutex> lk(mu_);
            refine_roots(prec);
            for (int i = 0; i < r1_; ++i)
                sigma_theta.push_back({roots_[i].as_interval(), RatInterval(Rat(0))});
            if (r2_ == 1) {
                RatInterval t1 = roots_[0].as_interval();
                RatInterval pp = t1 + Rat(F_.c[2]);
                RatInterval q = t1 * t1 + t1 * Rat(F_.c[2]) + RatInterval(Rat(F_.c[1]));
                RatInterval re = pp * Rat(-1, 2);
                RatInterval im2 = q - (pp * pp) * Rat(1, 4);
                if (im2.lo < 0) im2.lo = 0;
                sigma_theta.push_back({re, interval_sqrt(im2, prec)});
            }
        }
        for (auto& st : sigma_theta) {
            CplxI v{RatInterval(p[0]), RatInterval(Rat(0))};
            CplxI st2 = st * st;
            v = v + CplxI{RatInterval(p[1]), RatInterval(Rat(0))} * st;
            v = v + CplxI{RatInterval(p[2]), RatInterval(Rat(0))} * st2;
            sigma_m.push_back(v);
        }
        // real places must be nonnegative
        bool undecided = false;
        for (int i = 0; i < r1_; ++i) {
            if (sigma_m[i].re.hi < 0) return false;
            if (sigma_m[i].re.contains_zero()) undecided = true;
        }
        if (undecided) continue;
        // candidate square roots per place
        // real: +- sqrt; complex: two branches
        std::vector<RatInterval> real_roots_pos(r1_);
        for (int i = 0; i < r1_; ++i) {
            RatInterval v = sigma_m[i].re;
            if (v.lo < 0) v.lo = 0;
            real_roots_pos[i] = interval_sqrt(v, prec);
        }
        CplxI cplx_root;
        if (r2_ == 1) {
            // sqrt of z = sigma_m[1]: u = sqrt((|z|+re)/2), |v| = sqrt((|z|-re)/2),
            // sign(v) = sign(im). im is bounded away from 0 for non-rational m.
            const CplxI& z = sigma_m[1];
            if (z.im.contains_zero()) continue;  // refine
            RatInterval mag =
                interval_sqrt(z.re * z.re + z.im * z.im, prec);
            RatInterval a = (mag + z.re) * Rat(1, 2);
            RatInterval b = (mag - z.re) * Rat(1, 2);
            if (a.lo < 0) a.lo = 0;
            if (b.lo < 0) b.lo = 0;
            RatInterval u = interval_sqrt(a, prec);
            RatInterval vmag = interval_sqrt(b, prec);
            int s = z.im.strict_sign();
            cplx_root.re = u;
            cplx_root.im = s > 0 ? vmag : -vmag;
        }
        // try sign patterns, first coordinate fixed +
        int npatterns = r2_ == 1 ? 2 : 4;
        bool all_decided = true;
        for (int pat = 0; pat < npatterns; ++pat) {
            // build the real 3-vector y of candidate-root embeddings
            std::vector<RatInterval> y(3);
            if (r2_ == 0) {
                y[0] = real_roots_pos[0];
                y[1] = (pat & 1) ? -real_roots_pos[1] : real_roots_pos[1];
                y[2] = (pat & 2) ? -real_roots_pos[2] : real_roots_pos[2];
            } else {
                y[0] = real_roots_pos[0];
                // branch: +- complex root
                y[1] = (pat & 1) ? -cplx_root.re : cplx_root.re;
                y[2] = (pat & 1) ? -cplx_root.im : cplx_root.im;
            }
            // solve Vandermonde-style system: g0 + g1 s + g2 s^2 = y per place
            // rows: real place i: (1, t_i, t_i^2); complex: Re/Im rows
            std::vector<std::vector<RatInterval>> Mrows(3, std::vector<RatInterval>(3));
            if (r2_ == 0) {
                for (int i = 0; i < 3; ++i) {
                    RatInterval t = sigma_theta[i].re;
                    Mrows[i][0] = RatInterval(Rat(1));
                    Mrows[i][1] = t;
                    Mrows[i][2] = t * t;
                }
            } else {
                RatInterval t = sigma_theta[0].re;
                Mrows[0][0] = RatInterval(Rat(1));
                Mrows[0][1] = t;
                Mrows[0][2] = t * t;
                CplxI s = sigma_theta[1];
                CplxI s2 = s * s;
                Mrows[1][0] = RatInterval(Rat(1));
                Mrows[1][1] = s.re;
                Mrows[1][2] = s2.re;
                Mrows[2][0] = RatInterval(Rat(0));
                Mrows[2][1] = s.im;
                Mrows[2][2] = s2.im;
            }
            // Cramer solve with interval arithmetic
            auto det3 = [](const std::vector<std::vector<RatInterval>>& a) {
                return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                       a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                       a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
            };
            RatInterval D = det3(Mrows);
            if (D.contains_zero()) {
                all_decided = false;
                continue;
            }
            std::vector<RatInterval> g(3);
            bool wide = false;
            for (int col = 0; col < 3; ++col) {
                auto Mc = Mrows;
                for (int i = 0; i < 3; ++i) Mc[i][col] = y[i];
                RatInterval numr = det3(Mc);
                // divide intervals
                RatInterval inv = interval_inv(D);
                g[col] = numr * inv;
            }
            // convert power-basis interval coords to integral coords
            std::vector<RatInterval> w(3, RatInterval(Rat(0)));
            for (int k = 0; k < 3; ++k) {
                RatInterval acc(Rat(0));
                for (int j = 0; j < 3; ++j) acc = acc + g[j] * basis_inv_[j][k];
                w[k] = acc;
            }
            std::vector<Int> coords(3);
            bool no_integer = false;
            for (int k = 0; k < 3; ++k) {
                if (w[k].width() >= Rat(1, 2)) {
                    wide = true;
                    break;
                }
                Int lo = rat_ceil(w[k].lo), hi = rat_floor(w[k].hi);
                if (lo > hi) {
                    no_integer = true;  // eliminated: no integral coordinates fit
                    break;
                }
                coords[k] = lo;
            }
            if (wide) {
                all_decided = false;
                continue;
            }
            if (no_integer) continue;
            Elem cand;
            for (int k = 0; k < 3; ++k) cand.v[k] = Rat(coords[k]);
            if (mul(cand, cand) == m) {
                if (root) *root = mul_scalar(cand, Rat(1, c));
                return true;
            }
        }
        if (all_decided) return false;
    }
    throw precision_error("is_square: precision cap reached");
}

bool CubicField::is_kth_power_odd(const Elem& x, unsigned k, Elem* root) const {
    if (k % 2 == 0 || k < 3) throw input_error("is_kth_power_odd: odd k >= 3 required");
    if (x.is_zero()) {
        if (root) *root = zero();
        return true;
    }
    Int c = integral_scale(x);
    Int ck = 1;
    for (unsigned i = 0; i < k; ++i) ck *= c;
    Elem m = mul_scalar(x, Rat(ck));
    Rat nm = norm(m);
    // N(root)^k = N(m): the rational norm must be a k-th power
    Int nn = num(nm);
    Int nroot = iroot_floor(nn, k);
    Int check = 1;
    for (unsigned i = 0; i < k; ++i) check *= nroot;
    if (check != abs(nn)) return false;
    if (!kth_power_mod_test(x, k, 24)) return false;
    if (r2_ == 0) {
        // totally real and k odd: the real k-th roots are unique, so there is
        // exactly one candidate to reconstruct and verify
        for (long prec = 96; prec <= kMaxPrecBits; prec *= 2) {
            std::vector<Rat> p = to_power_basis(m);
            std::vector<RatInterval> y(3), trows(3);
            {
                std::lock_guard<std::mutex> lk(mu_);
                refine_roots(prec);
                for (int i = 0; i < 3; ++i) trows[i] = roots_[i].as_interval();
            }
            for (int i = 0; i < 3; ++i) {
                RatInterval val =
                    (trows[i] * trows[i]) * p[2] + trows[i] * p[1] + RatInterval(p[0]);
                y[i] = interval_kth_root(val, k, prec);
            }
            std::vector<std::vector<RatInterval>> M(3, std::vector<RatInterval>(3));
            for (int i = 0; i < 3; ++i) {
                M[i][0] = RatInterval(Rat(1));
                M[i][1] = trows[i];
                M[i][2] = trows[i] * trows[i];
            }
            auto det3 = [](const std::vector<std::vector<RatInterval>>& a) {
                return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                       a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                       a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
            };
            RatInterval D = det3(M);
            if (D.contains_zero()) continue;
            std::vector<RatInterval> g(3);
            for (int col = 0; col < 3; ++col) {
                auto Mc = M;
                for (int i = 0; i < 3; ++i) Mc[i][col] = y[i];
                g[col] = det3(Mc) * interval_inv(D);
            }
            std::vector<RatInterval> w(3, RatInterval(Rat(0)));
            for (int kk = 0; kk < 3; ++kk) {
                RatInterval acc(Rat(0));
                for (int j = 0; j < 3; ++j) acc = acc + g[j] * basis_inv_[j][kk];
                w[kk] = acc;
            }
            bool wide = false, no_integer = false;
            Elem cand;
            for (int kk = 0; kk < 3; ++kk) {
                if (w[kk].width() >= Rat(1, 2)) {
                    wide = true;
                    break;
                }
                Int lo = rat_ceil(w[kk].lo), hi = rat_floor(w[kk].hi);
                if (lo > hi) {
                    no_integer = true;
                    break;
                }
                cand.v[kk] = Rat(lo);
            }
            if (wide) continue;
            if (no_integer) return false;
            if (pow(cand, (long)k) == m) {
                if (root) *root = mul_scalar(cand, Rat(1, c));
                return true;
            }
            return false;
        }
        throw precision_error("is_kth_power_odd: precision cap reached");
    }
    // search ball: |sigma_i(gamma)|^2 = |sigma_i(m)|^(2/k)
    long prec = 64;
    Rat C(0);
    {
        auto em = real_embeddings(m, prec);
        if (r2_ == 0) {
            for (auto& iv : em) {
                Rat up = iv.abs_upper() + 1;
                RatInterval r2b = interval_kth_root(RatInterval(up, up), k, 16);
                C += r2b.hi * r2b.hi;
            }
        } else {
            Rat up1 = em[0].abs_upper() + 1;
            RatInterval r1b = interval_kth_root(RatInterval(up1, up1), k, 16);
            C += r1b.hi * r1b.hi;
            // |sigma_2(m)|^2 = |N(m) / sigma_1(m)|
            Rat nabs = selmer2::abs(num(nm)) / Rat(den(nm));
            // lower bound of |sigma_1(m)| needed; refine until separated
            RatInterval s1 = em[0];
            long pp = prec;
            while (s1.contains_zero() && pp < kMaxPrecBits) {
                pp *= 2;
                s1 = real_embeddings(m, pp)[0];
            }
            Rat lo1 = s1.lo > 0 ? s1.lo : -s1.hi;
            if (lo1 <= 0) throw precision_error("is_kth_power_odd: embedding near zero");
            Rat mag2up = nabs / lo1;  // upper bound on |sigma_2(m)|^2
            RatInterval r2b = interval_kth_root(RatInterval(mag2up, mag2up), k, 16);
            C += Rat(2) * r2b.hi;
        }
    }
    C = C * Rat(17, 16) + 2;
    long gprec = 48 + ceil_log2_abs(C);
    std::vector<std::vector<Rat>> rows = {{Rat(1), Rat(0), Rat(0)},
                                          {Rat(0), Rat(1), Rat(0)},
                                          {Rat(0), Rat(0), Rat(1)}};
    QMat g = t2_gram(rows, gprec);
    bool found = false;
    Elem result;
    long budget = 400000;
    fincke_pohst(g, C, [&](const std::vector<Int>& v) {
        if (--budget < 0) throw budget_exhausted("is_kth_power_odd: search ball too large");
        Elem cand;
        for (int i = 0; i < 3; ++i) cand.v[i] = Rat(v[i]);
        Elem pk = pow(cand, (long)k);
        if (pk == m) {
            found = true;
            result = cand;
            return false;
        }
        Elem nk = neg(pk);  // (-cand)^k = -cand^k for odd k
        if (nk == m) {
            found = true;
            result = neg(cand);
            return false;
        }
        return true;
    });
    if (found && root) *root = mul_scalar(result, Rat(1, c));
    return found;
}

// basis element accessor
Elem CubicField::basis_elem(int j) const {
    Elem x;
    x.v[j] = 1;
    return x;
}

std::string ideal_key(const IdealHNF& a) {
    std::ostringstream os;
    os << a.den.get_str();
    for (auto& row : a.a)
        for (auto& v : row) os << ":" << v.get_str();
    return os.str();
}

}  // namespace selmer2
