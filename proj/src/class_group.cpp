#include "selmer2/class_group.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace selmer2 {

namespace {

Rat rat_sqrt_upper(const Int& n) {
    return Rat(isqrt_ceil(n * 10000), 100);
}

double to_double(const Rat& q) { return mpq_get_d(q.get_mpq_t()); }

// 2^m >= max(|x|, 1/|x|) for an interval separated from zero
long log2_height_bound(const RatInterval& iv) {
    Rat hi = iv.abs_upper();
    Rat lo = iv.lo > 0 ? iv.lo : -iv.hi;
    if (lo <= 0) throw precision_error("log2_height_bound: interval touches zero");
    long a = ceil_log2_abs(hi);
    long b = ceil_log2_abs(1 / lo);
    return std::max({a, b, 0L});
}

}  // namespace

int AbelianGroupPresentation::two_rank() const {
    int r = 0;
    for (const Int& d : divisors)
        if (d % 2 == 0) ++r;
    return r;
}

int two_rank(const AbelianGroupPresentation& g) { return g.two_rank(); }

AbelianGroupPresentation presentation_from_relations(const std::vector<IdealHNF>& gens,
                                                     int sign_symbols, const Mat& rel) {
    AbelianGroupPresentation g;
    g.generators = gens;
    g.sign_symbols = sign_symbols;
    g.relations = rel;
    size_t n = gens.size() + sign_symbols;
    if (rel.empty()) {
        g.snf_diag.assign(n, Int(0));
        g.order = n == 0 ? 1 : 0;
        return g;
    }
    SmithForm sf = smith_form(rel);
    g.snf_v = sf.v;
    g.snf_v_inv.assign(n, std::vector<Int>(n, Int(0)));
    {
        QMat vq(n, std::vector<Rat>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) vq[i][j] = Rat(sf.v[i][j]);
        QMat inv = qmat_inverse(vq);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (den(inv[i][j]) != 1)
                    throw internal_inconsistency("snf transform not unimodular");
                g.snf_v_inv[i][j] = num(inv[i][j]);
            }
    }
    g.snf_diag.assign(n, Int(0));
    for (size_t i = 0; i < sf.diag.size() && i < n; ++i) g.snf_diag[i] = abs(sf.diag[i]);
    g.order = 1;
    for (size_t i = 0; i < n; ++i) {
        if (g.snf_diag[i] == 0)
            g.order = 0;
        else if (g.order != 0)
            g.order *= g.snf_diag[i];
        if (g.snf_diag[i] > 1) g.divisors.push_back(g.snf_diag[i]);
    }
    std::sort(g.divisors.begin(), g.divisors.end());
    return g;
}


std::vector<Int> AbelianGroupPresentation::class_coords(const std::vector<Int>& w) const {
    std::vector<Int> y = vec_mat(w, snf_v);
    for (size_t i = 0; i < y.size(); ++i)
        if (snf_diag[i] != 0) y[i] = mod_reduce(y[i], snf_diag[i]);
    return y;
}

bool AbelianGroupPresentation::coords_trivial(const std::vector<Int>& coords) const {
    for (auto& c : coords)
        if (c != 0) return false;
    return true;
}

Int minkowski_bound(const CubicField& K) {
    Int d = abs(K.field_disc());
    Rat b = Rat(2, 9) * rat_sqrt_upper(d);
    if (K.r2() == 1) b *= Rat(127324, 100000);  // upper bound on 4/pi
    return rat_ceil(b);
}

void enumerate_ideal_elements(const CubicField& K, const IdealHNF& I, const Rat& bound,
                              const std::function<bool(const Elem&)>& cb) {
    std::vector<Elem> basis = K.ideal_basis(I);
    std::vector<std::vector<Rat>> rows(3);
    for (int i = 0; i < 3; ++i) rows[i] = basis[i].v;
    long prec = 48 + std::max(0L, ceil_log2_abs(bound));
    QMat g = K.t2_gram(rows, prec);
    Mat u = lll_gram(g);
    std::vector<Elem> rb(3, K.zero());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (u[i][j] != 0) rb[i] = K.add(rb[i], K.mul_scalar(basis[j], Rat(u[i][j])));
    std::vector<std::vector<Rat>> rrows(3);
    for (int i = 0; i < 3; ++i) rrows[i] = rb[i].v;
    QMat g2 = K.t2_gram(rrows, prec);
    Rat inflated = bound * Rat(17, 16) + 1;
    fincke_pohst(g2, inflated, [&](const std::vector<Int>& x) {
        Elem e = K.zero();
        for (int i = 0; i < 3; ++i)
            if (x[i] != 0) e = K.add(e, K.mul_scalar(rb[i], Rat(x[i])));
        return cb(e);
    });
}

std::optional<Elem> principal_generator_search(const CubicField& K, const UnitGroup& units,
                                               const IdealHNF& I) {
    if (!K.ideal_is_integral(I))
        throw input_error("principal_generator_search: integral ideals only");
    Int N = K.ideal_norm(I);
    int places = K.r2() == 1 ? 2 : 3;
    std::vector<long> M(places, 0);
    for (const Elem& u : units.fundamental) {
        for (long prec = 96;; prec *= 2) {
            if (prec > (1 << 16)) throw precision_error("unit embedding bound");
            auto em = K.real_embeddings(u, prec);
            bool ok = true;
            std::vector<long> add(places, 0);
            for (int i = 0; i < K.r1(); ++i) {
                if (em[i].contains_zero()) {
                    ok = false;
                    break;
                }
                add[i] = log2_height_bound(em[i]);
            }
            if (ok && K.r2() == 1) add[1] = (std::max(log2_height_bound(em[0]), 0L) + 1) / 2;
            if (ok) {
                for (int i = 0; i < places; ++i) M[i] += add[i];
                break;
            }
        }
    }
    // unit reduction puts a generator in the zonotope with coefficients in
    // [-1/2, 1/2]: |sigma_i| <= N^(1/3) * 2^(M_i / 2)
    Rat n23 = Rat(iroot_floor(N * N, 3) + 1);
    Rat C(0);
    for (int i = 0; i < places; ++i) {
        Rat w = (K.r2() == 1 && i == 1) ? Rat(2) : Rat(1);
        C += w * n23 * Rat(Int(1) << M[i]);
    }
    std::optional<Elem> found;
    enumerate_ideal_elements(K, I, C, [&](const Elem& x) {
        Rat nx = K.norm(x);
        if (den(nx) == 1 && selmer2::abs(num(nx)) == N) {
            found = x;
            return false;
        }
        return true;
    });
    if (found && !(K.principal_ideal(*found) == I))
        throw internal_inconsistency("norm-matched element does not generate");
    return found;
}

// ---------------- relation machinery ----------------

namespace {

struct RelationAccum {
    std::vector<PrimeIdeal> fb;
    std::map<Int, std::vector<size_t>> fb_by_p;
    std::vector<Int> fb_primes;

    std::vector<Elem> elements;
    Mat vectors;
    std::vector<std::vector<int>> signs;
    std::set<std::string> seen;

    std::vector<Elem> unit_candidates;
};

std::string elem_key(const Elem& e) {
    std::string s;
    for (auto& c : e.v) {
        s += c.get_num().get_str();
        s += "/";
        s += c.get_den().get_str();
        s += ",";
    }
    return s;
}

std::optional<std::vector<Int>> fb_vector_of_element(const CubicField& K, RelationAccum& acc,
                                                     const Elem& x) {
    Rat nx = K.norm(x);
    std::vector<Int> v(acc.fb.size(), Int(0));
    Int rest = abs(num(nx));
    Int restd = den(nx);
    std::vector<Int> ps;
    for (const Int& p : acc.fb_primes) {
        bool divides = false;
        while (rest % p == 0) {
            rest /= p;
            divides = true;
        }
        while (restd % p == 0) {
            restd /= p;
            divides = true;
        }
        if (divides) ps.push_back(p);
    }
    if (rest != 1 || restd != 1) return std::nullopt;
    for (const Int& p : ps) {
        auto vals = K.element_valuations_above(x, p);
        auto& idx = acc.fb_by_p[p];
        for (size_t k = 0; k < idx.size(); ++k) v[idx[k]] = vals[k];
    }
    return v;
}

void add_relation(const CubicField& K, RelationAccum& acc, const Elem& x,
                  const std::vector<Int>& v) {
    std::string key = elem_key(x);
    if (acc.seen.count(key)) return;
    acc.seen.insert(key);
    acc.elements.push_back(x);
    acc.vectors.push_back(v);
    acc.signs.push_back(K.signature_of(x));
}

bool consider_element(const CubicField& K, RelationAccum& acc, const Elem& x) {
    if (x.is_zero()) return false;
    Rat nx = K.norm(x);
    if (den(nx) == 1 && selmer2::abs(num(nx)) == 1) {
        acc.unit_candidates.push_back(x);
        return false;
    }
    auto v = fb_vector_of_element(K, acc, x);
    if (!v) return false;
    add_relation(K, acc, x, *v);
    return true;
}

struct UnitLattice {
    const CubicField& K;
    std::vector<Elem> basis;
    int rank_target;
    bool healthy = true;

    explicit UnitLattice(const CubicField& k) : K(k), rank_target(k.r1() + k.r2() - 1) {}

    bool is_torsion(const Elem& u) const { return u == K.one() || u == K.neg(K.one()); }

    std::vector<double> logs(const Elem& u) const {
        auto em = K.real_embeddings(u, 160);
        std::vector<double> l;
        for (auto& iv : em) {
            double m = std::fabs(to_double(iv.mid()));
            if (m <= 0) m = 1e-300;
            l.push_back(std::log(m));
        }
        return l;
    }

    double height(const Elem& u) const {
        auto l = logs(u);
        double h = 0;
        for (double x : l) h += x * x;
        if (K.r2() == 1) h += l[0] * l[0] / 2;  // two conjugate places of size 1/sqrt|s1|
        return h;
    }

    Elem reduce(Elem u) const {
        if (basis.empty()) return u;
        size_t k = basis.size();
        for (int round = 0; round < 80; ++round) {
            // least-squares exponents on the log lattice, then a local search
            // over rounding neighbours
            auto lu = logs(u);
            std::vector<std::vector<double>> lb(k);
            for (size_t i = 0; i < k; ++i) lb[i] = logs(basis[i]);
            std::vector<double> e(k, 0.0);
            if (k == 1) {
                double dot = 0, nb = 0;
                for (size_t i = 0; i < lu.size(); ++i) {
                    dot += lu[i] * lb[0][i];
                    nb += lb[0][i] * lb[0][i];
                }
                e[0] = nb > 1e-18 ? dot / nb : 0;
            } else {
                // normal equations for k = 2
                double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
                for (size_t i = 0; i < lu.size(); ++i) {
                    a11 += lb[0][i] * lb[0][i];
                    a12 += lb[0][i] * lb[1][i];
                    a22 += lb[1][i] * lb[1][i];
                    b1 += lu[i] * lb[0][i];
                    b2 += lu[i] * lb[1][i];
                }
                double det = a11 * a22 - a12 * a12;
                if (std::fabs(det) > 1e-18) {
                    e[0] = (b1 * a22 - b2 * a12) / det;
                    e[1] = (a11 * b2 - a12 * b1) / det;
                }
            }
            double hu = height(u);
            Elem best = u;
            double hbest = hu;
            std::vector<long> steps(k, 0);
            std::function<void(size_t, Elem)> walk = [&](size_t pos, Elem cur) {
                if (pos == k) {
                    bool allz = true;
                    for (long s : steps)
                        if (s != 0) allz = false;
                    if (allz) return;
                    double hc = height(cur);
                    if (hc < hbest - 1e-12) {
                        hbest = hc;
                        best = cur;
                    }
                    return;
                }
                long base = std::lround(e[pos]);
                for (long d : {0L, -1L, 1L}) {
                    steps[pos] = base + d;
                    Elem next = steps[pos] == 0 ? cur : K.mul(cur, K.pow(basis[pos], -steps[pos]));
                    walk(pos + 1, next);
                }
                steps[pos] = 0;
            };
            walk(0, u);
            if (hbest < hu - 1e-12) {
                u = best;
            } else {
                break;
            }
        }
        return u;
    }

    void insert(const Elem& u0) {
        if (u0.is_zero()) return;
        Elem u = reduce(u0);
        if (is_torsion(u)) return;
        basis.push_back(u);
        for (int round = 0; round < 200; ++round) {
            bool changed = false;
            for (size_t i = 0; i < basis.size();) {
                if (is_torsion(basis[i]))
                    basis.erase(basis.begin() + i);
                else
                    ++i;
            }
            std::sort(basis.begin(), basis.end(),
                      [&](const Elem& a, const Elem& b) { return height(a) < height(b); });
            for (size_t i = basis.size(); i-- > 0 && !changed;) {
                UnitLattice tmp{K};
                for (size_t j = 0; j < basis.size(); ++j)
                    if (j != i) tmp.basis.push_back(basis[j]);
                Elem r = tmp.reduce(basis[i]);
                if (!(r == basis[i])) {
                    if (is_torsion(r))
                        basis.erase(basis.begin() + i);
                    else
                        basis[i] = r;
                    changed = true;
                }
            }
            if (!changed) break;
            if (round == 199) healthy = false;
        }
        while ((int)basis.size() > rank_target) {
            healthy = false;
            basis.pop_back();
        }
    }

    double regulator() const {
        if ((int)basis.size() != rank_target) return 0;
        if (rank_target == 1) return std::fabs(logs(basis[0])[0]);
        auto l1 = logs(basis[0]);
        auto l2 = logs(basis[1]);
        return std::fabs(l1[0] * l2[1] - l1[1] * l2[0]);
    }
};

double euler_hr_estimate(const CubicField& K, long plimit) {
    double prod = 1.0;
    Int discF = K.disc_poly();
    for (long p : primes_up_to(plimit)) {
        double fp;
        if (discF % p == 0 || K.index() % p == 0) {
            auto& primes = K.factor_prime(Int(p));
            double dp = 1.0;
            for (auto& P : primes) dp *= (1.0 - std::pow((double)p, -(double)P.f));
            fp = (1.0 - 1.0 / p) / dp;
        } else {
            int roots = count_roots_mod_p(K.poly(), Int(p));
            double q = (double)p;
            double dp;
            if (roots == 0)
                dp = 1.0 - 1.0 / (q * q * q);
            else if (roots == 1)
                dp = (1.0 - 1.0 / q) * (1.0 - 1.0 / (q * q));
            else
                dp = std::pow(1.0 - 1.0 / q, 3);
            fp = (1.0 - 1.0 / q) / dp;
        }
        prod *= fp;
    }
    double sd = std::sqrt(std::fabs(to_double(Rat(K.field_disc()))));
    if (K.r2() == 0) return prod * sd / 4.0;
    return prod * sd / (2.0 * 3.14159265358979323846);
}

}  // namespace

ClassData compute_class_data(const CubicField& K, const ClassOptions& opt) {
    ClassData cd;
    cd.minkowski_bound = minkowski_bound(K);
    RelationAccum acc;
    for (long p : primes_up_to(std::max(2L, (long)cd.minkowski_bound.get_si()))) {
        auto& primes = K.factor_prime(Int(p));
        std::vector<size_t> idx;
        for (auto& P : primes) {
            idx.push_back(acc.fb.size());
            acc.fb.push_back(P);
        }
        acc.fb_by_p[Int(p)] = idx;
        acc.fb_primes.push_back(Int(p));
    }
    size_t nfb = acc.fb.size();
    for (const Int& p : acc.fb_primes) {
        std::vector<Int> v(nfb, Int(0));
        for (size_t k : acc.fb_by_p[p]) v[k] = acc.fb[k].e;
        add_relation(K, acc, K.from_int(p), v);
    }

    UnitLattice ulat(K);
    long effort = opt.initial_effort;
    Int last_order = -1;
    int stable = 0;
    double hr_est = euler_hr_estimate(K, 30000);
    AbelianGroupPresentation cl;

    for (int round = 0; round < opt.max_rounds; ++round) {
        for (size_t i = 0; i < nfb; ++i) {
            const PrimeIdeal& P = acc.fb[i];
            Rat n23 = Rat(iroot_floor(P.norm() * P.norm(), 3) + 1);
            Rat C = n23 * Rat(4 + 4 * round);
            long count = 0;
            enumerate_ideal_elements(K, P.ideal, C, [&](const Elem& x) {
                consider_element(K, acc, x);
                return ++count < effort;
            });
        }
        {
            Rat C = Rat(16 << round);
            long count = 0;
            enumerate_ideal_elements(K, K.unit_ideal(), C, [&](const Elem& x) {
                consider_element(K, acc, x);
                return ++count < 8 * effort;
            });
        }
        std::vector<IdealHNF> gens;
        for (auto& P : acc.fb) gens.push_back(P.ideal);
        cl = presentation_from_relations(gens, 0, acc.vectors);
        Mat kern = left_kernel(acc.vectors);
        for (auto& krow : kern) {
            Elem u = K.one();
            for (size_t i = 0; i < krow.size(); ++i) {
                if (krow[i] == 0) continue;
                u = K.mul(u, K.pow(acc.elements[i], (long)krow[i].get_si()));
            }
            ulat.insert(u);
        }
        for (auto& u : acc.unit_candidates) ulat.insert(u);
        acc.unit_candidates.clear();

        bool rank_full = (int)ulat.basis.size() == ulat.rank_target;
        if (cl.order != 0 && rank_full) {
            double ratio = to_double(Rat(cl.order)) * ulat.regulator() / hr_est;
            bool euler_ok = ratio < 1.6 && ratio > 0.6;
            if (cl.order == last_order && euler_ok)
                ++stable;
            else
                stable = 0;
            last_order = cl.order;
            if (stable >= 1) break;
        }
        effort *= 2;
    }
    if (cl.order == 0) {
        cd.notes += "relation search exhausted budget; group not certified; ";
    }

    // saturation at 2, 3, 5, 7 and a short-vector cross-check, iterated until
    // a clean pass (insertions restart both checks)
    bool saturated = true;
    bool box_ok = true;
    auto saturation_pass = [&]() -> bool {
        bool any = false;
        if ((int)ulat.basis.size() != ulat.rank_target) return false;
        for (unsigned q : {2u, 3u, 5u, 7u}) {
            bool changed = true;
            int guard = 0;
            while (changed) {
                changed = false;
                if (++guard > 16) {
                    saturated = false;
                    break;
                }
                size_t r = ulat.basis.size();
                std::vector<unsigned> e(r, 0);
                std::function<bool(size_t)> iter = [&](size_t pos) -> bool {
                    if (pos == r) {
                        unsigned lead = 0;
                        for (unsigned x : e)
                            if (x) {
                                lead = x;
                                break;
                            }
                        if (lead != 1) return false;
                        Elem cand = K.one();
                        for (size_t i = 0; i < r; ++i)
                            if (e[i]) cand = K.mul(cand, K.pow(ulat.basis[i], (long)e[i]));
                        std::vector<Elem> tries{cand};
                        if (q == 2) tries.push_back(K.neg(cand));
                        for (Elem& t : tries) {
                            Elem root;
                            bool isp = false;
                            try {
                                isp = q == 2 ? K.is_square(t, &root)
                                             : K.is_kth_power_odd(t, q, &root);
                            } catch (const budget_exhausted&) {
                                saturated = false;
                                continue;
                            }
                            if (isp && !ulat.is_torsion(root)) {
                                ulat.insert(root);
                                return true;
                            }
                        }
                        return false;
                    }
                    for (unsigned x = 0; x < q; ++x) {
                        e[pos] = x;
                        if (iter(pos + 1)) return true;
                    }
                    e[pos] = 0;
                    return false;
                };
                if (iter(0)) {
                    changed = true;
                    any = true;
                }
            }
        }
        return any;
    };
    auto box_pass = [&]() -> bool {
        bool any = false;
        long count = 0;
        enumerate_ideal_elements(K, K.unit_ideal(), Rat(200), [&](const Elem& x) {
            Rat nx = K.norm(x);
            if (den(nx) == 1 && selmer2::abs(num(nx)) == 1) {
                Elem r = ulat.reduce(x);
                if (!ulat.is_torsion(r)) {
                    ulat.insert(x);
                    any = true;
                }
            }
            return ++count < 20000;
        });
        return any;
    };
    {
        int pass = 0;
        for (; pass < 5; ++pass) {
            bool a = saturation_pass();
            bool b = box_pass();
            if (!a && !b) break;
        }
        if (pass == 5) box_ok = false;
    }

    cd.units.fundamental = ulat.basis;
    for (auto& u : ulat.basis) cd.units.signatures.push_back(K.signature_of(u));
    cd.units.regulator = ulat.regulator();
    cd.units.certified =
        (int)ulat.basis.size() == ulat.rank_target && saturated && box_ok && ulat.healthy;
    if (!cd.units.certified) cd.notes += "units not certified fundamental; ";

    // narrow class group
    {
        size_t cols = nfb + K.r1();
        Mat rel;
        for (size_t i = 0; i < acc.vectors.size(); ++i) {
            std::vector<Int> row(cols, Int(0));
            for (size_t j = 0; j < nfb; ++j) row[j] = acc.vectors[i][j];
            for (int l = 0; l < K.r1(); ++l) row[nfb + l] = acc.signs[i][l] < 0 ? 1 : 0;
            rel.push_back(row);
        }
        auto unit_row = [&](const std::vector<int>& sig) {
            std::vector<Int> row(cols, Int(0));
            for (int l = 0; l < K.r1(); ++l) row[nfb + l] = sig[l] < 0 ? 1 : 0;
            rel.push_back(row);
        };
        std::vector<int> allminus(K.r1(), -1);
        unit_row(allminus);
        for (auto& sig : cd.units.signatures) unit_row(sig);
        for (int l = 0; l < K.r1(); ++l) {
            std::vector<Int> row(cols, Int(0));
            row[nfb + l] = 2;
            rel.push_back(row);
        }
        std::vector<IdealHNF> gens;
        for (auto& P : acc.fb) gens.push_back(P.ideal);
        cd.cl_plus = presentation_from_relations(gens, K.r1(), rel);
    }

    cd.factor_base = acc.fb;
    cd.rel_elements = acc.elements;
    cd.rel_vectors = acc.vectors;
    cd.rel_signs = acc.signs;
    cd.cl = cl;

    bool certified = cl.order != 0 && cd.units.certified;
    if (certified && opt.certify && abs(K.field_disc()) <= opt.certify_disc_bound &&
        cl.order <= opt.certify_class_bound) {
        std::vector<std::vector<Int>> classes;
        std::vector<Int> cur(cl.snf_diag.size(), Int(0));
        std::function<void(size_t)> gencls = [&](size_t i) {
            if (i == cl.snf_diag.size()) {
                for (auto& c : cur)
                    if (c != 0) {
                        classes.push_back(cur);
                        return;
                    }
                return;
            }
            Int d = cl.snf_diag[i] == 0 ? 1 : cl.snf_diag[i];
            for (Int x = 0; x < d; ++x) {
                cur[i] = x;
                gencls(i + 1);
            }
            cur[i] = 0;
        };
        gencls(0);
        for (auto& coords : classes) {
            std::vector<Int> w = vec_mat(coords, cl.snf_v_inv);
            for (size_t j = 0; j < nfb; ++j) {
                while (w[j] < 0) {
                    const Int& p = acc.fb[j].p;
                    for (size_t k : acc.fb_by_p[p]) w[k] += acc.fb[k].e;
                }
            }
            IdealHNF I = K.unit_ideal();
            for (size_t j = 0; j < nfb; ++j)
                if (w[j] > 0) I = K.ideal_mul(I, K.ideal_pow(acc.fb[j].ideal, w[j].get_si()));
            // shrink the representative with a short vector first
            {
                Int NI = K.ideal_norm(I);
                Rat n23 = Rat(iroot_floor(NI * NI, 3) + 1);
                Elem best = K.zero();
                Rat bestn(0);
                long count = 0;
                enumerate_ideal_elements(K, I, n23 * 12, [&](const Elem& x) {
                    Rat nx = selmer2::abs(K.norm(x));
                    if (best.is_zero() || nx < bestn) {
                        best = x;
                        bestn = nx;
                    }
                    return ++count < 4000;
                });
                if (!best.is_zero()) {
                    IdealHNF J = K.ideal_mul(K.principal_ideal(best), K.ideal_inverse(I));
                    if (K.ideal_is_integral(J)) I = J;
                }
            }
            if (principal_generator_search(K, cd.units, I)) {
                certified = false;
                cd.notes += "certification found an unexpected principal ideal; ";
                break;
            }
        }
    } else {
        certified = false;
    }
    cd.certified = certified;
    cd.cl.certified = certified;
    cd.cl_plus.certified = certified;
    return cd;
}

namespace {

// find beta in the numerator lattice of I with (beta) = (num I) * J, J
// integral and factor-base smooth; returns (beta, fb vector of J)
std::optional<std::pair<Elem, std::vector<Int>>> smooth_reduce(const CubicField& K,
                                                               const ClassData& cd,
                                                               const IdealHNF& I0) {
    IdealHNF I = I0;
    I.den = 1;
    Int NI = K.ideal_norm(I);
    Rat n23 = Rat(iroot_floor(NI * NI, 3) + 1);
    std::vector<Int> fbp;
    for (auto& P : cd.factor_base)
        if (fbp.empty() || fbp.back() != P.p) fbp.push_back(P.p);
    for (int round = 0; round < 8; ++round) {
        Rat C = n23 * Rat(8 << round);
        std::optional<std::pair<Elem, std::vector<Int>>> out;
        long count = 0;
        enumerate_ideal_elements(K, I, C, [&](const Elem& x) {
            if (++count > 200000) return false;
            Rat q = selmer2::abs(K.norm(x)) / Rat(NI);
            if (den(q) != 1) return true;
            Int rest = num(q);
            for (const Int& p : fbp)
                while (rest % p == 0) rest /= p;
            if (rest != 1) return true;
            IdealHNF J = K.ideal_mul(K.principal_ideal(x), K.ideal_inverse(I));
            if (!K.ideal_is_integral(J)) return true;
            std::vector<Int> v(cd.factor_base.size(), Int(0));
            Int nj = K.ideal_norm(J);
            for (size_t i = 0; i < cd.factor_base.size(); ++i)
                if (nj % cd.factor_base[i].p == 0)
                    v[i] = K.ideal_valuation(J, cd.factor_base[i]);
            out = std::make_pair(x, v);
            return false;
        });
        if (out) return out;
    }
    return std::nullopt;
}

}  // namespace

std::vector<Int> ideal_class_coords(const CubicField& K, const ClassData& cd,
                                    const IdealHNF& I) {
    // fast path: the numerator lattice is already factor-base smooth
    {
        IdealHNF J = I;
        J.den = 1;
        Int nj = K.ideal_norm(J);
        Int rest = nj;
        for (auto& P : cd.factor_base)
            while (rest % P.p == 0) rest /= P.p;
        if (rest == 1) {
            std::vector<Int> v(cd.factor_base.size(), Int(0));
            for (size_t i = 0; i < cd.factor_base.size(); ++i)
                if (nj % cd.factor_base[i].p == 0)
                    v[i] = K.ideal_valuation(J, cd.factor_base[i]);
            return cd.cl.class_coords(v);
        }
    }
    auto sr = smooth_reduce(K, cd, I);
    if (!sr) throw budget_exhausted("discrete log: smooth reduction failed");
    std::vector<Int> negv(sr->second);
    for (auto& x : negv) x = -x;
    return cd.cl.class_coords(negv);
}

std::optional<Elem> is_principal(const CubicField& K, const ClassData& cd, const IdealHNF& I) {
    if (I.den != 1) {
        // reduce to the numerator lattice: I = num/den, gen(I) = gen(num)/den
        IdealHNF numI = I;
        numI.den = 1;
        auto g = is_principal(K, cd, numI);
        if (!g) return std::nullopt;
        return K.mul_scalar(*g, Rat(1, I.den));
    }
    auto sr = smooth_reduce(K, cd, I);
    if (!sr) throw budget_exhausted("is_principal: smooth reduction failed");
    const Elem& beta = sr->first;
    const std::vector<Int>& vJ = sr->second;
    auto sol = solve_left(cd.rel_vectors, vJ);
    if (!sol) return std::nullopt;
    Elem delta = K.one();
    for (size_t i = 0; i < sol->size(); ++i) {
        if ((*sol)[i] == 0) continue;
        delta = K.mul(delta, K.pow(cd.rel_elements[i], (long)(*sol)[i].get_si()));
    }
    Elem gen = K.mul(beta, K.inv(delta));
    if (!(K.principal_ideal(gen) == I))
        throw internal_inconsistency("is_principal: generator verification failed");
    return gen;
}

std::optional<PrimeIdeal> find_prime_representative(const CubicField& K, const ClassData& cd,
                                                    const std::vector<Int>& coords,
                                                    const Int& norm_bound) {
    std::vector<std::pair<Int, PrimeIdeal>> candidates;
    for (Int q = 3; q <= norm_bound; q = next_prime(q)) {
        for (const PrimeIdeal& P : K.factor_prime(q)) {
            if (P.norm() > norm_bound) continue;
            candidates.emplace_back(P.norm(), P);
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [n, P] : candidates) {
        auto c = ideal_class_coords(K, cd, P.ideal);
        if (c == coords) return P;
    }
    return std::nullopt;
}

}  // namespace selmer2
