#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

namespace oracle {

std::vector<IdealHNF> ideals_up_to(const CubicField& K, const Int& bound) {
    // gather prime ideals of norm <= bound, then take bounded products
    std::vector<PrimeIdeal> primes;
    for (long p : primes_up_to((long)bound.get_si()))
        for (auto& P : K.factor_prime(Int(p)))
            if (P.norm() <= bound) primes.push_back(P);
    std::vector<std::pair<IdealHNF, Int>> pool{{K.unit_ideal(), Int(1)}};
    for (auto& P : primes) {
        size_t base = pool.size();
        for (size_t i = 0; i < base; ++i) {
            IdealHNF acc = pool[i].first;
            Int n = pool[i].second;
            while (true) {
                n *= P.norm();
                if (n > bound) break;
                acc = K.ideal_mul(acc, P.ideal);
                pool.emplace_back(acc, n);
            }
        }
    }
    std::vector<IdealHNF> out;
    std::set<std::string> seen;
    for (auto& [I, n] : pool)
        if (seen.insert(ideal_key(I)).second) out.push_back(I);
    return out;
}

namespace {

bool oracle_principal(const CubicField& K, const UnitGroup& units, const IdealHNF& I) {
    return principal_generator_search(K, units, I).has_value();
}

int class_order(const CubicField& K, const UnitGroup& units, const IdealHNF& I, int cap) {
    IdealHNF acc = I;
    for (int k = 1; k <= cap; ++k) {
        if (oracle_principal(K, units, acc)) return k;
        acc = K.ideal_mul(acc, I);
    }
    throw internal_inconsistency("oracle: class order exceeds the group order");
}

void divisor_chains(const Int& h, std::vector<std::vector<Int>>& out) {
    out.clear();
    std::vector<Int> divs = divisors(factor_integer(h));
    std::sort(divs.begin(), divs.end());
    std::vector<Int> cur;
    std::function<void(Int, Int)> rec = [&](Int rest, Int mind) {
        if (rest == 1) {
            out.push_back(cur);
            return;
        }
        if (cur.size() >= 4) return;
        for (const Int& d : divs) {
            if (d < 2 || d < mind) continue;
            if (rest % d != 0) continue;
            cur.push_back(d);
            rec(rest / d, d);
            cur.pop_back();
        }
    };
    rec(h, Int(2));
    std::vector<std::vector<Int>> ok;
    for (auto& c : out) {
        bool good = true;
        for (size_t i = 0; i + 1 < c.size(); ++i)
            if (c[i + 1] % c[i] != 0) good = false;
        if (good) ok.push_back(c);
    }
    out = std::move(ok);
}

}  // namespace

OracleClassGroup class_group_oracle(const CubicField& K, const UnitGroup& units) {
    Int mk = minkowski_bound(K);
    std::vector<IdealHNF> ideals = ideals_up_to(K, mk);
    std::vector<std::vector<IdealHNF>> classes;
    for (auto& I : ideals) {
        bool placed = false;
        for (auto& cls : classes) {
            IdealHNF q = K.ideal_mul(I, K.ideal_inverse(cls.front()));
            q.den = 1;  // numerator lattice is in the same class
            if (oracle_principal(K, units, q)) {
                cls.push_back(I);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({I});
    }
    OracleClassGroup out;
    out.h = (long)classes.size();
    if (out.h == 1) return out;
    std::map<Int, int> order_count;
    for (auto& cls : classes) order_count[Int(class_order(K, units, cls.front(), (int)out.h.get_si()))]++;
    std::vector<std::vector<Int>> chains;
    divisor_chains(out.h, chains);
    std::vector<Int> hdivs = divisors(factor_integer(out.h));
    std::sort(hdivs.begin(), hdivs.end());
    for (auto& chain : chains) {
        bool match = true;
        for (const Int& k : hdivs) {
            Int expect = 1;
            for (const Int& d : chain) expect *= gcd(d, k);
            Int got = 0;
            for (auto& [ord, cnt] : order_count)
                if (k % ord == 0) got += cnt;
            if (expect != got) {
                match = false;
                break;
            }
        }
        if (match) {
            out.divisors = chain;
            std::sort(out.divisors.begin(), out.divisors.end());
            return out;
        }
    }
    throw internal_inconsistency("oracle: no abelian group matches the order statistics");
}

std::vector<Elem> unit_box_search(const CubicField& K, long box) {
    std::vector<Elem> out;
    long long t[3][3][3];
    bool small = true;
    for (int i = 0; i < 3 && small; ++i)
        for (int j = 0; j < 3 && small; ++j) {
            Elem wi = K.zero(), wj = K.zero();
            wi.v[i] = 1;
            wj.v[j] = 1;
            Elem prod = K.mul(wi, wj);
            for (int k = 0; k < 3; ++k) {
                Int c = num(prod.v[k]);
                if (abs(c) > 100000) small = false;
                else t[i][j][k] = (long long)c.get_si();
            }
        }
    auto norm64 = [&](long x, long y, long z) -> long long {
        long long m[3][3];
        long long v[3] = {x, y, z};
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                long long s = 0;
                for (int i = 0; i < 3; ++i) s += v[i] * t[i][j][k];
                m[j][k] = s;
            }
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    bool use64 = small && box <= 300;
    for (long z = 0; z <= box; ++z)
        for (long y = -box; y <= box; ++y)
            for (long x = -box; x <= box; ++x) {
                if (z == 0 && (y < 0 || (y == 0 && x <= 0))) continue;
                bool is_unit;
                if (use64) {
                    long long n = norm64(x, y, z);
                    is_unit = n == 1 || n == -1;
                } else {
                    Elem e;
                    e.v = {Rat(x), Rat(y), Rat(z)};
                    Rat n = K.norm(e);
                    is_unit = den(n) == 1 && abs(num(n)) == 1;
                }
                if (is_unit) {
                    Elem e;
                    e.v = {Rat(x), Rat(y), Rat(z)};
                    if (!(e == K.one()) && !(e == K.neg(K.one()))) out.push_back(e);
                }
            }
    return out;
}

bool box_units_inside(const CubicField& K, const UnitGroup& prod,
                      const std::vector<Elem>& box_units) {
    size_t r = prod.fundamental.size();
    auto logs_of = [&](const Elem& u) {
        auto em = K.real_embeddings(u, 160);
        std::vector<double> l;
        for (auto& iv : em) {
            double m = std::fabs(mpq_get_d(iv.mid().get_mpq_t()));
            l.push_back(std::log(std::max(m, 1e-300)));
        }
        return l;
    };
    std::vector<std::vector<double>> lb;
    for (auto& u : prod.fundamental) lb.push_back(logs_of(u));
    for (const Elem& u : box_units) {
        auto lu = logs_of(u);
        std::vector<long> e(r, 0);
        if (r == 1) {
            double dot = 0, nb = 0;
            for (size_t i = 0; i < lu.size(); ++i) {
                dot += lu[i] * lb[0][i];
                nb += lb[0][i] * lb[0][i];
            }
            e[0] = nb > 1e-18 ? std::lround(dot / nb) : 0;
        } else if (r == 2) {
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
                e[0] = std::lround((b1 * a22 - b2 * a12) / det);
                e[1] = std::lround((a11 * b2 - a12 * b1) / det);
            }
        }
        bool ok = false;
        for (long d0 = -1; d0 <= 1 && !ok; ++d0)
            for (long d1 = (r >= 2 ? -1 : 0); d1 <= (r >= 2 ? 1 : 0) && !ok; ++d1) {
                Elem q = u;
                if (r >= 1 && e[0] + d0 != 0)
                    q = K.mul(q, K.pow(prod.fundamental[0], -(e[0] + d0)));
                if (r >= 2 && e[1] + d1 != 0)
                    q = K.mul(q, K.pow(prod.fundamental[1], -(e[1] + d1)));
                if (q == K.one() || q == K.neg(K.one())) ok = true;
            }
        if (!ok) return false;
    }
    return true;
}

std::vector<IntPoly> fuzz_corpus(size_t count) {
    std::vector<IntPoly> out;
    std::mt19937_64 rng(0xC0FFEE5EEDull);
    while (out.size() < count) {
        long a2 = (long)(rng() % 41) - 20;
        long a1 = (long)(rng() % 41) - 20;
        long a0 = (long)(rng() % 41) - 20;
        IntPoly f{a0, a1, a2, 1};
        if (f.degree() != 3) continue;
        Int d = poly_disc(f);
        if (d == 0) continue;
        if (!rational_roots(f).empty()) continue;
        bool squarefree = true;
        for (auto& [p, e] : factor_integer(d))
            if (e >= 2) squarefree = false;
        if (!squarefree) continue;
        out.push_back(f);
    }
    return out;
}

}  // namespace oracle
