#include "selmer2/ints.hpp"

#include <algorithm>

namespace selmer2 {

namespace {

// n odd, n > 3. Returns true if n passes a Miller-Rabin round with base a.
bool mr_round(const Int& n, const Int& a) {
    Int nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    Int d = nm1 >> s;
    Int x = powmod(a % n, d, n);
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

const long kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// One Pollard-rho (Brent) attempt; returns a nontrivial factor of composite n
// or 0 on a failed cycle (caller retries with a different increment).
Int pollard_rho(const Int& n, unsigned long c) {
    Int x = 2, y = 2, d = 1;
    Int diff, prod = 1;
    int batch = 0;
    while (d == 1) {
        x = (x * x + c) % n;
        y = (y * y + c) % n;
        y = (y * y + c) % n;
        diff = x > y ? x - y : y - x;
        if (diff == 0) return 0;
        prod = prod * diff % n;
        if (++batch == 64) {
            d = gcd(prod, n);
            prod = 1;
            batch = 0;
        }
    }
    if (d == n) return 0;
    return d;
}

void factor_rec(const Int& n, Factorization& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    for (unsigned long c = 1;; ++c) {
        if (c > 64) throw internal_inconsistency("pollard rho failed to split composite");
        Int d = pollard_rho(n, c);
        if (d != 0) {
            factor_rec(d, out);
            factor_rec(n / d, out);
            return;
        }
    }
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (long p : kMrBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    for (long p : kMrBases)
        if (!mr_round(n, Int(p))) return false;
    return true;
}

Factorization factor_integer(const Int& n) {
    if (n == 0) throw input_error("factor_integer: n must be nonzero");
    Int m = abs(n);
    if (mpz_sizeinbase(m.get_mpz_t(), 10) > 64)
        throw factorization_too_large("factorization too large: exceeds 64-digit guard");
    Factorization out;
    if (m == 1) return out;
    // trial division first; rho on the remaining cofactor
    for (long p : primes_up_to(10000)) {
        if (m % p == 0) {
            int e = 0;
            do {
                m /= p;
                ++e;
            } while (m % p == 0);
            out.emplace_back(Int(p), e);
        }
        if (m == 1) break;
        if (Int(p) * p > m) break;
    }
    if (m > 1) {
        if (is_prime(m)) {
            out.emplace_back(m, 1);
        } else {
            Factorization rest;
            factor_rec(m, rest);
            std::sort(rest.begin(), rest.end());
            for (size_t i = 0; i < rest.size();) {
                size_t j = i;
                int e = 0;
                while (j < rest.size() && rest[j].first == rest[i].first) e += rest[j++].second;
                out.emplace_back(rest[i].first, e);
                i = j;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int factorization_product(const Factorization& f) {
    Int r = 1;
    for (auto& [p, e] : f)
        for (int i = 0; i < e; ++i) r *= p;
    return r;
}

std::vector<Int> divisors(const Factorization& f) {
    std::vector<Int> out{Int(1)};
    for (auto& [p, e] : f) {
        size_t base = out.size();
        Int pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    return out;
}

int kronecker_symbol(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

unsigned valuation(const Int& n, const Int& p) {
    if (n == 0) throw input_error("valuation of zero");
    Int m = n;
    unsigned v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

long valuation(const Rat& q, const Int& p) {
    if (q == 0) throw input_error("valuation of zero");
    return (long)valuation(num(q), p) - (long)valuation(den(q), p);
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int isqrt_floor(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Int isqrt_ceil(const Int& n) {
    Int r = isqrt_floor(n);
    if (r * r < n) ++r;
    return r;
}

Int iroot_floor(const Int& n, unsigned k) {
    Int r, m = abs(n);
    mpz_root(r.get_mpz_t(), m.get_mpz_t(), k);
    return r;
}

Int powmod(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

Int invmod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw input_error("invmod: not invertible");
    return r;
}

Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int rat_round(const Rat& q) { return rat_floor(q + Rat(1, 2)); }

Int mod_reduce(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool is_rational_square(const Rat& q) {
    if (q < 0) return false;
    return is_perfect_square(num(q)) && is_perfect_square(den(q));
}

Int next_prime(const Int& n) {
    Int m = n + 1;
    if (m <= 2) return 2;
    if (m % 2 == 0) ++m;
    while (!is_prime(m)) m += 2;
    return m;
}

std::vector<long> primes_up_to(long limit) {
    std::vector<long> out;
    if (limit < 2) return out;
    std::vector<bool> sieve(limit + 1, true);
    for (long i = 2; i <= limit; ++i) {
        if (sieve[i]) {
            out.push_back(i);
            for (long j = 2 * i; j <= limit; j += i) sieve[j] = false;
        }
    }
    return out;
}

long ceil_log2_abs(const Rat& x) {
    if (x == 0) return 0;
    Int n = abs(num(x)), d = den(x);
    // smallest k with n <= 2^k d; the bit-length estimate is within 1
    long k = (long)mpz_sizeinbase(n.get_mpz_t(), 2) - (long)mpz_sizeinbase(d.get_mpz_t(), 2) + 1;
    auto holds = [&](long kk) {
        return kk >= 0 ? n <= (d << kk) : (n << (-kk)) <= d;
    };
    while (!holds(k)) ++k;
    while (holds(k - 1)) --k;
    return k;
}

}  // namespace selmer2
