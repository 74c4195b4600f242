#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace selmer2 {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy. Hard failures are exceptions; "soft" uncertainty (units not
// certified fundamental, class group not certified complete) travels as flags
// in the result structs instead.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct factorization_too_large : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct budget_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_inconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// prime -> exponent, sorted by prime
using Factorization = std::vector<std::pair<Int, int>>;

// Deterministic Miller-Rabin, valid for |n| < 3.317e24 (13 prime bases).
bool is_prime(const Int& n);

// Complete factorization of n != 0 (sign dropped). Trial division + Pollard
// rho; inputs with |n| >= 10^64 are refused loudly.
Factorization factor_integer(const Int& n);

Int factorization_product(const Factorization& f);

// Divisors of |n| from its factorization (unsorted count <= guard).
std::vector<Int> divisors(const Factorization& f);

// Kronecker symbol (a|n), standard extension of Jacobi/Legendre.
int kronecker_symbol(const Int& a, const Int& n);

// v_p(n) for n != 0.
unsigned valuation(const Int& n, const Int& p);
// v_p of a rational (may be negative); q != 0.
long valuation(const Rat& q, const Int& p);

bool is_perfect_square(const Int& n);
// floor(sqrt(n)), n >= 0
Int isqrt_floor(const Int& n);
// ceil(sqrt(n)), n >= 0
Int isqrt_ceil(const Int& n);
// floor(|n|^(1/k))
Int iroot_floor(const Int& n, unsigned k);

Int powmod(const Int& base, const Int& exp, const Int& mod);
// inverse of a mod m (m > 1, gcd(a,m)=1)
Int invmod(const Int& a, const Int& m);

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}
inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}
inline Int abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}
inline Rat abs(const Rat& a) {
    Rat r;
    mpq_abs(r.get_mpq_t(), a.get_mpq_t());
    return r;
}
inline int sign(const Int& a) { return mpz_sgn(a.get_mpz_t()); }
inline int sign(const Rat& a) { return mpq_sgn(a.get_mpq_t()); }

inline Int num(const Rat& q) { return Int(q.get_num()); }
inline Int den(const Rat& q) { return Int(q.get_den()); }

// floor / ceil of a rational as integers
Int rat_floor(const Rat& q);
Int rat_ceil(const Rat& q);
// nearest integer (ties toward +infinity)
Int rat_round(const Rat& q);

// q mod m for integral q (0 <= r < m)
Int mod_reduce(const Int& a, const Int& m);

// rational is a square of a rational?
bool is_rational_square(const Rat& q);

// Smallest prime > n.
Int next_prime(const Int& n);

// Odd primes p <= limit (limit smallish; simple sieve).
std::vector<long> primes_up_to(long limit);

// Number of bits needed: smallest k with |x| <= 2^k (x != 0 -> >= 0; x == 0 -> 0).
long ceil_log2_abs(const Rat& x);

}  // namespace selmer2
