#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "selmer2/lattice.hpp"
#include "selmer2/order.hpp"
#include "selmer2/padic.hpp"

namespace selmer2 {

// Field element in integral-basis coordinates.
struct Elem {
    std::vector<Rat> v{Rat(0), Rat(0), Rat(0)};
    bool operator==(const Elem& o) const { return v == o.v; }
    bool is_zero() const { return v[0] == 0 && v[1] == 0 && v[2] == 0; }
};

// Fractional ideal as (1/den) times the row lattice of a (3x3 HNF over the
// integral basis). Canonical: den > 0, gcd(den, content(a)) = 1.
struct IdealHNF {
    Mat a;
    Int den = 1;
    bool operator==(const IdealHNF& o) const { return a == o.a && den == o.den; }
    bool operator<(const IdealHNF& o) const {
        if (den != o.den) return den < o.den;
        return a < o.a;
    }
};

struct PrimeIdeal {
    IdealHNF ideal;
    Int p;
    int e = 1, f = 1;
    // for residue-degree-1 primes away from trouble: a Z_p root of F enabling
    // evaluation-based valuations
    std::optional<Int> root;
    int root_precision = 0;
    Int norm() const {
        Int n = 1;
        for (int i = 0; i < f; ++i) n *= p;
        return n;
    }
};

// The cubic field A = Q[T]/(F) with its maximal order.
class CubicField {
  public:
    // Rejects reducible F with an error naming the rational 2-torsion cause.
    explicit CubicField(const IntPoly& F);

    const IntPoly& poly() const { return F_; }
    const Int& disc_poly() const { return discF_; }
    const Int& field_disc() const { return field_disc_; }
    const Int& index() const { return index_; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    const QMat& basis() const { return basis_; }  // rows over the power basis

    // --- element arithmetic (integral-basis coordinates) ---
    Elem zero() const { return Elem{}; }
    Elem one() const;
    Elem theta() const;
    Elem basis_elem(int j) const;
    Elem from_int(const Int& n) const;
    Elem from_power_basis(const std::vector<Rat>& p) const;
    std::vector<Rat> to_power_basis(const Elem& x) const;
    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem neg(const Elem& x) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem mul_scalar(const Elem& x, const Rat& s) const;
    Elem inv(const Elem& x) const;
    Elem pow(const Elem& x, long e) const;  // e may be negative
    Rat norm(const Elem& x) const;
    Rat trace(const Elem& x) const;
    // N(x)/x; lies in the maximal order for integral x
    Elem conj_product(const Elem& x) const;
    bool is_integral(const Elem& x) const;
    // smallest c > 0 with c*x integral
    Int integral_scale(const Elem& x) const;
    // coordinates reduced mod m (x must be integral)
    Elem reduce_coords_mod(const Elem& x, const Int& m) const;

    // --- real embeddings, ordered by ascending root ---
    // signs of x at the r1 real places
    std::vector<int> signature_of(const Elem& x) const;
    std::vector<RatInterval> real_embeddings(const Elem& x, long prec_bits) const;
    // interval enclosure of root i refined to width <= 2^-prec_bits
    RatInterval root_enclosure(int i, long prec_bits) const;
    // rows (sigma_1; ...) of the integral basis: r1 real rows then, if r2 = 1,
    // Re and Im rows of the complex embedding; entry error <= 2^-prec_bits
    QMat embedding_rows(long prec_bits) const;

    // exact positive-definite proxy for the T2 form of a set of elements
    // (rows = coordinates over the integral basis); bound inflation guidance
    // is handled by the caller via embedding precision
    QMat t2_gram(const std::vector<std::vector<Rat>>& rows, long prec_bits) const;

    // --- ideals ---
    IdealHNF unit_ideal() const;
    IdealHNF ideal_from_generators(const std::vector<Elem>& gens) const;
    IdealHNF principal_ideal(const Elem& x) const;
    IdealHNF ideal_mul(const IdealHNF& a, const IdealHNF& b) const;
    IdealHNF ideal_pow(const IdealHNF& a, long e) const;
    IdealHNF ideal_inverse(const IdealHNF& a) const;
    Rat ideal_norm_rat(const IdealHNF& a) const;
    Int ideal_norm(const IdealHNF& a) const;  // integral ideals
    bool ideal_is_integral(const IdealHNF& a) const;
    bool ideal_contains(const IdealHNF& a, const Elem& x) const;
    bool ideal_subset(const IdealHNF& a, const IdealHNF& b) const;  // a ⊆ b
    // basis elements of the ideal (rows as Elems)
    std::vector<Elem> ideal_basis(const IdealHNF& a) const;

    // prime factorization of (p); cached
    const std::vector<PrimeIdeal>& factor_prime(const Int& p) const;
    // v_P(I) by repeated division (general, slower)
    int ideal_valuation(const IdealHNF& I, const PrimeIdeal& P) const;
    // exact valuations of a nonzero element at all primes above p
    std::vector<int> element_valuations_above(const Elem& x, const Int& p) const;

    // --- powers ---
    bool is_square(const Elem& x, Elem* root = nullptr) const;
    // k odd (3, 5, 7)
    bool is_kth_power_odd(const Elem& x, unsigned k, Elem* root = nullptr) const;
    // false = certified not a k-th power (residue test at split primes);
    // true = every sampled residue was a k-th power
    bool kth_power_mod_test(const Elem& x, unsigned k, int trials) const;

  private:
    IntPoly F_;
    Int discF_, field_disc_, index_;
    QMat basis_;   // integral basis over power basis
    QMat basis_inv_;
    Int basis_den_ = 1;          // common denominator of basis_
    Mat basis_num_;              // basis_ * basis_den_
    Int table_[3][3][3];         // w_i * w_j = sum_k table_[i][j][k] w_k
    int r1_ = 0, r2_ = 0;
    mutable std::mutex mu_;
    mutable std::vector<RootInterval> roots_;  // refined on demand
    mutable std::map<Int, std::vector<PrimeIdeal>> prime_cache_;

    IdealHNF make_ideal(Mat rows, const Int& den) const;
    void refine_roots(long prec_bits) const;
};

// stable string key for cache/map use
std::string ideal_key(const IdealHNF& a);

}  // namespace selmer2
