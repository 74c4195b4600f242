#pragma once

#include "selmer2/modp.hpp"

namespace selmer2 {

// Factorization type of a cubic over Q_p.
enum class LocalShape {
    inert,                 // irreducible, unramified (f = 3)
    totally_ramified,      // irreducible, e = 3
    three_linear,          // split: three roots in Q_p
    linear_quad_unram,     // linear x unramified quadratic
    linear_quad_ram,       // linear x ramified quadratic
};

std::string to_string(LocalShape s);

struct LocalFactor {
    IntPoly factor;           // monic factor with coefficients mod p^k
    int e = 1, f = 1;         // ramification / residue degree of its field
    std::optional<Int> root;  // for linear factors: the Z_p root mod p^k
};

struct CubicLocalFactorization {
    LocalShape shape;
    std::vector<LocalFactor> factors;  // linear factors first
    Int p;
    int precision;  // factors are correct mod p^precision
};

// Roots of F in Z_p, each returned as its residue mod p^k (exactly one entry
// per Z_p-root). Throws precision_error when k does not separate/certify.
std::vector<Int> zp_roots(const IntPoly& F, const Int& p, int k);

// Factorization shape of a monic cubic over Q_p with Hensel-lifted factors
// mod p^k. For p | disc(F) the shape is decided via the local discriminant
// exponent and Z_p root finding.
CubicLocalFactorization cubic_factorization_mod_p(const IntPoly& F, const Int& p, int k);

// Same, with the spec'd starting precision v_p(disc F) + 5 and doubling.
CubicLocalFactorization cubic_factorization_auto(const IntPoly& F, const Int& p);

}  // namespace selmer2
