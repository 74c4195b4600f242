#pragma once

#include "selmer2/poly.hpp"

namespace selmer2 {

// Polynomials over F_p: coefficients in [0, p), no leading zeros.
using ModPoly = std::vector<Int>;

ModPoly reduce_mod(const IntPoly& f, const Int& p);
void modp_normalize(ModPoly& f);
int modp_degree(const ModPoly& f);
ModPoly modp_mul(const ModPoly& a, const ModPoly& b, const Int& p);
// remainder of a modulo b (b nonzero)
ModPoly modp_rem(ModPoly a, const ModPoly& b, const Int& p);
ModPoly modp_monic(ModPoly f, const Int& p);
ModPoly modp_gcd(ModPoly a, ModPoly b, const Int& p);
// x^e mod (f, p)
ModPoly modp_pow_x(const Int& e, const ModPoly& f, const Int& p);
// number of distinct roots of f in F_p
int count_roots_mod_p(const IntPoly& f, const Int& p);
// distinct roots of f in F_p (deterministic for p = 2; randomized split else,
// seeded deterministically)
std::vector<Int> roots_mod_p(const IntPoly& f, const Int& p);
bool irreducible_cubic_mod_p(const IntPoly& f, const Int& p);
// square root mod an odd prime; nullopt for non-residues
std::optional<Int> sqrt_mod_p(const Int& a, const Int& p);
// does a*x^2 + b*x + c have a root mod p (a may be 0)
bool quadratic_has_root_mod_p(const Int& a, const Int& b, const Int& c, const Int& p);

}  // namespace selmer2
