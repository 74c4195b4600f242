#pragma once

#include "selmer2/lattice.hpp"
#include "selmer2/poly.hpp"

namespace selmer2 {

// Maximal order of Q[T]/(F) for a monic irreducible cubic F, as a basis in
// the power basis 1, theta, theta^2. basis[0] is always (1, 0, 0).
struct OrderData {
    QMat basis;      // 3 rows, entries rational
    Int field_disc;  // disc(F) / index^2
    Int index;       // [O_max : Z[theta]]
};

// Round-2: enlarge Z[theta] at every prime whose square divides disc(F).
OrderData maximal_order(const IntPoly& F);

// v_p(field_disc) without computing the full order at other primes.
int local_disc_exponent(const IntPoly& F, const Int& p);

// Power-basis element product modulo F (monic cubic).
std::vector<Rat> powbasis_mul(const std::vector<Rat>& a, const std::vector<Rat>& b,
                              const IntPoly& F);

}  // namespace selmer2
