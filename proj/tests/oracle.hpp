#pragma once

// Brute-force oracles for class groups and units, independent of the
// production relation-matrix machinery: ideals are enumerated to the
// Minkowski bound, equivalence is decided by rigorous generator search, and
// the group structure is reconstructed from element orders.

#include "selmer2/class_group.hpp"

namespace oracle {

using namespace selmer2;

// every integral ideal of norm <= bound
std::vector<IdealHNF> ideals_up_to(const CubicField& K, const Int& bound);

struct OracleClassGroup {
    Int h = 1;
    std::vector<Int> divisors;  // elementary divisors > 1, ascending
};

OracleClassGroup class_group_oracle(const CubicField& K, const UnitGroup& units);

// all units with integral-basis coordinates in [-box, box]^3, up to sign
std::vector<Elem> unit_box_search(const CubicField& K, long box);

// every box unit must reduce into the production unit group (exact checks)
bool box_units_inside(const CubicField& K, const UnitGroup& prod,
                      const std::vector<Elem>& box_units);

// the shared fuzz corpus: monic irreducible cubics, |coefficients| <= 20,
// squarefree discriminant; deterministic
std::vector<IntPoly> fuzz_corpus(size_t count);

}  // namespace oracle
