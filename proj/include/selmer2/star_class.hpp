#pragma once

#include "selmer2/class_group.hpp"

namespace selmer2 {

// Archimedean type of the real place of Q under the cubic: (i) one real
// embedding of A (disc < 0), (ii) three real embeddings (disc > 0).
enum class ArchType { one_real, three_real };

struct DistinguishedData {
    IntPoly curve_cubic;
    int place_index = 0;  // into the ascending-root order of curve_cubic; 0 by construction
    ArchType type = ArchType::one_real;
};

// The distinguished place of the model y^2 = G(x): for disc > 0 the place of
// the smallest real root of G; for disc < 0 the unique real place.
DistinguishedData distinguished_place(const IntPoly& curve_cubic);

// Where the distinguished place of a twist by d sits in the base field's
// ascending-root order: twisting scales roots by d, so d < 0 reverses the
// order and moves it from the first to the last place.
int distinguished_index_in_base(int r1, int sign_of_d);

struct SquareClass {
    Elem representative;
    // odd-valuation primes of the representative: (p, index above p)
    std::vector<std::pair<Int, int>> odd_valuations;
    std::vector<int> signature;
    bool norm_is_square = false;
};

SquareClass make_square_class(const CubicField& K, const Elem& alpha);

struct StarClassGroup {
    AbelianGroupPresentation presentation;
    // verified elements realizing the admissible nontrivial sign class
    std::vector<Elem> sign_kernel_generators;
};

// Cl_*(A, E) presented over the factor base plus sign symbols, with the
// distinguished place at dist_index of the base field's root order.
StarClassGroup star_class_group(const CubicField& K, const ClassData& cd, int dist_index);

// alpha integral and a 2-adic unit: is alpha congruent to a square mod 4 A_O?
// Decided by enumerating the 8 classes of A_O / 2 A_O.
bool is_square_mod_4(const CubicField& K, const Elem& alpha);

// Generators (an F_2-basis) of C_*(E): classes of units and virtual units
// passing the local conditions: even valuations (automatic), positive at the
// distinguished place, totally positive norm, and a square mod 4 A_O.
std::vector<SquareClass> c_star_subgroup(const CubicField& K, const ClassData& cd,
                                         int dist_index);

// Generators of the outer group C~(E): square norm, even valuations, positive
// at the distinguished place only.
std::vector<SquareClass> c_tilde_subgroup(const CubicField& K, const ClassData& cd,
                                          int dist_index);

// is [x] in the F_2-span of the square classes of gens?
bool in_square_class_span(const CubicField& K, const std::vector<Elem>& gens, const Elem& x);

// the even-valuation candidate generators: -1, fundamental units, and one
// virtual unit per 2-torsion basis class of Cl
std::vector<Elem> even_valuation_generators(const CubicField& K, const ClassData& cd);

}  // namespace selmer2
