#pragma once

#include "selmer2/cubic_field.hpp"

namespace selmer2 {

struct UnitGroup {
    // rank r1 + r2 - 1 generators; torsion is always {+-1}
    std::vector<Elem> fundamental;
    std::vector<std::vector<int>> signatures;  // per generator, r1 signs
    bool certified = false;
    double regulator = 0.0;
};

// Finitely generated abelian group presented by generators and a relation
// matrix; for narrow/ray variants the trailing `sign_symbols` generators are
// the formal classes of the real places.
struct AbelianGroupPresentation {
    std::vector<IdealHNF> generators;
    int sign_symbols = 0;
    Mat relations;
    std::vector<Int> snf_diag;  // full diagonal after SNF, one per generator
    Mat snf_v;                  // column transform: class(w) = w * v mod diag
    Mat snf_v_inv;
    std::vector<Int> divisors;  // elementary divisors > 1
    Int order = 1;
    bool certified = false;

    int two_rank() const;
    std::vector<Int> class_coords(const std::vector<Int>& exponents) const;
    bool coords_trivial(const std::vector<Int>& coords) const;
};

int two_rank(const AbelianGroupPresentation& g);

struct ClassOptions {
    int max_rounds = 6;
    long initial_effort = 40;       // per-prime candidate count
    Int certify_disc_bound = Int(300000);
    int certify_class_bound = 64;
    bool certify = true;
};

struct ClassData {
    Int minkowski_bound = 0;
    std::vector<PrimeIdeal> factor_base;
    std::vector<Elem> rel_elements;
    Mat rel_vectors;
    std::vector<std::vector<int>> rel_signs;
    UnitGroup units;
    AbelianGroupPresentation cl;
    AbelianGroupPresentation cl_plus;
    bool certified = false;
    std::string notes;
};

Int minkowski_bound(const CubicField& K);

// Present Z^(gens + sign_symbols) / rowspan(rel) via Smith normal form.
AbelianGroupPresentation presentation_from_relations(const std::vector<IdealHNF>& gens,
                                                     int sign_symbols, const Mat& rel);

// Full class/unit computation: factor base to the Minkowski bound, relation
// search by short-vector enumeration, SNF, unit extraction with saturation at
// 2,3,5,7, a box cross-check, an Euler-product sanity check, and (inside the
// guards) certification of the class count by rigorous non-principality.
ClassData compute_class_data(const CubicField& K, const ClassOptions& opt = ClassOptions{});

// Discrete log of [I] in cl: coordinates over the SNF components.
std::vector<Int> ideal_class_coords(const CubicField& K, const ClassData& cd,
                                    const IdealHNF& I);

// Production principality: negative answers via discrete log, generators via
// the relation witnesses, exact verification of the output.
std::optional<Elem> is_principal(const CubicField& K, const ClassData& cd, const IdealHNF& I);

// Rigorous search-based principality: enumerates the ideal lattice inside a
// unit-zonotope ball; independent of the relation machinery.
std::optional<Elem> principal_generator_search(const CubicField& K, const UnitGroup& units,
                                               const IdealHNF& I);

// Smallest odd-norm prime ideal in the class with the given coordinates;
// norms are scanned in increasing order up to the bound.
std::optional<PrimeIdeal> find_prime_representative(const CubicField& K, const ClassData& cd,
                                                    const std::vector<Int>& coords,
                                                    const Int& norm_bound);

// Enumerate elements x of the ideal with T2(x) <= bound (approximately; the
// bound is inflated by 1/16 + 1 to absorb embedding rounding).
void enumerate_ideal_elements(const CubicField& K, const IdealHNF& I, const Rat& bound,
                              const std::function<bool(const Elem&)>& cb);

}  // namespace selmer2
