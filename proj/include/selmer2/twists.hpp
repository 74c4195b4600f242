#pragma once

#include <map>

#include "selmer2/selmer.hpp"

namespace selmer2 {

// y^2 = d^3 F(x/d), the twist of y^2 = F(x) by Q(sqrt(d))
CurveModel twist_model(const CurveModel& E, const Int& d);

struct AdmissibilityReport {
    Int d = 0;
    bool admissible = false;
    // per prime divisor of d: what its splitting in A is
    std::vector<std::pair<Int, std::string>> reasons;
};

// all p | d must be inert or totally ramified in A; on success the twisted
// curve is re-verified to satisfy the hypotheses
AdmissibilityReport twist_admissible(const CurveModel& E, const Int& d);

// (-1/p) p: the discriminant of the quadratic field ramified exactly at p
Int p_star(const Int& p);

// chi_p(-N_E) = eps(E) eps(E_{p*}) for p not dividing 2 disc(E)
int relative_root_number(const CurveModel& E, const Int& p);

enum class TwistSet {
    c_plus_square,     // p = 1 mod 4, disc(E)/N square mod p
    c_plus_nonsquare,  // p = 1 mod 4, nonsquare
    c_minus_square,    // p = 3 mod 4, square
    c_minus_nonsquare, // p = 3 mod 4, nonsquare
    preserving,        // disc(E) < 0 case: -disc(E)/N square mod p
    flipping,          // disc(E) < 0 case: nonsquare
    not_inert
};

std::string to_string(TwistSet s);

struct PrimeClassification {
    Int p;
    int roots_mod_p = 0;  // 0 = inert, 1 = partial split, 3 = split
    bool inert = false;
    Int p_star = 0;
    TwistSet set = TwistSet::not_inert;
    int relative_root_number = 0;
};

PrimeClassification classify_prime(const CurveModel& E, const Int& p);

struct TwistExample {
    Int d;
    int lower = 0, upper = 0;
    std::optional<int> exact;
};

struct TwistFamilyReport {
    long limit = 0;
    long primes_scanned = 0;
    long inert = 0, split = 0, partial = 0;
    std::map<TwistSet, long> set_counts;
    double inert_density = 0;
    double c_plus_square_density = 0;
    bool galois = false;  // disc(A) a square: inert density 2/3 instead of 1/3
    int lower_pos = 0, upper_pos = 0;  // interval for positive prime twists
    int lower_neg = 0, upper_neg = 0;  // and for negative ones
    std::map<int, long> predicted_rank_counts;  // N_r when the base sign is known
    std::vector<TwistExample> examples;
    long hypotheses_reverified = 0;  // admissible twists re-checked end to end
};

// Enumerates odd primes p <= X away from disc(E), classifies them, and
// predicts the twisted rank interval (and the exact rank when the base root
// number is supplied).
TwistFamilyReport twist_family_report(const CurveModel& E, long X,
                                      std::optional<int> base_root_number,
                                      long reverify_cap = 64);

}  // namespace selmer2
