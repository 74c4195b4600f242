#pragma once

#include "selmer2/padic.hpp"

namespace selmer2 {

// Integral model y^2 = F(x), F a monic integer cubic.
struct CurveModel {
    IntPoly F;
    std::string label;  // free-form echo text, no semantics

    Int disc_poly() const { return poly_disc(F); }
    Int disc() const { return Int(16) * poly_disc(F); }
};

enum class KodairaType { good, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

std::string kodaira_name(KodairaType t, int n);

enum class ReductionKind { good, split_multiplicative, nonsplit_multiplicative, additive };

struct LocalReduction {
    Int p;
    KodairaType kodaira = KodairaType::good;
    int n = 0;  // subscript for In / In*
    int f_p = 0;
    Int c_p = 1;
    ReductionKind reduction = ReductionKind::good;
    int v_disc_min = 0;  // valuation of the minimal discriminant
    // number of Neron components over F_p-bar, for Ogg bookkeeping
    int components() const;
};

// Tate's algorithm at p for the long Weierstrass model [a1, a2, a3, a4, a6];
// minimality is handled internally.
LocalReduction tate_algorithm_long(const Int& a1, const Int& a2, const Int& a3, const Int& a4,
                                   const Int& a6, const Int& p);
LocalReduction tate_algorithm(const CurveModel& E, const Int& p);

Int conductor(const CurveModel& E);

// The per-prime local hypothesis: one of four sufficient conditions under
// which the local Kummer image consists of integral square classes.
enum class DaggerCase { field_ext, monogenic_at_p, odd_tamagawa, good_at_two, fail };

struct DaggerVerdict {
    Int p;
    DaggerCase result = DaggerCase::fail;
    std::string witness;
};

DaggerVerdict dagger_check(const CurveModel& E, const Int& p);

struct HypothesesReport {
    bool narrow_class_number_odd = true;  // automatic over Q
    bool no_rational_two_torsion = false;
    std::vector<DaggerVerdict> verdicts;
    bool pass = false;
    std::string failure_reason;
};

HypothesesReport hypotheses_check(const CurveModel& E);

// Parity of the valuation of x(P) - theta in each local factor of F over Q_p.
struct DeltaParity {
    IntPoly factor;
    int e = 1, f = 1;
    int parity = 0;  // valuation mod 2
    int valuation = 0;
};

struct DeltaParityReport {
    std::vector<DeltaParity> parities;
    bool integral_square_class = true;  // all parities even
};

DeltaParityReport local_delta_valuation_parity(const CurveModel& E, const Int& p, const Rat& x,
                                               const Rat& y);

}  // namespace selmer2
