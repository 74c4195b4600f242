#include "selmer2/twists.hpp"

namespace selmer2 {

CurveModel twist_model(const CurveModel& E, const Int& d) {
    if (d == 0) throw input_error("twist by zero");
    for (auto& [p, e] : factor_integer(d))
        if (e >= 2) throw input_error("twist parameter must be squarefree");
    CurveModel out;
    out.F = compose_scale(E.F, Int(1), d);  // d^3 F(x/d)
    if (!out.F.is_monic()) throw internal_inconsistency("twist model not monic");
    if (!E.label.empty()) out.label = E.label + " twisted by " + d.get_str();
    // disc scaling check: disc(F_d) = d^6 disc(F)
    Int d6 = d * d * d;
    d6 *= d6;
    if (poly_disc(out.F) != d6 * poly_disc(E.F))
        throw internal_inconsistency("twist discriminant scaling violated");
    return out;
}

AdmissibilityReport twist_admissible(const CurveModel& E, const Int& d) {
    AdmissibilityReport rep;
    rep.d = d;
    if (d == 0) throw input_error("twist by zero");
    CubicField K(E.F);
    bool ok = true;
    for (auto& [p, e] : factor_integer(d)) {
        auto& primes = K.factor_prime(p);
        bool good = primes.size() == 1;
        std::string why;
        if (primes.size() == 1 && primes[0].f == 3)
            why = "inert";
        else if (primes.size() == 1 && primes[0].e == 3)
            why = "totally ramified";
        else {
            good = false;
            why = "splits into " + std::to_string(primes.size()) + " primes";
        }
        rep.reasons.emplace_back(p, why);
        ok = ok && good;
    }
    rep.admissible = ok;
    if (ok) {
        // the twisted curve must satisfy the hypotheses; re-verify
        HypothesesReport h = hypotheses_check(twist_model(E, d));
        if (!h.pass)
            throw internal_inconsistency("admissible twist fails the hypotheses at " +
                                         h.failure_reason);
    }
    return rep;
}

Int p_star(const Int& p) {
    if (p == 2 || !is_prime(p)) throw input_error("p_star: odd prime required");
    return mod_reduce(p, Int(4)) == 1 ? p : -p;
}

int relative_root_number(const CurveModel& E, const Int& p) {
    if (p == 2 || E.disc() % p == 0)
        throw input_error("relative_root_number: p must avoid 2 disc(E)");
    Int N = conductor(E);
    return kronecker_symbol(-N, p);
}

std::string to_string(TwistSet s) {
    switch (s) {
        case TwistSet::c_plus_square: return "C(+,sq)";
        case TwistSet::c_plus_nonsquare: return "C(+,nonsq)";
        case TwistSet::c_minus_square: return "C(-,sq)";
        case TwistSet::c_minus_nonsquare: return "C(-,nonsq)";
        case TwistSet::preserving: return "preserving";
        case TwistSet::flipping: return "flipping";
        case TwistSet::not_inert: return "not inert";
    }
    return "?";
}

PrimeClassification classify_prime(const CurveModel& E, const Int& p) {
    if (p == 2) throw input_error("classify_prime: odd primes only");
    if (E.disc() % p == 0) throw input_error("classify_prime: p divides disc(E)");
    PrimeClassification out;
    out.p = p;
    out.roots_mod_p = count_roots_mod_p(E.F, p);
    out.inert = out.roots_mod_p == 0;
    out.p_star = p_star(p);
    if (!out.inert) {
        out.set = TwistSet::not_inert;
        return out;
    }
    out.relative_root_number = relative_root_number(E, p);
    Int disc = E.disc();
    Int N = conductor(E);
    // chi_p of the rational disc(E)/N_E
    int chi = kronecker_symbol(disc, p) * kronecker_symbol(N, p);
    if (disc > 0) {
        bool plus = mod_reduce(p, Int(4)) == 1;
        if (plus)
            out.set = chi == 1 ? TwistSet::c_plus_square : TwistSet::c_plus_nonsquare;
        else
            out.set = chi == 1 ? TwistSet::c_minus_square : TwistSet::c_minus_nonsquare;
    } else {
        int chi_neg = kronecker_symbol(Int(-1), p) * chi;
        out.set = chi_neg == 1 ? TwistSet::preserving : TwistSet::flipping;
    }
    return out;
}

TwistFamilyReport twist_family_report(const CurveModel& E, long X,
                                      std::optional<int> base_root_number, long reverify_cap) {
    if (X < 100) throw input_error("twist scan limit must be at least 100");
    HypothesesReport hyp = hypotheses_check(E);
    if (!hyp.pass)
        throw input_error("twist_family_report: curve fails the hypotheses: " +
                          hyp.failure_reason);
    TwistFamilyReport rep;
    rep.limit = X;
    CubicField K(E.F);
    ClassData cd = compute_class_data(K);
    rep.galois = is_perfect_square(abs(K.field_disc())) && K.field_disc() > 0;
    StarClassGroup star_pos = star_class_group(K, cd, 0);
    rep.lower_pos = star_pos.presentation.two_rank();
    rep.upper_pos = rep.lower_pos + 1;
    if (K.r1() == 3) {
        StarClassGroup star_neg = star_class_group(K, cd, 2);
        rep.lower_neg = star_neg.presentation.two_rank();
    } else {
        rep.lower_neg = rep.lower_pos;
    }
    rep.upper_neg = rep.lower_neg + 1;

    Int discE = E.disc();
    for (long p : primes_up_to(X)) {
        if (p == 2 || discE % p == 0) continue;
        ++rep.primes_scanned;
        PrimeClassification pc = classify_prime(E, Int(p));
        if (pc.roots_mod_p == 0)
            ++rep.inert;
        else if (pc.roots_mod_p == 3)
            ++rep.split;
        else
            ++rep.partial;
        if (!pc.inert) continue;
        rep.set_counts[pc.set]++;
        Int d = pc.p_star;
        int lower = d > 0 ? rep.lower_pos : rep.lower_neg;
        int upper = d > 0 ? rep.upper_pos : rep.upper_neg;
        std::optional<int> exact;
        if (base_root_number)
            exact = selmer_rank_exact(lower, upper, *base_root_number * pc.relative_root_number);
        if (exact) rep.predicted_rank_counts[*exact]++;
        if ((long)rep.examples.size() < 8) {
            TwistExample ex;
            ex.d = d;
            ex.lower = lower;
            ex.upper = upper;
            ex.exact = exact;
            rep.examples.push_back(ex);
        }
        if (rep.hypotheses_reverified < reverify_cap) {
            AdmissibilityReport ar = twist_admissible(E, d);
            if (!ar.admissible)
                throw internal_inconsistency("inert prime twist reported inadmissible");
            ++rep.hypotheses_reverified;
        }
    }
    if (rep.primes_scanned > 0) {
        rep.inert_density = (double)rep.inert / (double)rep.primes_scanned;
        rep.c_plus_square_density =
            (double)rep.set_counts[TwistSet::c_plus_square] / (double)rep.primes_scanned;
    }
    return rep;
}

}  // namespace selmer2
