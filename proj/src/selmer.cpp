#include "selmer2/selmer.hpp"

namespace selmer2 {

std::pair<int, Provenance> root_number(const CurveModel& E, std::optional<int> override_value) {
    if (override_value) {
        if (*override_value != 1 && *override_value != -1)
            throw input_error("root number must be +1 or -1");
        return {*override_value, Provenance::user_supplied};
    }
    int sign = -1;  // the real place
    for (auto& [p, e] : factor_integer(E.disc())) {
        LocalReduction lr = tate_algorithm(E, p);
        switch (lr.reduction) {
            case ReductionKind::good:
                break;
            case ReductionKind::split_multiplicative:
                sign = -sign;
                break;
            case ReductionKind::nonsplit_multiplicative:
                break;
            case ReductionKind::additive:
                throw input_error("root number requires override: additive reduction at p = " +
                                  p.get_str());
        }
    }
    return {sign, Provenance::computed};
}

int selmer_rank_exact(int lower, int upper, int eps) {
    if (eps != 1 && eps != -1) throw input_error("root number must be +1 or -1");
    int parity = eps == 1 ? 0 : 1;
    if (lower % 2 == parity) return lower;
    if (upper % 2 == parity) return upper;
    throw internal_inconsistency("no endpoint of the rank interval matches the parity");
}

CurveAnalysis analyze_curve(const CurveModel& E, const AnalyzeOptions& opt) {
    CurveAnalysis out;
    out.E = E;
    out.hypotheses = hypotheses_check(E);
    if (!out.hypotheses.no_rational_two_torsion) return out;
    out.field = std::make_shared<CubicField>(E.F);
    const CubicField& K = *out.field;
    out.class_data = compute_class_data(K, opt.class_options);
    out.dist = distinguished_place(E.F);
    out.cl_star = star_class_group(K, out.class_data, 0);
    out.c_star = c_star_subgroup(K, out.class_data, 0);
    out.c_tilde = c_tilde_subgroup(K, out.class_data, 0);
    // the 2-torsion of Cl_* and the order of C_* are two routes to one number
    if ((int)out.c_star.size() != out.cl_star.presentation.two_rank())
        throw internal_inconsistency("C_* rank disagrees with the 2-rank of Cl_*");
    if (!out.hypotheses.pass) return out;
    SelmerReport& rep = out.selmer;
    rep.lower = out.cl_star.presentation.two_rank();
    rep.upper = rep.lower + 1;  // [K:Q] = 1
    rep.groups_certified = out.class_data.certified;
    rep.units_certified = out.class_data.units.certified;
    try {
        auto [eps, prov] = root_number(E, opt.root_number_override);
        rep.root_number = eps;
        rep.root_number_provenance = prov;
        rep.exact = selmer_rank_exact(rep.lower, rep.upper, eps);
    } catch (const input_error&) {
        // additive prime and no override: interval only
    }
    return out;
}

Elem kummer_element(const CubicField& K, const RatPoint& P) {
    if (P.infinity) return K.one();
    return K.from_power_basis({P.x, Rat(-1), Rat(0)});
}

SquareClass kummer_class(const CubicField& K, const RatPoint& P) {
    if (P.infinity) return make_square_class(K, K.one());
    Elem d = kummer_element(K, P);
    if (d.is_zero() || K.norm(d) == 0)
        throw input_error("kummer_class: x(P) - T is not invertible");
    return make_square_class(K, d);
}

std::vector<RatPoint> point_search(const CurveModel& E, const Int& bound) {
    std::vector<RatPoint> out;
    const Int &c2 = E.F.coeff(2), &c1 = E.F.coeff(1), &c0 = E.F.coeff(0);
    for (Int b = 1; b <= bound; ++b) {
        Int b2 = b * b, b4 = b2 * b2, b6 = b4 * b2;
        for (Int a = -bound; a <= bound; ++a) {
            if (gcd(a, b) != 1) continue;
            Int num = a * a * a + c2 * a * a * b2 + c1 * a * b4 + c0 * b6;
            if (num == 0) continue;  // 2-torsion x; excluded by invertibility
            if (num < 0 || !is_perfect_square(num)) continue;
            RatPoint P;
            P.x = Rat(a, b2);
            P.x.canonicalize();
            P.y = Rat(isqrt_floor(num), b2 * b);
            P.y.canonicalize();
            out.push_back(P);
        }
    }
    return out;
}

int certified_rank(const CubicField& K, const std::vector<SquareClass>& c_tilde,
                   const std::vector<RatPoint>& points) {
    std::vector<Elem> tgens;
    for (auto& s : c_tilde) tgens.push_back(s.representative);
    std::vector<Elem> basis;
    std::vector<Rat> seen_x;
    for (const RatPoint& P : points) {
        if (P.infinity) continue;
        bool dup = false;
        for (auto& x : seen_x)
            if (x == P.x) dup = true;
        if (dup) continue;
        seen_x.push_back(P.x);
        Elem d = kummer_element(K, P);
        // scale to an integral representative of the same class
        Int c = K.integral_scale(d);
        d = K.mul_scalar(d, Rat(c * c));
        if (!in_square_class_span(K, tgens, d))
            throw internal_inconsistency("Kummer class escapes the outer group");
        if (!in_square_class_span(K, basis, d)) basis.push_back(d);
    }
    return (int)basis.size();
}

RatPoint point_add(const CurveModel& E, const RatPoint& P, const RatPoint& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const Int &a2 = E.F.coeff(2), &a1 = E.F.coeff(1);
    Rat lambda;
    if (P.x == Q.x) {
        if (P.y == -Q.y) return RatPoint{Rat(0), Rat(0), true};
        // tangent
        lambda = (3 * P.x * P.x + 2 * Rat(a2) * P.x + Rat(a1)) / (2 * P.y);
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    Rat x3 = lambda * lambda - Rat(a2) - P.x - Q.x;
    Rat y3 = lambda * (P.x - x3) - P.y;
    RatPoint R{x3, y3, false};
    if (eval(E.F, R.x) != R.y * R.y) throw internal_inconsistency("point_add left the curve");
    return R;
}

}  // namespace selmer2
