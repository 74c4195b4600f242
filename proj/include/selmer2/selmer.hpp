#pragma once

#include <memory>

#include "selmer2/curve_local.hpp"
#include "selmer2/star_class.hpp"

namespace selmer2 {

struct RatPoint {
    Rat x, y;
    bool infinity = false;
};

enum class Provenance { computed, user_supplied };

struct SelmerReport {
    int lower = 0;
    int upper = 0;
    std::optional<int> exact;
    std::optional<int> root_number;
    Provenance root_number_provenance = Provenance::computed;
    bool groups_certified = false;
    bool units_certified = false;
};

// One-stop analysis of a curve model: hypotheses, field, class data, star
// group at the model's own distinguished place, square-class subgroups, and
// the rank interval.
struct CurveAnalysis {
    CurveModel E;
    HypothesesReport hypotheses;
    std::shared_ptr<CubicField> field;  // null when hypotheses fail at 2-torsion
    ClassData class_data;
    DistinguishedData dist;
    StarClassGroup cl_star;
    std::vector<SquareClass> c_star;
    std::vector<SquareClass> c_tilde;
    SelmerReport selmer;
};

struct AnalyzeOptions {
    std::optional<int> root_number_override;
    ClassOptions class_options;
};

CurveAnalysis analyze_curve(const CurveModel& E, const AnalyzeOptions& opt = AnalyzeOptions{});

// Root number: computed as (-1) * prod(local signs) when every bad prime is
// multiplicative (split -> -1, nonsplit -> +1); an additive prime without an
// override is refused.
std::pair<int, Provenance> root_number(const CurveModel& E, std::optional<int> override_value);

// exact = the endpoint of {lower, upper} whose parity matches the sign
int selmer_rank_exact(int lower, int upper, int root_number);

// delta(P) = x(P) - theta; the point at infinity maps to the identity class.
SquareClass kummer_class(const CubicField& K, const RatPoint& P);
Elem kummer_element(const CubicField& K, const RatPoint& P);

// naive search x = a/b^2 with |a|, b <= bound and F(x) a rational square
std::vector<RatPoint> point_search(const CurveModel& E, const Int& bound);

// F_2-rank of the span of the Kummer classes of the points; checks each
// class lies in the span of C~ and throws internal_inconsistency otherwise.
int certified_rank(const CubicField& K, const std::vector<SquareClass>& c_tilde,
                   const std::vector<RatPoint>& points);

// chord-and-tangent sum on y^2 = F(x); exact rational arithmetic
RatPoint point_add(const CurveModel& E, const RatPoint& P, const RatPoint& Q);

}  // namespace selmer2
