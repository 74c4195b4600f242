// selmer2: 2-Selmer rank intervals for y^2 = F(x) from the 2-torsion of a
// modified narrow class group of the cubic field Q[T]/(F), plus quadratic
// twist family classification and point-search certification.

#include <CLI11.hpp>
#include <iostream>

#include "selmer2/report.hpp"

using namespace selmer2;

namespace {

std::optional<int> parse_sign(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "1" || s == "+1") return 1;
    if (s == "-1") return -1;
    throw input_error("root number must be +1 or -1");
}

int cmd_analyze(const std::string& cubic, const std::string& rn, bool json_out,
                const std::string& cache_path, const std::string& label) {
    CurveModel E{parse_cubic(cubic), label};
    AnalyzeOptions opt;
    opt.root_number_override = parse_sign(rn);
    std::unique_ptr<CacheFile> cache;
    if (!cache_path.empty()) cache = std::make_unique<CacheFile>(cache_path);
    Json rep = analyze_with_cache(E, opt, cache.get());
    if (json_out) {
        std::cout << rep.dump(2) << "\n";
    } else {
        CurveAnalysis an = analyze_curve(E, opt);
        std::cout << analysis_report_text(an);
    }
    bool pass = rep["hypotheses"]["pass"].get<bool>();
    return pass ? 0 : 2;
}

int cmd_twists(const std::string& cubic, long limit, const std::string& rn, bool json_out,
               const std::string& label) {
    CurveModel E{parse_cubic(cubic), label};
    if (limit < 100) throw input_error("--limit must be at least 100");
    TwistFamilyReport rep = twist_family_report(E, limit, parse_sign(rn));
    if (json_out)
        std::cout << twist_report_json(E, rep).dump(2) << "\n";
    else
        std::cout << twist_report_table(E, rep);
    return 0;
}

int cmd_certify(const std::string& cubic, long height, bool json_out, const std::string& rn,
                const std::string& label) {
    CurveModel E{parse_cubic(cubic), label};
    AnalyzeOptions opt;
    opt.root_number_override = parse_sign(rn);
    CurveAnalysis an = analyze_curve(E, opt);
    if (!an.hypotheses.pass) {
        std::cout << analysis_report_text(an);
        return 2;
    }
    auto pts = point_search(E, Int(height));
    int rank = certified_rank(*an.field, an.c_tilde, pts);
    if (json_out) {
        Json r;
        r["schema_version"] = kSchemaVersion;
        r["curve"]["cubic"] = to_string(E.F);
        r["height_bound"] = height;
        r["points_found"] = (long)pts.size();
        Json arr = Json::array();
        for (size_t i = 0; i < pts.size() && i < 16; ++i) {
            arr.push_back({{"x", pts[i].x.get_str()}, {"y", pts[i].y.get_str()}});
        }
        r["points"] = arr;
        r["certified_points_rank"] = rank;
        r["all_classes_in_outer_group"] = true;  // certified_rank throws otherwise
        r["selmer_lower"] = an.selmer.lower;
        r["selmer_upper"] = an.selmer.upper;
        std::cout << r.dump(2) << "\n";
    } else {
        std::cout << "points with height <= " << height << ": " << pts.size() << "\n";
        for (size_t i = 0; i < pts.size() && i < 16; ++i)
            std::cout << "  (" << pts[i].x << ", " << pts[i].y << ")\n";
        std::cout << "certified rank from points: " << rank << " (Selmer interval ["
                  << an.selmer.lower << ", " << an.selmer.upper << "])\n";
        std::cout << "every point class lies in the outer square-class group\n";
    }
    if (rank > an.selmer.upper) return 1;
    return 0;
}

struct SelfTest {
    int failures = 0;
    void check(bool ok, const std::string& what) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << what << "\n";
        if (!ok) ++failures;
    }
};

int cmd_selftest() {
    SelfTest t;
    {
        CurveModel E{IntPoly{169, -54, -1, 1}, "106276.a1"};
        t.check(poly_disc(E.F) == 26569, "disc(x^3-x^2-54x+169) = 163^2");
        t.check(conductor(E) == 106276, "conductor 106276");
        AnalyzeOptions opt;
        opt.root_number_override = -1;
        CurveAnalysis an = analyze_curve(E, opt);
        t.check(an.hypotheses.pass, "hypotheses pass");
        t.check(an.field->field_disc() == 26569, "field disc 26569");
        std::vector<Int> z22{Int(2), Int(2)};
        t.check(an.class_data.cl.divisors == z22, "Cl = Z/2 x Z/2");
        t.check(an.class_data.cl_plus.divisors == z22, "Cl_+ = Cl");
        t.check(an.selmer.lower == 2 && an.selmer.upper == 3, "Selmer interval [2,3]");
        t.check(an.selmer.exact && *an.selmer.exact == 3, "exact rank 3 at eps = -1");
        CurveModel Em3 = twist_model(E, Int(-3));
        AnalyzeOptions o2;
        o2.root_number_override = 1;
        CurveAnalysis tw = analyze_curve(Em3, o2);
        t.check(tw.selmer.exact && *tw.selmer.exact == 2, "twist by -3 has exact rank 2");
    }
    {
        CurveModel E{IntPoly{3, -7, 0, 1}, "9032.a1"};
        t.check(conductor(E) == 9032, "conductor 9032");
        CurveAnalysis an = analyze_curve(E);
        t.check(an.field->field_disc() == 1129, "field disc 1129");
        t.check(an.class_data.cl.order == 1, "Cl trivial");
        t.check(an.class_data.cl_plus.order == 2, "Cl_+ of order 2");
        t.check(an.cl_star.presentation.order == 2, "Cl_* of order 2");
        t.check(an.selmer.lower == 1 && an.selmer.upper == 2, "interval [1,2]");
        CurveAnalysis neg = analyze_curve(twist_model(E, Int(-1)));
        t.check(neg.cl_star.presentation.order == 1, "Cl_* of the -1 twist is trivial");
        t.check(neg.selmer.lower == 0 && neg.selmer.upper == 1, "negative interval [0,1]");
        t.check(an.c_star.size() == 1 &&
                    an.c_star[0].signature == std::vector<int>{1, -1, -1},
                "C_* generator signs (+,-,-)");
        // paper twist ranks with base root number +1
        struct Case {
            long p;
            int rank;
        } cases[] = {{5, 1}, {113, 2}, {43, 0}, {7, 1}};
        bool all = true;
        for (auto [p, rank] : cases) {
            PrimeClassification pc = classify_prime(E, Int(p));
            int lower = pc.p_star > 0 ? 1 : 0;
            all = all && pc.inert &&
                  selmer_rank_exact(lower, lower + 1, pc.relative_root_number) == rank;
        }
        t.check(all, "paper twist ranks for d = 5, 113, -43, -7");
    }
    std::cout << (t.failures == 0 ? "selftest PASS" : "selftest FAIL") << "\n";
    return t.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-Selmer rank intervals from cubic narrow class groups"};
    app.require_subcommand(1);

    std::string cubic, rn, cache_path, label;
    bool json_out = false;
    long limit = 0, height = 0;

    auto* an = app.add_subcommand("analyze", "rank interval and group data for y^2 = F(x)");
    an->add_option("cubic", cubic, "monic integer cubic, e.g. \"x^3 - 7*x + 3\" or [a2,a1,a0]")
        ->required();
    an->add_option("--root-number", rn, "functional equation sign override (+1 or -1)");
    an->add_flag("--json", json_out, "emit the JSON report");
    an->add_option("--cache", cache_path, "path of the persistent group-data cache");
    an->add_option("--label", label, "free-form label echoed in reports");

    auto* tw = app.add_subcommand("twists", "classify prime quadratic twists up to a bound");
    tw->add_option("cubic", cubic)->required();
    tw->add_option("--limit", limit, "scan primes up to this bound (>= 100)")->required();
    tw->add_option("--root-number", rn, "base curve root number (+1 or -1)");
    tw->add_flag("--json", json_out);
    tw->add_option("--label", label);

    auto* ce = app.add_subcommand("certify", "search points and certify a rank lower bound");
    ce->add_option("cubic", cubic)->required();
    ce->add_option("--height", height, "numerator/denominator bound for x = a/b^2")->required();
    ce->add_option("--root-number", rn);
    ce->add_flag("--json", json_out);
    ce->add_option("--label", label);

    app.add_subcommand("selftest", "run the built-in fixture checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (an->parsed()) return cmd_analyze(cubic, rn, json_out, cache_path, label);
        if (tw->parsed()) return cmd_twists(cubic, limit, rn, json_out, label);
        if (ce->parsed()) return cmd_certify(cubic, height, json_out, rn, label);
        return cmd_selftest();
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
