#include "selmer2/report.hpp"

#include <fstream>
#include <sstream>

namespace selmer2 {

namespace {

std::string dagger_case_name(DaggerCase c) {
    switch (c) {
        case DaggerCase::field_ext: return "field_ext";
        case DaggerCase::monogenic_at_p: return "monogenic_at_p";
        case DaggerCase::odd_tamagawa: return "odd_tamagawa";
        case DaggerCase::good_at_two: return "good_at_two";
        case DaggerCase::fail: return "FAIL";
    }
    return "?";
}

Json divisors_json(const std::vector<Int>& divisors) {
    Json a = Json::array();
    for (auto& d : divisors) a.push_back(d.get_str());
    return a;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Json curve_json(const CurveModel& E) {
    Json c;
    c["cubic"] = to_string(E.F);
    c["coefficients"] = {E.F.coeff(2).get_str(), E.F.coeff(1).get_str(), E.F.coeff(0).get_str()};
    c["disc_f"] = E.disc_poly().get_str();
    c["disc"] = E.disc().get_str();
    c["conductor"] = conductor(E).get_str();
    if (!E.label.empty()) c["label"] = E.label;
    return c;
}

Json hypotheses_json(const HypothesesReport& hyp) {
    Json h;
    h["pass"] = hyp.pass;
    h["narrow_class_number_odd"] = hyp.narrow_class_number_odd;
    h["no_rational_two_torsion"] = hyp.no_rational_two_torsion;
    if (!hyp.failure_reason.empty()) h["failure_reason"] = hyp.failure_reason;
    Json local = Json::array();
    for (auto& v : hyp.verdicts) {
        Json e;
        e["p"] = v.p.get_str();
        e["case"] = dagger_case_name(v.result);
        e["witness"] = v.witness;
        local.push_back(e);
    }
    h["local"] = local;
    return h;
}

Json selmer_json_from(const Json& cl_star_divisors, bool groups_certified, bool units_certified,
                      const CurveModel& E, const std::optional<int>& override_value) {
    int lower = 0;
    for (auto& d : cl_star_divisors) {
        Int v(d.get<std::string>());
        if (v % 2 == 0) ++lower;
    }
    Json s;
    s["lower"] = lower;
    s["upper"] = lower + 1;
    s["groups_certified"] = groups_certified;
    s["units_certified"] = units_certified;
    try {
        auto [eps, prov] = root_number(E, override_value);
        s["root_number"] = eps;
        s["root_number_provenance"] =
            prov == Provenance::computed ? "computed" : "user_supplied";
        s["exact"] = selmer_rank_exact(lower, lower + 1, eps);
    } catch (const input_error&) {
        s["root_number"] = nullptr;
        s["exact"] = nullptr;
    }
    return s;
}

}  // namespace

Json group_payload(const CurveAnalysis& an) {
    Json p;
    Json field;
    field["field_disc"] = an.field->field_disc().get_str();
    field["index"] = an.field->index().get_str();
    field["signature"] = {an.field->r1(), an.field->r2()};
    field["minkowski_bound"] = an.class_data.minkowski_bound.get_str();
    p["field"] = field;
    Json g;
    g["cl"] = divisors_json(an.class_data.cl.divisors);
    g["cl_plus"] = divisors_json(an.class_data.cl_plus.divisors);
    g["cl_star"] = divisors_json(an.cl_star.presentation.divisors);
    if (an.field->r1() == 3) {
        StarClassGroup flipped = star_class_group(*an.field, an.class_data, 2);
        g["cl_star_flipped"] = divisors_json(flipped.presentation.divisors);
    } else {
        g["cl_star_flipped"] = g["cl_star"];
    }
    g["c_star_rank"] = (int)an.c_star.size();
    g["c_tilde_rank"] = (int)an.c_tilde.size();
    g["certified"] = an.class_data.certified;
    g["units_certified"] = an.class_data.units.certified;
    Json sigs = Json::array();
    for (auto& s : an.class_data.units.signatures) sigs.push_back(s);
    g["unit_signatures"] = sigs;
    if (!an.class_data.notes.empty()) g["notes"] = an.class_data.notes;
    p["groups"] = g;
    return p;
}

Json analysis_report_from_payload(const CurveModel& E, const HypothesesReport& hyp,
                                  const Json& payload,
                                  const std::optional<int>& root_number_override) {
    Json r;
    r["schema_version"] = kSchemaVersion;
    r["curve"] = curve_json(E);
    r["hypotheses"] = hypotheses_json(hyp);
    r["field"] = payload.at("field");
    r["groups"] = payload.at("groups");
    r["selmer"] = selmer_json_from(payload.at("groups").at("cl_star"),
                                   payload.at("groups").at("certified").get<bool>(),
                                   payload.at("groups").at("units_certified").get<bool>(), E,
                                   root_number_override);
    return r;
}

Json analysis_report(const CurveAnalysis& an) {
    Json r;
    r["schema_version"] = kSchemaVersion;
    r["curve"] = curve_json(an.E);
    r["hypotheses"] = hypotheses_json(an.hypotheses);
    if (!an.field) return r;
    Json payload = group_payload(an);
    r["field"] = payload["field"];
    r["groups"] = payload["groups"];
    std::optional<int> override_value;
    if (an.selmer.root_number && an.selmer.root_number_provenance == Provenance::user_supplied)
        override_value = *an.selmer.root_number;
    r["selmer"] = selmer_json_from(payload["groups"]["cl_star"], an.class_data.certified,
                                   an.class_data.units.certified, an.E, override_value);
    return r;
}

std::string analysis_report_text(const CurveAnalysis& an) {
    std::ostringstream os;
    os << "curve: y^2 = " << to_string(an.E.F);
    if (!an.E.label.empty()) os << "   [" << an.E.label << "]";
    os << "\n";
    os << "disc(F) = " << an.E.disc_poly().get_str() << ", disc(E) = " << an.E.disc().get_str()
       << ", conductor = " << conductor(an.E).get_str() << "\n";
    os << "hypotheses: " << (an.hypotheses.pass ? "PASS" : "FAIL");
    if (!an.hypotheses.pass) os << " (" << an.hypotheses.failure_reason << ")";
    os << "\n";
    for (auto& v : an.hypotheses.verdicts)
        os << "  p = " << v.p.get_str() << ": " << dagger_case_name(v.result) << " — "
           << v.witness << "\n";
    if (!an.field) return os.str();
    os << "field: disc = " << an.field->field_disc().get_str()
       << ", index = " << an.field->index().get_str() << ", signature (" << an.field->r1() << ","
       << an.field->r2() << ")\n";
    auto show = [&](const char* name, const std::vector<Int>& div) {
        os << name << " = ";
        if (div.empty()) {
            os << "trivial";
        } else {
            for (size_t i = 0; i < div.size(); ++i)
                os << (i ? " x " : "") << "Z/" << div[i].get_str();
        }
        os << "\n";
    };
    show("Cl", an.class_data.cl.divisors);
    show("Cl_+", an.class_data.cl_plus.divisors);
    show("Cl_*", an.cl_star.presentation.divisors);
    os << "C_* rank = " << an.c_star.size() << ", C~ rank = " << an.c_tilde.size() << "\n";
    os << "certified: groups " << (an.class_data.certified ? "yes" : "no") << ", units "
       << (an.class_data.units.certified ? "yes" : "no") << "\n";
    if (an.hypotheses.pass) {
        os << "2-Selmer rank in [" << an.selmer.lower << ", " << an.selmer.upper << "]";
        if (an.selmer.exact) {
            os << ", exact = " << *an.selmer.exact << " (root number "
               << (*an.selmer.root_number > 0 ? "+1" : "-1") << ", "
               << (an.selmer.root_number_provenance == Provenance::computed ? "computed"
                                                                            : "user-supplied")
               << ")";
        }
        os << "\n";
    }
    return os.str();
}

Json twist_report_json(const CurveModel& E, const TwistFamilyReport& rep) {
    Json r;
    r["schema_version"] = kSchemaVersion;
    r["curve"] = curve_json(E);
    r["limit"] = rep.limit;
    r["primes_scanned"] = rep.primes_scanned;
    r["inert"] = rep.inert;
    r["split"] = rep.split;
    r["partial"] = rep.partial;
    r["inert_density"] = rep.inert_density;
    r["galois"] = rep.galois;
    Json sets;
    for (auto& [s, c] : rep.set_counts) sets[to_string(s)] = c;
    r["set_counts"] = sets;
    r["c_plus_square_density"] = rep.c_plus_square_density;
    r["interval_positive"] = {rep.lower_pos, rep.upper_pos};
    r["interval_negative"] = {rep.lower_neg, rep.upper_neg};
    Json counts;
    for (auto& [rank, c] : rep.predicted_rank_counts) counts[std::to_string(rank)] = c;
    r["predicted_rank_counts"] = counts;
    Json ex = Json::array();
    for (auto& e : rep.examples) {
        Json j;
        j["d"] = e.d.get_str();
        j["lower"] = e.lower;
        j["upper"] = e.upper;
        if (e.exact)
            j["exact"] = *e.exact;
        else
            j["exact"] = nullptr;
        ex.push_back(j);
    }
    r["examples"] = ex;
    r["hypotheses_reverified"] = rep.hypotheses_reverified;
    return r;
}

std::string twist_report_table(const CurveModel& E, const TwistFamilyReport& rep) {
    std::ostringstream os;
    os << "quadratic twist families of y^2 = " << to_string(E.F) << " up to X = " << rep.limit
       << "\n";
    os << "primes scanned: " << rep.primes_scanned << ", inert " << rep.inert << " ("
       << rep.inert_density << "), partial " << rep.partial << ", split " << rep.split << "\n";
    os << "expected inert density: " << (rep.galois ? "2/3 (Galois cubic)" : "1/3") << "\n";
    os << "intervals: positive twists [" << rep.lower_pos << ", " << rep.upper_pos
       << "], negative twists [" << rep.lower_neg << ", " << rep.upper_neg << "]\n";
    for (auto& [s, c] : rep.set_counts)
        os << "  " << to_string(s) << ": " << c << "\n";
    if (!rep.predicted_rank_counts.empty()) {
        os << "predicted exact ranks below X:";
        for (auto& [rank, c] : rep.predicted_rank_counts) os << "  rank " << rank << ": " << c;
        os << "\n";
    }
    if (!rep.examples.empty()) {
        os << "sample twists:\n";
        for (auto& e : rep.examples) {
            os << "  d = " << e.d.get_str() << ": rank in [" << e.lower << ", " << e.upper << "]";
            if (e.exact) os << ", exact " << *e.exact;
            os << "\n";
        }
    }
    return os.str();
}

CacheFile::CacheFile(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (in) {
        try {
            in >> root_;
        } catch (...) {
            root_ = Json::object();
        }
    }
    if (!root_.is_object() || !root_.contains("schema_version") ||
        root_["schema_version"] != kSchemaVersion) {
        root_ = Json::object();
        root_["schema_version"] = kSchemaVersion;
        root_["entries"] = Json::object();
    }
    if (!root_.contains("entries") || !root_["entries"].is_object())
        root_["entries"] = Json::object();
}

std::string CacheFile::curve_key(const IntPoly& F) {
    return F.coeff(2).get_str() + "," + F.coeff(1).get_str() + "," + F.coeff(0).get_str();
}

const Json* CacheFile::lookup(const IntPoly& F) {
    std::string key = curve_key(F);
    auto& entries = root_["entries"];
    if (!entries.contains(key)) return nullptr;
    Json& e = entries[key];
    if (!e.contains("payload") || !e.contains("checksum")) {
        entries.erase(key);
        return nullptr;
    }
    if (std::to_string(fnv1a(e["payload"].dump())) != e["checksum"].get<std::string>()) {
        entries.erase(key);
        return nullptr;
    }
    // cheap invariants: disc factorization consistency and group divisibility
    try {
        const Json& payload = e["payload"];
        Int fd(payload.at("field").at("field_disc").get<std::string>());
        Int idx(payload.at("field").at("index").get<std::string>());
        if (idx * idx * fd != poly_disc(F)) throw input_error("disc");
        auto order_of = [](const Json& divs) {
            Int o = 1;
            for (auto& d : divs) o *= Int(d.get<std::string>());
            return o;
        };
        Int h = order_of(payload.at("groups").at("cl"));
        Int hp = order_of(payload.at("groups").at("cl_plus"));
        Int hs = order_of(payload.at("groups").at("cl_star"));
        if (hp % h != 0 || hp % hs != 0) throw input_error("divisibility");
        int c_star_rank = payload.at("groups").at("c_star_rank").get<int>();
        int two_rank_star = 0;
        for (auto& d : payload.at("groups").at("cl_star"))
            if (Int(d.get<std::string>()) % 2 == 0) ++two_rank_star;
        if (c_star_rank != two_rank_star) throw input_error("two-rank");
    } catch (...) {
        entries.erase(key);
        return nullptr;
    }
    return &entries[key]["payload"];
}

void CacheFile::store(const IntPoly& F, Json payload) {
    Json e;
    e["checksum"] = std::to_string(fnv1a(payload.dump()));
    e["payload"] = std::move(payload);
    root_["entries"][curve_key(F)] = std::move(e);
}

void CacheFile::save() const {
    std::ofstream out(path_);
    out << root_.dump(2) << "\n";
}

Json analyze_with_cache(const CurveModel& E, const AnalyzeOptions& opt, CacheFile* cache) {
    HypothesesReport hyp = hypotheses_check(E);
    if (!hyp.no_rational_two_torsion) {
        CurveAnalysis an;
        an.E = E;
        an.hypotheses = hyp;
        return analysis_report(an);
    }
    if (cache) {
        if (const Json* payload = cache->lookup(E.F))
            return analysis_report_from_payload(E, hyp, *payload, opt.root_number_override);
    }
    CurveAnalysis an = analyze_curve(E, opt);
    Json payload = group_payload(an);
    if (cache) {
        cache->store(E.F, payload);
        cache->save();
    }
    return analysis_report_from_payload(E, hyp, payload, opt.root_number_override);
}

}  // namespace selmer2
