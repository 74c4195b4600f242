#pragma once

#include <json.hpp>

#include "selmer2/twists.hpp"

namespace selmer2 {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Full analysis report (the documented JSON schema). Deterministic: nlohmann
// objects are key-sorted and all big integers are serialized as strings.
Json analysis_report(const CurveAnalysis& an);
Json twist_report_json(const CurveModel& E, const TwistFamilyReport& rep);
std::string twist_report_table(const CurveModel& E, const TwistFamilyReport& rep);
std::string analysis_report_text(const CurveAnalysis& an);

// Persistent cache of the expensive field/group data, one versioned JSON file.
class CacheFile {
  public:
    explicit CacheFile(std::string path);
    // payload for the curve or nullptr; verifies checksum and cheap
    // invariants, dropping the entry when they fail
    const Json* lookup(const IntPoly& F);
    void store(const IntPoly& F, Json payload);
    void save() const;
    static std::string curve_key(const IntPoly& F);

  private:
    std::string path_;
    Json root_;
};

// The group/field payload of an analysis (the part worth caching).
Json group_payload(const CurveAnalysis& an);
// Rebuild the report from a cached payload plus the cheap recomputed parts.
Json analysis_report_from_payload(const CurveModel& E, const HypothesesReport& hyp,
                                  const Json& payload,
                                  const std::optional<int>& root_number_override);

// End-to-end analyze with optional cache (byte-identical output either way).
Json analyze_with_cache(const CurveModel& E, const AnalyzeOptions& opt, CacheFile* cache);

}  // namespace selmer2
