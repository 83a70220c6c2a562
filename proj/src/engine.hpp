#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cm.hpp"
#include "families.hpp"
#include "hodge.hpp"
#include "monodromy.hpp"

namespace branchcover {

// Version string carried by every report and scan record.
inline constexpr const char* kEngineVersion = "0.1.0";

// CM analysis outcomes for one Hurwitz class.
//   zero-jacobian   : genus 0, nothing to analyse;
//   criterion-silent: N > 0, the sufficient criterion says nothing;
//   cm-type         : special class on a family path with an explicit type;
//   unsupported     : special class without a closed-form construction.
inline constexpr const char* kCmStatusZeroJacobian = "zero-jacobian";
inline constexpr const char* kCmStatusCriterionSilent = "criterion-silent";
inline constexpr const char* kCmStatusType = "cm-type";
inline constexpr const char* kCmStatusUnsupported = "unsupported";

// One fully analysed Hurwitz class of a family instance.
struct ClassifiedCover {
    std::string class_id; // canonical literal of the representative
    std::string tag;      // family classification tag
    MonodromyDatum representative;
    unsigned long orbit_size = 0;
    std::array<unsigned, 3> local{0, 0, 0}; // in representative order
    unsigned long genus = 0;
    SpecialReport report;
    std::string cm_status;
    std::optional<CMType> cm_type; // present exactly when cm_status is cm-type
    bool cm_verified = false;      // matrix check outcome for cm_type
};

// Analyses every Hurwitz class of the instance: multiplicities, specialness,
// classification tag, and -- where a closed-form path exists -- the CM type
// together with its matrix verification.
std::vector<ClassifiedCover> classify_instance(const FamilyInstance& fam);

// Analysis of a single datum (need not be a class representative); the datum
// is first canonicalized to its class representative.
ClassifiedCover classify_datum(const FamilyInstance& fam,
                               const MonodromyDatum& datum);

// Reports.  JSON output is deterministic: ordered keys, integers only.
nlohmann::ordered_json group_info_json(const FamilyInstance& fam);
nlohmann::ordered_json classify_json(const FamilyInstance& fam,
                                     const std::vector<ClassifiedCover>& covers);
nlohmann::ordered_json cm_report_json(const FamilyInstance& fam,
                                      const ClassifiedCover& cover);
nlohmann::ordered_json cm_reports_json(const FamilyInstance& fam,
                                       const std::vector<ClassifiedCover>& covers);

// Batch scan over a parameter range, appending one JSONL record per
// (instance, Hurwitz class) to the store at store_path.  Existing records are
// never rewritten; a (spec, class) key already present is skipped, so
// re-running a scan is idempotent.  family is "metacyclic" (odd primes
// q <= q_max, acting orders 2 <= n <= n_max with n | q-1) or "dicyclic"
// (odd primes q <= q_max; n_max ignored).
struct ScanOutcome {
    unsigned long instances = 0;
    unsigned long records_total = 0; // records in range, old and new
    unsigned long records_new = 0;
    unsigned long special_count = 0;
    std::map<std::string, unsigned long> by_conductor; // "7" or "4,12" -> count
};

ScanOutcome run_scan(const std::string& family, unsigned long q_max,
                     unsigned long n_max, const std::string& store_path);

nlohmann::ordered_json scan_summary_json(const ScanOutcome& outcome);

} // namespace branchcover
