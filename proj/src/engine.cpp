#include "engine.hpp"

#include <ctime>
#include <fstream>
#include <set>
#include <utility>

#include "errors.hpp"
#include "numtheory.hpp"

namespace branchcover {

namespace {

const char* family_name(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::metacyclic: return "metacyclic";
    case FamilyKind::dicyclic: return "dicyclic";
    case FamilyKind::quaternion8: return "quaternion8";
    case FamilyKind::cyclic: return "cyclic";
    }
    ensure(false, "unreachable family kind");
    return "";
}

nlohmann::ordered_json parameters_json(const FamilySpec& spec) {
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    switch (spec.kind) {
    case FamilyKind::metacyclic:
        p["q"] = spec.q;
        p["n"] = spec.n;
        p["k"] = spec.k;
        break;
    case FamilyKind::dicyclic:
        p["q"] = spec.q;
        break;
    case FamilyKind::quaternion8:
        break;
    case FamilyKind::cyclic:
        p["n"] = spec.n;
        break;
    }
    return p;
}

std::string conductor_key(const CMType& type) {
    std::string out;
    for (size_t i = 0; i < type.conductors.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(type.conductors[i]);
    }
    return out;
}

ClassifiedCover analyse(const FamilyInstance& fam,
                        const MultiplicityEvaluator& evaluator,
                        const MonodromyDatum& representative,
                        unsigned long orbit_size) {
    ClassifiedCover out;
    out.representative = representative;
    out.class_id = datum_literal(representative);
    out.tag = classification_tag(fam.spec, representative);
    out.orbit_size = orbit_size;
    out.local = local_monodromy(representative);
    out.genus = branchcover::genus(representative);
    out.report = specialness(*fam.table, evaluator.mu(representative));

    if (out.genus == 0) {
        out.cm_status = kCmStatusZeroJacobian;
        return out;
    }
    if (!out.report.special) {
        out.cm_status = kCmStatusCriterionSilent;
        return out;
    }
    switch (fam.spec.kind) {
    case FamilyKind::metacyclic:
        if (out.tag == "metacyclic-main" && fam.spec.n == 3)
            out.cm_type = metacyclic_cm_type(fam, representative);
        break;
    case FamilyKind::dicyclic:
        out.cm_type = dicyclic_cm_type(fam, representative);
        break;
    case FamilyKind::quaternion8:
        out.cm_type = quaternion_cm_type();
        break;
    case FamilyKind::cyclic:
        break;
    }
    if (!out.cm_type) {
        out.cm_status = kCmStatusUnsupported;
        return out;
    }
    out.cm_status = kCmStatusType;
    out.cm_verified =
        verify_cm_type_via_matrices(fam, representative, *out.cm_type);
    return out;
}

nlohmann::ordered_json cover_core_json(const ClassifiedCover& cover) {
    nlohmann::ordered_json j;
    j["class"] = cover.class_id;
    j["tag"] = cover.tag;
    j["local_monodromy"] = {cover.local[0], cover.local[1], cover.local[2]};
    j["orbit_size"] = cover.orbit_size;
    j["genus"] = cover.genus;
    j["N"] = cover.report.N;
    j["special"] = cover.report.special;
    j["cm_status"] = cover.cm_status;
    return j;
}

// Per-class CM report body without the engine/spec envelope.
nlohmann::ordered_json cm_report_body(const FamilyInstance& fam,
                                      const ClassifiedCover& cover) {
    nlohmann::ordered_json j = cover_core_json(cover);
    j.erase("cm_status");
    j["status"] = cover.cm_status;
    if (cover.cm_status == kCmStatusType) {
        const nlohmann::ordered_json type = cm_type_json(*cover.cm_type);
        j["field"] = type["field"];
        j["embeddings"] = type["embeddings"];
        j["verified_by_matrices"] = cover.cm_verified;
    } else if (cover.cm_status == kCmStatusCriterionSilent) {
        j["violated"] = cover.report.violated;
    } else if (cover.cm_status == kCmStatusZeroJacobian) {
        j["note"] = "genus 0: the Jacobian is trivial";
    } else {
        j["note"] = "no closed-form CM construction for this family path";
    }
    if (cover.genus > 0) {
        const std::vector<long long> mu =
            chevalley_weil(*fam.table, cover.representative);
        nlohmann::ordered_json comps = nlohmann::ordered_json::array();
        for (const IsotypicComponent& comp : isotypic_dims(*fam.table, mu)) {
            nlohmann::ordered_json c;
            c["orbit"] = comp.orbit;
            c["dim"] = comp.dim;
            if (!comp.undetermined && comp.dim > 0) {
                c["n_i"] = comp.n_i;
                c["w_multiplicity"] = comp.w_multiplicity;
            }
            c["criterion"] =
                to_string(cm_criterion(*fam.table, mu, comp.orbit));
            comps.push_back(std::move(c));
        }
        j["components"] = std::move(comps);
    }
    return j;
}

std::string iso_timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buf;
}

nlohmann::ordered_json scan_record_json(const FamilyInstance& fam,
                                        const ClassifiedCover& cover) {
    nlohmann::ordered_json j;
    j["spec"] = fam.spec.to_string();
    nlohmann::ordered_json core = cover_core_json(cover);
    for (auto& [key, value] : core.items()) j[key] = std::move(value);
    if (cover.cm_type) {
        const nlohmann::ordered_json type = cm_type_json(*cover.cm_type);
        j["cm_type"] = type;
        j["cm_verified"] = cover.cm_verified;
    }
    j["timestamp"] = iso_timestamp_utc();
    j["engine_version"] = kEngineVersion;
    return j;
}

} // namespace

std::vector<ClassifiedCover> classify_instance(const FamilyInstance& fam) {
    require(fam.group != nullptr && fam.table != nullptr,
            "family instance is not fully built");
    const MultiplicityEvaluator evaluator(*fam.table);
    std::vector<ClassifiedCover> out;
    for (const HurwitzClass& cls :
         hurwitz_orbits(fam.group, fam.aut_generators))
        out.push_back(analyse(fam, evaluator, cls.representative,
                              cls.orbit_size));
    return out;
}

ClassifiedCover classify_datum(const FamilyInstance& fam,
                               const MonodromyDatum& datum) {
    require(fam.group != nullptr && fam.table != nullptr,
            "family instance is not fully built");
    require(datum.group == fam.group,
            "datum does not belong to the instance group");
    const MonodromyDatum rep =
        hurwitz_representative(datum, fam.aut_generators);
    const std::string id = datum_literal(rep);
    for (ClassifiedCover& cover : classify_instance(fam))
        if (cover.class_id == id) return std::move(cover);
    ensure(false, "canonical representative missing from the class list");
    return {};
}

nlohmann::ordered_json group_info_json(const FamilyInstance& fam) {
    const CharacterTable& table = *fam.table;
    nlohmann::ordered_json j;
    j["engine_version"] = kEngineVersion;
    j["spec"] = fam.spec.to_string();
    j["family"] = family_name(fam.spec.kind);
    j["parameters"] = parameters_json(fam.spec);
    j["order"] = fam.group->order();
    j["conjugacy_classes"] = table.classes.count();
    j["exponent"] = table.group_exponent;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (unsigned c = 0; c < table.char_count(); ++c) {
        const Character& chi = table.chars[c];
        const SchurData schur = schur_data(table, c);
        nlohmann::ordered_json row;
        row["index"] = c;
        row["role"] = chi.role;
        row["degree"] = chi.degree;
        row["indicator"] = chi.indicator;
        row["field_degree"] = schur.char_field_degree_Q;
        row["schur_index_Q"] = schur.m_Q;
        row["dual"] = chi.dual;
        rows.push_back(std::move(row));
    }
    j["characters"] = std::move(rows);
    return j;
}

nlohmann::ordered_json classify_json(
    const FamilyInstance& fam, const std::vector<ClassifiedCover>& covers) {
    nlohmann::ordered_json j;
    j["engine_version"] = kEngineVersion;
    j["spec"] = fam.spec.to_string();
    j["order"] = fam.group->order();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ClassifiedCover& cover : covers)
        rows.push_back(cover_core_json(cover));
    j["classes"] = std::move(rows);
    return j;
}

nlohmann::ordered_json cm_report_json(const FamilyInstance& fam,
                                      const ClassifiedCover& cover) {
    nlohmann::ordered_json j;
    j["engine_version"] = kEngineVersion;
    j["spec"] = fam.spec.to_string();
    nlohmann::ordered_json body = cm_report_body(fam, cover);
    for (auto& [key, value] : body.items()) j[key] = std::move(value);
    return j;
}

nlohmann::ordered_json cm_reports_json(
    const FamilyInstance& fam, const std::vector<ClassifiedCover>& covers) {
    nlohmann::ordered_json j;
    j["engine_version"] = kEngineVersion;
    j["spec"] = fam.spec.to_string();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ClassifiedCover& cover : covers)
        rows.push_back(cm_report_body(fam, cover));
    j["reports"] = std::move(rows);
    return j;
}

ScanOutcome run_scan(const std::string& family, unsigned long q_max,
                     unsigned long n_max, const std::string& store_path) {
    require(family == "metacyclic" || family == "dicyclic",
            "scan family must be metacyclic or dicyclic, got '" + family +
                "'");
    require(q_max >= 3, "scan requires q-max >= 3");
    require(family == "dicyclic" || n_max >= 2,
            "metacyclic scan requires n-max >= 2");
    require(!store_path.empty(), "scan requires a store path");

    std::vector<FamilySpec> specs;
    for (unsigned long q = 3; q <= q_max; q += 2) {
        if (!is_prime(q)) continue;
        if (family == "dicyclic") {
            specs.push_back(
                FamilySpec::parse("dicyclic:q=" + std::to_string(q)));
            continue;
        }
        for (unsigned long n = 2; n <= n_max; ++n)
            if ((q - 1) % n == 0)
                specs.push_back(FamilySpec::parse(
                    "metacyclic:q=" + std::to_string(q) +
                    ",n=" + std::to_string(n)));
    }

    // Keys already present in the store; the scan never rewrites them.
    std::set<std::pair<std::string, std::string>> existing;
    {
        std::ifstream in(store_path);
        std::string line;
        unsigned long line_no = 0;
        while (in && std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            nlohmann::json record =
                nlohmann::json::parse(line, nullptr, false);
            require(!record.is_discarded() && record.contains("spec") &&
                        record.contains("class"),
                    "scan store line " + std::to_string(line_no) +
                        " is not a valid record: " + store_path);
            existing.emplace(record["spec"].get<std::string>(),
                             record["class"].get<std::string>());
        }
    }

    std::ofstream out(store_path, std::ios::app);
    require(out.good(), "cannot open scan store for appending: " + store_path);

    ScanOutcome outcome;
    for (const FamilySpec& spec : specs) {
        const FamilyInstance fam = build_family(spec);
        ++outcome.instances;
        for (const ClassifiedCover& cover : classify_instance(fam)) {
            ++outcome.records_total;
            if (cover.report.special) ++outcome.special_count;
            if (cover.cm_type) ++outcome.by_conductor[conductor_key(*cover.cm_type)];
            const auto key = std::make_pair(spec.to_string(), cover.class_id);
            if (existing.count(key)) continue;
            out << scan_record_json(fam, cover).dump() << "\n";
            ensure(out.good(), "scan store write failed: " + store_path);
            out.flush();
            ++outcome.records_new;
        }
    }
    return outcome;
}

nlohmann::ordered_json scan_summary_json(const ScanOutcome& outcome) {
    nlohmann::ordered_json j;
    j["engine_version"] = kEngineVersion;
    j["instances"] = outcome.instances;
    j["records_total"] = outcome.records_total;
    j["records_new"] = outcome.records_new;
    j["special"] = outcome.special_count;
    nlohmann::ordered_json by = nlohmann::ordered_json::object();
    for (const auto& [key, count] : outcome.by_conductor) by[key] = count;
    j["by_conductor"] = std::move(by);
    return j;
}

} // namespace branchcover
