// Command-line front end; all computation goes through the C API.

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "branchcover.h"

namespace {

struct InstancePtr {
    bc_instance* p = nullptr;
    ~InstancePtr() { bc_instance_free(p); }
};

std::string take(char* text) {
    std::string out = text == nullptr ? "" : text;
    bc_string_free(text);
    return out;
}

int fail(int code) {
    std::cerr << "error: " << bc_last_error() << "\n";
    return code;
}

std::string local_text(const nlohmann::json& local) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < local.size(); ++i)
        out << (i ? "," : "") << local[i].get<unsigned>();
    out << ")";
    return out.str();
}

std::string field_text(const nlohmann::json& field) {
    std::ostringstream out;
    const auto& conductors = field["conductors"];
    for (size_t i = 0; i < conductors.size(); ++i)
        out << (i ? " x " : "") << "Q(zeta_" << conductors[i].get<unsigned long>()
            << ")";
    return out.str();
}

std::string embeddings_text(const nlohmann::json& report) {
    const auto& conductors = report["field"]["conductors"];
    std::ostringstream out;
    for (size_t i = 0; i < report["embeddings"].size(); ++i) {
        const auto& e = report["embeddings"][i];
        const unsigned factor = e["factor"].get<unsigned>();
        out << (i ? ", " : "") << "zeta_"
            << conductors[factor].get<unsigned long>() << "^"
            << e["exponent"].get<unsigned long>();
        if (conductors.size() > 1) out << " [factor " << factor << "]";
    }
    return out.str();
}

void print_group_info(const nlohmann::json& j) {
    std::cout << j["spec"].get<std::string>() << ": order " << j["order"]
              << ", " << j["conjugacy_classes"]
              << " conjugacy classes, exponent " << j["exponent"] << "\n";
    std::cout << "  idx  degree  indicator  field-deg  schur-Q  dual  role\n";
    for (const auto& row : j["characters"]) {
        std::cout << "  " << std::left << std::setw(5)
                  << row["index"].get<unsigned>() << std::setw(8)
                  << row["degree"].get<unsigned>() << std::setw(11)
                  << row["indicator"].get<int>() << std::setw(11)
                  << row["field_degree"].get<unsigned>() << std::setw(9)
                  << row["schur_index_Q"].get<unsigned>() << std::setw(6)
                  << row["dual"].get<unsigned>()
                  << row["role"].get<std::string>() << "\n";
    }
}

void print_class_line(const nlohmann::json& row, const std::string& status_key) {
    std::cout << "  class " << row["class"].get<std::string>() << "  ["
              << row["tag"].get<std::string>() << "]  local "
              << local_text(row["local_monodromy"]) << "  genus "
              << row["genus"] << "  N " << row["N"] << "  special "
              << (row["special"].get<bool>() ? "yes" : "no") << "  cm "
              << row[status_key].get<std::string>() << "\n";
}

void print_classify(const nlohmann::json& j) {
    std::cout << j["spec"].get<std::string>() << ": order " << j["order"]
              << ", " << j["classes"].size() << " Hurwitz classes\n";
    for (const auto& row : j["classes"]) print_class_line(row, "cm_status");
}

void print_cm_body(const nlohmann::json& r) {
    print_class_line(r, "status");
    const std::string status = r["status"].get<std::string>();
    if (status == "cm-type") {
        std::cout << "    field: " << field_text(r["field"]) << "\n";
        std::cout << "    type: " << embeddings_text(r) << "\n";
        std::cout << "    verified by matrices: "
                  << (r["verified_by_matrices"].get<bool>() ? "yes" : "no")
                  << "\n";
    } else if (status == "criterion-silent") {
        for (const auto& clause : r["violated"])
            std::cout << "    violated: " << clause.get<std::string>() << "\n";
    } else {
        std::cout << "    note: " << r["note"].get<std::string>() << "\n";
    }
    if (r.contains("components")) {
        std::cout << "    components:";
        for (const auto& comp : r["components"])
            std::cout << " [orbit " << comp["orbit"] << ": dim " << comp["dim"]
                      << ", " << comp["criterion"].get<std::string>() << "]";
        std::cout << "\n";
    }
}

void print_scan_summary(const nlohmann::json& j) {
    std::cout << "scanned " << j["instances"] << " instances: "
              << j["records_total"] << " records in range ("
              << j["records_new"] << " new), " << j["special"]
              << " special\n";
    if (!j["by_conductor"].empty()) {
        std::cout << "by CM conductor:";
        bool first = true;
        for (const auto& [key, count] : j["by_conductor"].items()) {
            std::cout << (first ? " " : "; ") << key << " -> "
                      << count.get<unsigned long>();
            first = false;
        }
        std::cout << "\n";
    }
}

int run_info(const std::string& spec, bool json_mode) {
    InstancePtr handle;
    if (const int rc = bc_instance_new(spec.c_str(), &handle.p); rc != BC_OK)
        return fail(rc);
    char* text = nullptr;
    if (const int rc = bc_instance_info_json(handle.p, &text); rc != BC_OK)
        return fail(rc);
    const std::string payload = take(text);
    if (json_mode)
        std::cout << payload << "\n";
    else
        print_group_info(nlohmann::json::parse(payload));
    return 0;
}

int run_classify(const std::string& spec, bool json_mode) {
    InstancePtr handle;
    if (const int rc = bc_instance_new(spec.c_str(), &handle.p); rc != BC_OK)
        return fail(rc);
    char* text = nullptr;
    if (const int rc = bc_instance_classify_json(handle.p, &text); rc != BC_OK)
        return fail(rc);
    const std::string payload = take(text);
    if (json_mode)
        std::cout << payload << "\n";
    else
        print_classify(nlohmann::json::parse(payload));
    return 0;
}

int run_cm(const std::string& spec, const std::string& ssg, bool json_mode) {
    InstancePtr handle;
    if (const int rc = bc_instance_new(spec.c_str(), &handle.p); rc != BC_OK)
        return fail(rc);
    char* text = nullptr;
    const int rc = bc_instance_cm_json(
        handle.p, ssg.empty() ? nullptr : ssg.c_str(), &text);
    if (rc != BC_OK) return fail(rc);
    const std::string payload = take(text);
    if (json_mode) {
        std::cout << payload << "\n";
        return 0;
    }
    const nlohmann::json j = nlohmann::json::parse(payload);
    std::cout << j["spec"].get<std::string>() << " CM analysis\n";
    if (j.contains("reports"))
        for (const auto& r : j["reports"]) print_cm_body(r);
    else
        print_cm_body(j);
    return 0;
}

int run_scan(const std::string& family, unsigned long q_max,
             unsigned long n_max, const std::string& out_path,
             bool json_mode) {
    char* text = nullptr;
    const int rc = bc_scan(family.c_str(), q_max, n_max, out_path.c_str(),
                           &text);
    if (rc != BC_OK) return fail(rc);
    const std::string payload = take(text);
    if (json_mode)
        std::cout << payload << "\n";
    else
        print_scan_summary(nlohmann::json::parse(payload));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact classification of Galois covers of the line branched "
                 "at three points"};
    app.set_version_flag("--version", bc_version());
    app.require_subcommand(1);
    bool json_mode = false;

    CLI::App* group = app.add_subcommand("group", "group-level reports");
    group->require_subcommand(1);
    CLI::App* info = group->add_subcommand(
        "info", "order, conjugacy classes and character table summary");
    std::string info_spec;
    info->add_option("SPEC", info_spec, "family spec, e.g. metacyclic:q=7,n=3")
        ->required();
    info->add_flag("--json", json_mode, "machine-readable output");

    CLI::App* covers =
        app.add_subcommand("covers", "Hurwitz classification and CM reports");
    covers->require_subcommand(1);
    CLI::App* classify = covers->add_subcommand(
        "classify", "all Hurwitz classes with genus, N and CM status");
    std::string classify_spec;
    classify->add_option("SPEC", classify_spec, "family spec")->required();
    classify->add_flag("--json", json_mode, "machine-readable output");

    CLI::App* cm = covers->add_subcommand(
        "cm", "CM field and type reports, with matrix verification");
    std::string cm_spec, cm_ssg;
    cm->add_option("SPEC", cm_spec, "family spec")->required();
    cm->add_option("--ssg", cm_ssg,
                   "select one class by a member datum, e.g. \"a,b,b^3*a^-1\"");
    cm->add_flag("--json", json_mode, "machine-readable output");

    CLI::App* scan = app.add_subcommand(
        "scan", "batch-classify a parameter range into a JSONL store");
    std::string scan_family, scan_out;
    unsigned long scan_qmax = 0, scan_nmax = 6;
    scan->add_option("--family", scan_family, "metacyclic or dicyclic")
        ->required();
    scan->add_option("--q-max", scan_qmax, "largest odd prime q")->required();
    scan->add_option("--n-max", scan_nmax,
                     "largest acting order n (metacyclic only, default 6)");
    scan->add_option("--out", scan_out, "JSONL store path")->required();
    scan->add_flag("--json", json_mode, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : BC_ERR_INVALID_INPUT;
    }

    if (info->parsed()) return run_info(info_spec, json_mode);
    if (classify->parsed()) return run_classify(classify_spec, json_mode);
    if (cm->parsed()) return run_cm(cm_spec, cm_ssg, json_mode);
    if (scan->parsed())
        return run_scan(scan_family, scan_qmax, scan_nmax, scan_out,
                        json_mode);
    return BC_ERR_INVALID_INPUT;
}
