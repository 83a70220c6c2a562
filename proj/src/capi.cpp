#include "branchcover.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "engine.hpp"
#include "errors.hpp"

struct bc_instance {
    branchcover::FamilyInstance fam;
    // Classification is computed once on first use and reused.
    std::optional<std::vector<branchcover::ClassifiedCover>> covers;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
int guarded(F&& body) noexcept {
    try {
        g_last_error.clear();
        body();
        return BC_OK;
    } catch (const branchcover::invalid_input_error& e) {
        g_last_error = e.what();
        return BC_ERR_INVALID_INPUT;
    } catch (const branchcover::resource_limit_error& e) {
        g_last_error = e.what();
        return BC_ERR_RESOURCE_LIMIT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return BC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return BC_ERR_INTERNAL;
    }
}

char* copy_out(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    branchcover::ensure(out != nullptr, "out of memory");
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

const std::vector<branchcover::ClassifiedCover>& covers_of(bc_instance& h) {
    if (!h.covers) h.covers = branchcover::classify_instance(h.fam);
    return *h.covers;
}

} // namespace

extern "C" {

const char* bc_version(void) { return branchcover::kEngineVersion; }

const char* bc_last_error(void) { return g_last_error.c_str(); }

int bc_instance_new(const char* spec, bc_instance** out) {
    return guarded([&] {
        branchcover::require(spec != nullptr, "spec must not be null");
        branchcover::require(out != nullptr, "output handle must not be null");
        auto handle = std::make_unique<bc_instance>();
        handle->fam =
            branchcover::build_family(branchcover::FamilySpec::parse(spec));
        *out = handle.release();
    });
}

void bc_instance_free(bc_instance* handle) { delete handle; }

long long bc_instance_order(const bc_instance* handle) {
    if (handle == nullptr || handle->fam.group == nullptr) return 0;
    return handle->fam.group->order();
}

long long bc_instance_conjugacy_classes(const bc_instance* handle) {
    if (handle == nullptr || handle->fam.table == nullptr) return 0;
    return handle->fam.table->classes.count();
}

int bc_instance_info_json(const bc_instance* handle, char** out_json) {
    return guarded([&] {
        branchcover::require(handle != nullptr, "handle must not be null");
        branchcover::require(out_json != nullptr, "output must not be null");
        *out_json = copy_out(branchcover::group_info_json(handle->fam).dump());
    });
}

int bc_instance_classify_json(bc_instance* handle, char** out_json) {
    return guarded([&] {
        branchcover::require(handle != nullptr, "handle must not be null");
        branchcover::require(out_json != nullptr, "output must not be null");
        *out_json = copy_out(
            branchcover::classify_json(handle->fam, covers_of(*handle))
                .dump());
    });
}

int bc_instance_cm_json(bc_instance* handle, const char* ssg_literal,
                        char** out_json) {
    return guarded([&] {
        branchcover::require(handle != nullptr, "handle must not be null");
        branchcover::require(out_json != nullptr, "output must not be null");
        if (ssg_literal == nullptr) {
            *out_json = copy_out(
                branchcover::cm_reports_json(handle->fam, covers_of(*handle))
                    .dump());
            return;
        }
        const branchcover::MonodromyDatum datum =
            branchcover::parse_datum(handle->fam.group, ssg_literal);
        const branchcover::ClassifiedCover cover =
            branchcover::classify_datum(handle->fam, datum);
        *out_json =
            copy_out(branchcover::cm_report_json(handle->fam, cover).dump());
    });
}

int bc_scan(const char* family, unsigned long q_max, unsigned long n_max,
            const char* store_path, char** out_summary_json) {
    return guarded([&] {
        branchcover::require(family != nullptr, "family must not be null");
        branchcover::require(store_path != nullptr,
                             "store path must not be null");
        const branchcover::ScanOutcome outcome =
            branchcover::run_scan(family, q_max, n_max, store_path);
        if (out_summary_json != nullptr)
            *out_summary_json =
                copy_out(branchcover::scan_summary_json(outcome).dump());
    });
}

int bc_set_max_group_order(unsigned bound) {
    return guarded([&] { branchcover::config::set_max_group_order(bound); });
}

void bc_string_free(char* text) { std::free(text); }

} // extern "C"
