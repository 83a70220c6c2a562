#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "branchcover.h"

namespace {

// Takes ownership of a C-API string result.
std::string take(char* text) {
    REQUIRE(text != nullptr);
    std::string out(text);
    bc_string_free(text);
    return out;
}

} // namespace

TEST_CASE("instance lifecycle and info") {
    CHECK(std::string(bc_version()).size() > 0);

    bc_instance* handle = nullptr;
    REQUIRE(bc_instance_new("dicyclic:q=5", &handle) == BC_OK);
    REQUIRE(handle != nullptr);
    CHECK(std::string(bc_last_error()).empty());
    CHECK(bc_instance_order(handle) == 20);
    CHECK(bc_instance_conjugacy_classes(handle) == 8);

    char* text = nullptr;
    REQUIRE(bc_instance_info_json(handle, &text) == BC_OK);
    const nlohmann::json info = nlohmann::json::parse(take(text));
    CHECK(info["spec"] == "dicyclic:q=5");
    CHECK(info["order"] == 20);
    CHECK(info["characters"].size() == 8);

    bc_instance_free(handle);
    bc_instance_free(nullptr); // must be a no-op
    CHECK(bc_instance_order(nullptr) == 0);
}

TEST_CASE("classification and CM reports through the C surface") {
    bc_instance* handle = nullptr;
    REQUIRE(bc_instance_new("dicyclic:q=3", &handle) == BC_OK);

    char* text = nullptr;
    REQUIRE(bc_instance_classify_json(handle, &text) == BC_OK);
    const nlohmann::json classified = nlohmann::json::parse(take(text));
    REQUIRE(classified["classes"].size() == 2);
    for (const auto& row : classified["classes"]) {
        CHECK(row["N"] == 0);
        CHECK(row["cm_status"] == "cm-type");
    }

    REQUIRE(bc_instance_cm_json(handle, nullptr, &text) == BC_OK);
    const nlohmann::json all = nlohmann::json::parse(take(text));
    CHECK(all["reports"].size() == 2);

    REQUIRE(bc_instance_cm_json(handle, "a,b,b^3*a^-1", &text) == BC_OK);
    const nlohmann::json one = nlohmann::json::parse(take(text));
    CHECK(one["status"] == "cm-type");
    CHECK(one["field"]["conductors"] == nlohmann::json({12}));
    CHECK(one["verified_by_matrices"] == true);

    const int rc = bc_instance_cm_json(handle, "a,b,c", &text);
    CHECK(rc == BC_ERR_INVALID_INPUT);
    CHECK(std::string(bc_last_error()).size() > 0);

    bc_instance_free(handle);
}

TEST_CASE("error codes distinguish input, resource and internal failures") {
    bc_instance* handle = nullptr;
    CHECK(bc_instance_new("metacyclic:q=8,n=3", &handle) ==
          BC_ERR_INVALID_INPUT);
    CHECK(std::string(bc_last_error()).find("prime") != std::string::npos);

    CHECK(bc_instance_new("cyclic:n=6000", &handle) == BC_ERR_RESOURCE_LIMIT);

    CHECK(bc_instance_new(nullptr, &handle) == BC_ERR_INVALID_INPUT);
    CHECK(bc_instance_new("quaternion8", nullptr) == BC_ERR_INVALID_INPUT);

    // The order bound can be tightened and restored at runtime.
    CHECK(bc_set_max_group_order(10) == BC_OK);
    CHECK(bc_instance_new("dicyclic:q=5", &handle) == BC_ERR_RESOURCE_LIMIT);
    CHECK(bc_set_max_group_order(0) == BC_OK);
    REQUIRE(bc_instance_new("dicyclic:q=5", &handle) == BC_OK);
    bc_instance_free(handle);
}

TEST_CASE("scan through the C surface") {
    const std::string store = "/tmp/branchcover_test_capi_scan.jsonl";
    std::remove(store.c_str());

    char* text = nullptr;
    REQUIRE(bc_scan("dicyclic", 5, 0, store.c_str(), &text) == BC_OK);
    const nlohmann::json summary = nlohmann::json::parse(take(text));
    CHECK(summary["instances"] == 2);
    CHECK(summary["records_new"] == 4);

    REQUIRE(bc_scan("dicyclic", 5, 0, store.c_str(), &text) == BC_OK);
    const nlohmann::json again = nlohmann::json::parse(take(text));
    CHECK(again["records_new"] == 0);

    CHECK(bc_scan("octahedral", 5, 0, store.c_str(), &text) ==
          BC_ERR_INVALID_INPUT);
    std::remove(store.c_str());
}
