// Exercises the shared library through the C surface only: status codes,
// error messages, string ownership, and the JSON/CSV payloads.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdio>
#include <cstring>
#include <string>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "rcms.h"

using nlohmann::json;

namespace {

struct Engine {
    rcms_engine* e = rcms_engine_new();
    Engine() { REQUIRE(e != nullptr); }
    ~Engine() { rcms_engine_free(e); }
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;
};

std::string take(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    rcms_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("version and engine lifecycle") {
    CHECK(std::string(rcms_version()) == "1.0.0");
    Engine eng;
    CHECK(std::string(rcms_engine_last_error(eng.e)).empty());
    CHECK(std::string(rcms_engine_last_error(nullptr)) == "null engine");
    CHECK(rcms_engine_set_threads(nullptr, 2) == RCMS_ERR_INVALID_ARG);
    CHECK(rcms_engine_set_threads(eng.e, 2) == RCMS_OK);
    rcms_string_free(nullptr);  // free(NULL) contract
}

TEST_CASE("count reports totals and class counts") {
    Engine eng;
    char* out = nullptr;
    REQUIRE(rcms_count(eng.e, 4, 4, &out) == RCMS_OK);
    json j = json::parse(take(out));
    CHECK(j["schema_version"] == 1);
    CHECK(j["command"] == "count");
    CHECK(j["order"] == 4);
    CHECK(j["margin"] == 4);
    CHECK(j["total"] == "10147");
    CHECK(j["classes"] == 43);

    // Past order 6 the total is still exact but classes are not enumerated.
    out = nullptr;
    REQUIRE(rcms_count(eng.e, 8, 4, &out) == RCMS_OK);
    json j8 = json::parse(take(out));
    CHECK(j8["classes"].is_null());
    CHECK(j8["total"].is_string());

    out = nullptr;
    CHECK(rcms_count(eng.e, 9, 4, &out) == RCMS_ERR_UNSUPPORTED);
    CHECK(out == nullptr);
    CHECK(std::string(rcms_engine_last_error(eng.e)).find("orders 1..8") !=
          std::string::npos);
    CHECK(rcms_count(eng.e, 3, 4, nullptr) == RCMS_ERR_INVALID_ARG);
}

TEST_CASE("enumerate emits classes as JSON and CSV") {
    Engine eng;
    char* out = nullptr;
    REQUIRE(rcms_enumerate(eng.e, 3, 4, nullptr, 0, &out) == RCMS_OK);
    json j = json::parse(take(out));
    CHECK(j["command"] == "enumerate");
    CHECK(j["class_count"] == 9);
    CHECK(j["total_count"] == "120");
    REQUIRE(j["classes"].size() == 9);
    long long orbit_sum = 0;
    for (const auto& c : j["classes"]) orbit_sum += c["orbit_size"].get<long long>();
    CHECK(orbit_sum == 120);

    out = nullptr;
    REQUIRE(rcms_enumerate(eng.e, 3, 4, nullptr, 1, &out) == RCMS_OK);
    std::string csv = take(out);
    CHECK(csv.rfind("order,index,matrix,orbit_size,mult_factor\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);  // header + 9 rows

    out = nullptr;
    CHECK(rcms_enumerate(eng.e, 3, 6, nullptr, 0, &out) == RCMS_ERR_UNSUPPORTED);
}

TEST_CASE("enumerate writes a resumable checkpoint") {
    Engine eng;
    std::string path = "capi_ckpt_" + std::to_string(::getpid()) + ".ckpt";
    char* out = nullptr;
    REQUIRE(rcms_enumerate(eng.e, 3, 4, path.c_str(), 0, &out) == RCMS_OK);
    std::string first = take(out);
    CHECK(::access(path.c_str(), F_OK) == 0);

    // A fresh engine resumes from the file and reproduces the same report.
    Engine eng2;
    out = nullptr;
    REQUIRE(rcms_enumerate(eng2.e, 3, 4, path.c_str(), 0, &out) == RCMS_OK);
    CHECK(take(out) == first);

    // A truncated checkpoint is refused, not silently recomputed.
    std::FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("rcms-checkpoint 1.0.0\n", f);
    std::fclose(f);
    Engine eng3;
    out = nullptr;
    CHECK(rcms_enumerate(eng3.e, 3, 4, path.c_str(), 0, &out) == RCMS_ERR_CHECKPOINT);
    std::remove(path.c_str());
}

TEST_CASE("graphs reports records and counts") {
    Engine eng;
    char* out = nullptr;
    REQUIRE(rcms_graphs(eng.e, 1, 0, 0, &out) == RCMS_OK);
    json j = json::parse(take(out));
    CHECK(j["command"] == "graphs");
    CHECK(j["graph_count"] == 1);
    CHECK(j["connected_count"] == 1);
    REQUIRE(j["records"].size() == 1);
    const auto& r = j["records"][0];
    CHECK(r["graph_id"] == "g1_1");
    CHECK(r["adjacency"] == json::parse("[[4]]"));
    CHECK(r["m_total"] == "24");
    CHECK(r["m_kleinert"] == 3);
    CHECK(r["sym_factor"] == 8);
    CHECK(r["connected"] == true);

    out = nullptr;
    REQUIRE(rcms_graphs(eng.e, 2, 1, 0, &out) == RCMS_OK);
    json j2 = json::parse(take(out));
    CHECK(j2["graph_count"] == 3);
    CHECK(j2["connected_count"] == 2);
    REQUIRE(j2["records"].size() == 2);
    for (const auto& rec : j2["records"]) CHECK(rec["connected"] == true);

    out = nullptr;
    REQUIRE(rcms_graphs(eng.e, 2, 1, 1, &out) == RCMS_OK);
    std::string csv = take(out);
    CHECK(csv.rfind("order,graph_id,canonical_adjacency,M_T,M_K,s,connected\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rows

    int total = 0, connected = 0;
    REQUIRE(rcms_graphs_count(eng.e, 3, &total, &connected) == RCMS_OK);
    CHECK(total == 7);
    CHECK(connected == 4);
    CHECK(rcms_graphs_count(eng.e, 0, &total, &connected) == RCMS_ERR_UNSUPPORTED);
    CHECK(rcms_graphs_count(eng.e, 3, nullptr, &connected) == RCMS_ERR_INVALID_ARG);
}

TEST_CASE("graph_dot renders one record") {
    Engine eng;
    char* out = nullptr;
    REQUIRE(rcms_graph_dot(eng.e, 1, 1, &out) == RCMS_OK);
    std::string dot = take(out);
    CHECK(dot.find("graph g1_1 {") != std::string::npos);
    CHECK(dot.find("v0 -- v0;") != std::string::npos);

    out = nullptr;
    CHECK(rcms_graph_dot(eng.e, 1, 0, &out) == RCMS_ERR_INVALID_ARG);
    CHECK(rcms_graph_dot(eng.e, 1, 2, &out) == RCMS_ERR_INVALID_ARG);
    CHECK(std::string(rcms_engine_last_error(eng.e)).find("out of range") !=
          std::string::npos);
}

TEST_CASE("decompose_text reports decompositions and verdicts") {
    Engine eng;
    const char* text = "2 4\n4 0\n0 4\n\n2 4\n0 4\n4 0\n";
    char* out = nullptr;
    REQUIRE(rcms_decompose_text(eng.e, text, &out) == RCMS_OK);
    json j = json::parse(take(out));
    CHECK(j["command"] == "decompose");
    REQUIRE(j["matrices"].size() == 2);
    CHECK(j["matrices"][0]["decomposition_count"] == 1);
    CHECK(j["matrices"][0]["decompositions"][0]["signature"] == "d=[4];ov=[]");
    REQUIRE(j["pairwise"].size() == 1);
    // Same class (column swap), so signatures agree and the test cannot
    // separate them.
    CHECK(j["pairwise"][0]["non_equivalence_test"] == "inconclusive");
    CHECK(j["pairwise"][0]["are_equivalent"] == true);

    out = nullptr;
    CHECK(rcms_decompose_text(eng.e, "2 4\n4 0\n0 x\n", &out) == RCMS_ERR_PARSE);
    CHECK(std::string(rcms_engine_last_error(eng.e)).find("line 3") !=
          std::string::npos);
    CHECK(rcms_decompose_text(eng.e, nullptr, &out) == RCMS_ERR_INVALID_ARG);
}

TEST_CASE("decompose_class addresses canonical representatives") {
    Engine eng;
    char* out = nullptr;
    REQUIRE(rcms_decompose_class(eng.e, 2, 4, 1, &out) == RCMS_OK);
    json j = json::parse(take(out));
    REQUIRE(j["matrices"].size() == 1);
    CHECK(j["matrices"][0]["order"] == 2);
    CHECK(j["matrices"][0]["decomposition_count"].get<int>() >= 1);

    out = nullptr;
    CHECK(rcms_decompose_class(eng.e, 2, 4, 0, &out) == RCMS_ERR_INVALID_ARG);
    CHECK(rcms_decompose_class(eng.e, 2, 4, 4, &out) == RCMS_ERR_INVALID_ARG);
    CHECK(std::string(rcms_engine_last_error(eng.e)).find("1..3") !=
          std::string::npos);
    CHECK(rcms_decompose_class(eng.e, 8, 4, 1, &out) == RCMS_ERR_UNSUPPORTED);
}

TEST_CASE("verify replays the reference tables") {
    Engine eng;
    char* out = nullptr;
    int all_pass = -1;
    REQUIRE(rcms_verify(eng.e, 2, 1, &out, &all_pass) == RCMS_OK);
    json j = json::parse(take(out));
    CHECK(all_pass == 1);
    CHECK(j["command"] == "verify");
    CHECK(j["all_pass"] == true);
    CHECK(j["oracle"] == true);
    REQUIRE(j["checks"].size() > 0);
    for (const auto& c : j["checks"]) CHECK(c["pass"] == true);

    out = nullptr;
    CHECK(rcms_verify(eng.e, 7, 0, &out, &all_pass) == RCMS_ERR_UNSUPPORTED);
}
