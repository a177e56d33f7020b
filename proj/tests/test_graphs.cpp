#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "errors.hpp"
#include "expand.hpp"
#include "graphs.hpp"
#include "matrix.hpp"

using namespace rcms;

namespace {

const VacGraph kTripleBubble = make_graph({{4, 0, 0}, {0, 4, 0}, {0, 0, 4}});
const VacGraph kDoubleTriangle = make_graph({{0, 2, 2}, {2, 0, 2}, {2, 2, 0}});
const VacGraph kTwoPairs =
    make_graph({{2, 2, 0, 0}, {2, 2, 0, 0}, {0, 0, 2, 2}, {0, 0, 2, 2}});

std::vector<MultiplicityRecord> records_for(int m) {
    auto set = assemble_order(m, class_representatives(m, 4));
    return merge({&set}, m);
}

// reference canonicalization: try every relabeling explicitly
VacGraph naive_canonical(const VacGraph& G) {
    VacGraph best = G;
    bool have = false;
    for (const auto& p : all_perms(G.m)) {
        VacGraph H;
        H.m = G.m;
        for (int i = 0; i < G.m; ++i)
            for (int j = 0; j < G.m; ++j) H.a[i][j] = G.a[p.map[i]][p.map[j]];
        if (!have || graph_key(H) < graph_key(best)) {
            best = H;
            have = true;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("graph validation catches broken adjacencies") {
    CHECK_THROWS_AS(make_graph({{4, 0}, {1, 3}}), internal_error);        // asymmetric
    CHECK_THROWS_AS(make_graph({{3, 1}, {1, 3}}), internal_error);        // odd diagonal
    CHECK_THROWS_AS(make_graph({{2, 1}, {1, 2}}), internal_error);        // degree 3
    CHECK_THROWS_AS(make_graph({{4, 0}, {0, 4}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("graph keys roundtrip") {
    CHECK(graph_from_key(graph_key(kTwoPairs), 4) == kTwoPairs);
}

TEST_CASE("graph canonicalization is idempotent and relabeling-invariant") {
    for (const VacGraph& G : {kTripleBubble, kDoubleTriangle, kTwoPairs}) {
        VacGraph c = graph_canonical_form(G);
        CHECK(graph_canonical_form(c) == c);
        for (const auto& p : all_perms(G.m)) {
            VacGraph H;
            H.m = G.m;
            for (int i = 0; i < G.m; ++i)
                for (int j = 0; j < G.m; ++j) H.a[i][j] = G.a[p.map[i]][p.map[j]];
            CHECK(graph_canonical_form(H) == c);
        }
    }
}

TEST_CASE("graph canonical form agrees with the explicit relabeling scan") {
    // every canonical graph the order-3 and order-4 pipelines produce
    for (int m = 3; m <= 4; ++m)
        for (const auto& r : records_for(m))
            CHECK(graph_canonical_form(r.graph) == naive_canonical(r.graph));
}

TEST_CASE("connectivity and components") {
    CHECK_FALSE(is_connected(kTripleBubble));
    CHECK(is_connected(kDoubleTriangle));

    auto parts = connected_components(kTwoPairs);
    REQUIRE(parts.size() == 2);
    for (const auto& part : parts) {
        CHECK(part.m == 2);
        CHECK(part.at(0, 0) == 2);
        CHECK(part.at(0, 1) == 2);
        validate_graph(part);
    }
    CHECK(connected_components(kDoubleTriangle).size() == 1);
    CHECK(connected_components(kTripleBubble).size() == 3);
}

TEST_CASE("component symmetry factors multiply with repetition factorials") {
    // three copies of the double bubble (s = 8): 3! * 8^3
    CHECK(disconnected_sym_factor({{8, 3}}) == 3072);
    // double bubble next to an s = 16 companion: 1! * 8 * 1! * 16
    CHECK(disconnected_sym_factor({{8, 1}, {16, 1}}) == 128);
    CHECK(disconnected_sym_factor({{8, 2}}) == 128);
    CHECK_THROWS_AS(disconnected_sym_factor({{8, 0}}), std::invalid_argument);
}

TEST_CASE("order-1 and order-2 merged records") {
    auto recs1 = records_for(1);
    REQUIRE(recs1.size() == 1);
    CHECK(recs1[0].m_total == u128{24});
    CHECK(recs1[0].m_kleinert == u128{3});
    CHECK(recs1[0].sym_factor == 8);
    CHECK(recs1[0].connected);

    auto recs2 = records_for(2);
    REQUIRE(recs2.size() == 3);
    // connected records lead
    CHECK(recs2[0].connected);
    CHECK(recs2[1].connected);
    CHECK_FALSE(recs2[2].connected);
    std::multiset<u64> mk;
    for (const auto& r : recs2) mk.insert(static_cast<u64>(r.m_kleinert));
    CHECK(mk == std::multiset<u64>{9, 24, 72});
}

TEST_CASE("the seven order-3 records carry the reference multiplicities") {
    auto recs = records_for(3);
    REQUIRE(recs.size() == 7);
    std::multiset<std::pair<u64, u64>> got, expect = {
        {27, 3072}, {216, 384}, {648, 128}, {1728, 48},
        {1728, 48}, {2592, 32}, {3456, 24}};
    int connected = 0;
    for (const auto& r : recs) {
        got.emplace(static_cast<u64>(r.m_kleinert), r.sym_factor);
        // both normalizations of the same count
        CHECK(r.m_total == r.m_kleinert * u128{46080});   // (2m)!·2^{2m}
        CHECK(r.m_kleinert * r.sym_factor == u128{82944});  // (4!)^m·m!
        connected += r.connected ? 1 : 0;
    }
    CHECK(got == expect);
    CHECK(connected == 4);
    u128 sum = 0;
    for (const auto& r : recs) sum += r.m_kleinert;
    CHECK(sum == double_factorial128(11));  // (4m-1)!! at m = 3
}

TEST_CASE("merging splits nothing: weights reach the records intact") {
    auto classes = class_representatives(3, 4);
    // feed the merge from two half-assemblies to exercise summation
    WeightedGraphSet a, b;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const u128 scale = u128{classes[i].orbit_size} * classes[i].mult_factor;
        auto part = expand_representative(classes[i].rep);
        for (const auto& [k, w] : part) (i % 2 ? a : b)[k] += scale * w;
    }
    auto split = merge({&a, &b}, 3);
    auto whole = records_for(3);
    REQUIRE(split.size() == whole.size());
    for (std::size_t i = 0; i < split.size(); ++i) {
        CHECK(split[i].graph == whole[i].graph);
        CHECK(split[i].m_total == whole[i].m_total);
    }
}

TEST_CASE("merge rejects non-canonical keys") {
    WeightedGraphSet bad;
    bad[graph_key(kTwoPairs)] = 46080 * 16;  // labeled, not canonical
    CHECK_THROWS_AS(merge({&bad}, 4), internal_error);
}

TEST_CASE("DOT output lists loops and edge copies explicitly") {
    VacGraph loop = make_graph({{4}});
    CHECK(to_dot(loop, "g1_1") ==
          "graph g1_1 {\n  node [shape=circle];\n  v0;\n"
          "  v0 -- v0;\n  v0 -- v0;\n}\n");

    std::string dot = to_dot(kDoubleTriangle, "g3_7");
    CHECK(dot.find("graph g3_7 {") == 0);
    // three double edges -> six "--" edge statements
    CHECK(std::count(dot.begin(), dot.end(), '-') == 12);
}

TEST_CASE("CSV rendering of the order-1 record") {
    CHECK(records_csv(records_for(1), 1, false) ==
          "order,graph_id,canonical_adjacency,M_T,M_K,s,connected\n"
          "1,g1_1,4,24,3,8,true\n");
}

TEST_CASE("CSV connected-only filter keeps ids stable") {
    auto recs = records_for(2);
    std::string all = records_csv(recs, 2, false);
    std::string conn = records_csv(recs, 2, true);
    CHECK(all.find("g2_3") != std::string::npos);
    CHECK(conn.find("g2_3") == std::string::npos);
    CHECK(conn.find("g2_1") != std::string::npos);
}

TEST_CASE("graph ids are one-based") {
    CHECK(graph_id(3, 0) == "g3_1");
    CHECK(graph_id(5, 27) == "g5_28");
}
