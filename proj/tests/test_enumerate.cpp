#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "errors.hpp"
#include "matrix.hpp"

using namespace rcms;

namespace {

// writes `text` to a fresh temp file and removes it on scope exit
struct TempFile {
    std::string path;

    explicit TempFile(const std::string& tag) {
        path = (std::filesystem::temp_directory_path() /
                ("rcms_test_" + tag + "_" + std::to_string(::getpid()) + ".ckpt"))
                   .string();
        std::filesystem::remove(path);
    }
    ~TempFile() {
        std::filesystem::remove(path);
        std::filesystem::remove(path + ".tmp");
    }

    void put(const std::string& text) const {
        std::ofstream os(path, std::ios::trunc);
        os << text;
    }
};

std::vector<std::size_t> run_stage_sizes(int m, int d) {
    std::vector<std::size_t> sizes;
    class_representatives(m, d, 1, [&](int, const std::vector<PartialRcMatrix>& reps) {
        sizes.push_back(reps.size());
    });
    return sizes;
}

}  // namespace

TEST_CASE("initial rows are the margin partitions, widest first") {
    auto rows4 = initial_rows(4, 4);
    REQUIRE(rows4.size() == 5);
    const int expect[5][4] = {
        {4, 0, 0, 0}, {3, 1, 0, 0}, {2, 2, 0, 0}, {2, 1, 1, 0}, {1, 1, 1, 1}};
    for (int k = 0; k < 5; ++k)
        for (int j = 0; j < 4; ++j) CHECK(rows4[k].at(0, j) == expect[k][j]);

    CHECK(initial_rows(1, 4).size() == 1);
    CHECK(initial_rows(2, 4).size() == 3);   // (1,1,1,1) needs four columns
    CHECK(initial_rows(3, 4).size() == 4);
    CHECK(initial_rows(7, 4).size() == 5);   // partitions of 4 never widen past 4
}

TEST_CASE("augmentation stage sizes at orders 3, 4 and 5") {
    CHECK(run_stage_sizes(3, 4) == std::vector<std::size_t>{4, 15, 9});
    CHECK(run_stage_sizes(4, 4) == std::vector<std::size_t>{5, 32, 103, 43});
    CHECK(run_stage_sizes(5, 4) == std::vector<std::size_t>{5, 44, 314, 1021, 264});
}

TEST_CASE("class counts and orbit sums reproduce the totals") {
    const u64 totals[6] = {1, 5, 120, 10147, 2224955};
    const std::size_t counts[6] = {1, 3, 9, 43, 264};
    for (int m = 1; m <= 5; ++m) {
        auto classes = class_representatives(m, 4);
        CHECK(classes.size() == counts[m - 1]);
        u128 orbit_sum = 0;
        for (const auto& c : classes) orbit_sum += c.orbit_size;
        CHECK(orbit_sum == u128{totals[m - 1]});
        CHECK(count_total(m, 4) == u128{totals[m - 1]});
    }
}

TEST_CASE("dynamic-programming count matches direct enumeration at small sizes") {
    for (int m = 1; m <= 3; ++m)
        for (int d = 1; d <= 4; ++d)
            CHECK(count_total(m, d) == u128{all_matrices(m, d).size()});
}

TEST_CASE("order-6 total by dynamic programming") {
    CHECK(to_decimal(count_total(6, 4)) == "1047649905");
}

TEST_CASE("tiny margin counts by hand") {
    CHECK(count_total(2, 1) == u128{2});  // the two 2x2 permutation matrices
    CHECK(count_total(3, 1) == u128{6});
    CHECK(count_total(2, 2) == u128{3});
}

TEST_CASE("representatives are canonical, square, and pairwise inequivalent") {
    auto classes = class_representatives(3, 4);
    for (const auto& c : classes) {
        validate_square(c.rep);
        CHECK(canonical_key(c.rep) == mat_key(c.rep));
        CHECK(c.mult_factor >= 1);
    }
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.size(); ++j)
            CHECK_FALSE(are_equivalent(classes[i].rep, classes[j].rep));
}

TEST_CASE("augmentation output does not depend on worker count") {
    auto stage1 = initial_rows(4, 4);
    auto one = augment(stage1, 1);
    auto four = augment(stage1, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i] == four[i]);
}

TEST_CASE("enumeration rejects out-of-range sizes") {
    CHECK_THROWS_AS(class_representatives(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(class_representatives(8, 4), std::invalid_argument);
    CHECK_THROWS_AS(class_representatives(3, 6), unsupported_error);
    CHECK_THROWS_AS(count_total(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(count_total(17, 4), std::invalid_argument);
}

TEST_CASE("checkpoint roundtrip preserves a stage exactly") {
    TempFile f("roundtrip");
    auto stage2 = augment(initial_rows(4, 4));
    write_checkpoint(f.path, 4, 4, 2, stage2);

    int stage = 0;
    std::vector<PartialRcMatrix> back;
    REQUIRE(read_checkpoint(f.path, 4, 4, &stage, &back));
    CHECK(stage == 2);
    REQUIRE(back.size() == stage2.size());
    for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == stage2[i]);
}

TEST_CASE("resuming from a mid-stage checkpoint finishes the enumeration") {
    auto stage2 = augment(initial_rows(4, 4));
    auto resumed = class_representatives(4, 4, 1, {}, &stage2);
    auto fresh = class_representatives(4, 4);
    REQUIRE(resumed.size() == fresh.size());
    for (std::size_t i = 0; i < resumed.size(); ++i) {
        CHECK(resumed[i].rep == fresh[i].rep);
        CHECK(resumed[i].orbit_size == fresh[i].orbit_size);
        CHECK(resumed[i].mult_factor == fresh[i].mult_factor);
    }
}

TEST_CASE("a finished checkpoint resumes to the final class list") {
    TempFile f("finished");
    int calls = 0;
    auto fresh = class_representatives(
        3, 4, 1, [&](int stage, const std::vector<PartialRcMatrix>& reps) {
            ++calls;
            write_checkpoint(f.path, 3, 4, stage, reps);
        });
    CHECK(calls == 3);  // stages 1, 2, 3

    int stage = 0;
    std::vector<PartialRcMatrix> reps;
    REQUIRE(read_checkpoint(f.path, 3, 4, &stage, &reps));
    CHECK(stage == 3);
    auto resumed = class_representatives(3, 4, 1, {}, &reps);
    REQUIRE(resumed.size() == fresh.size());
    for (std::size_t i = 0; i < resumed.size(); ++i) CHECK(resumed[i].rep == fresh[i].rep);
}

TEST_CASE("missing checkpoint reads as absent, not as an error") {
    TempFile f("absent");
    int stage = 0;
    std::vector<PartialRcMatrix> reps;
    CHECK_FALSE(read_checkpoint(f.path, 4, 4, &stage, &reps));
}

TEST_CASE("checkpoint refusals: magic, version, shape, body") {
    TempFile f("bad");
    int stage = 0;
    std::vector<PartialRcMatrix> reps;

    f.put("not-a-checkpoint 1.0.0\nm 4 d 4 stage 1\n4 0 0 0\n");
    CHECK_THROWS_AS(read_checkpoint(f.path, 4, 4, &stage, &reps), checkpoint_error);

    f.put("rcms-checkpoint 0.9.0\nm 4 d 4 stage 1\n4 0 0 0\n");
    CHECK_THROWS_WITH_AS(read_checkpoint(f.path, 4, 4, &stage, &reps),
                         doctest::Contains("version"), checkpoint_error);

    f.put("rcms-checkpoint 1.0.0\nm 5 d 4 stage 1\n4 0 0 0 0\n");
    CHECK_THROWS_AS(read_checkpoint(f.path, 4, 4, &stage, &reps), checkpoint_error);

    f.put("rcms-checkpoint 1.0.0\nm 4 d 4 stage 9\n4 0 0 0\n");
    CHECK_THROWS_AS(read_checkpoint(f.path, 4, 4, &stage, &reps), checkpoint_error);

    f.put("rcms-checkpoint 1.0.0\nm 4 d 4 stage 1\n4 0 x 0\n");
    CHECK_THROWS_WITH_AS(read_checkpoint(f.path, 4, 4, &stage, &reps),
                         doctest::Contains("line 3"), checkpoint_error);

    f.put("rcms-checkpoint 1.0.0\nm 4 d 4 stage 1\n");
    CHECK_THROWS_AS(read_checkpoint(f.path, 4, 4, &stage, &reps), checkpoint_error);
}

TEST_CASE("resume rejects non-canonical representatives") {
    // row order swapped relative to the canonical form
    auto bad = make_matrix({{0, 4, 0, 0}, {4, 0, 0, 0}});
    std::vector<PartialRcMatrix> reps{bad};
    CHECK_THROWS_AS(class_representatives(4, 4, 1, {}, &reps), checkpoint_error);
}

TEST_CASE("resume rejects shape mismatches") {
    auto stage2 = augment(initial_rows(4, 4));
    CHECK_THROWS_AS(class_representatives(5, 4, 1, {}, &stage2), checkpoint_error);
}
