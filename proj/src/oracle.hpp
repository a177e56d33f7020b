// Independent ground truth at small order: direct enumeration of all perfect
// matchings of the 4m half-edges (the raw pairing expansion) and a naive
// full-set class enumeration. Used to validate the main pipeline.
#pragma once
#include <string>
#include <vector>

#include "graphs.hpp"
#include "matrix.hpp"

namespace rcms {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string expected;
    std::string actual;
};

// All perfect matchings of 4m half-edges labeled by vertex, counted per
// canonical graph (sorted by key). The per-graph counts equal the pipeline's
// pairing multiplicities and the total is (4m-1)!!. Refuses m > 5 with a
// cost estimate: the matching count grows as (4m-1)!!.
std::vector<std::pair<MatKey, u64>> wick_multiplicities(int m, int threads = 1);

// Classes by brute force: enumerate the full matrix set, group by canonical
// form; orbit sizes are plain group sizes (no stabilizer shortcut). m <= 4.
std::vector<ClassRep> brute_force_classes(int m, int d);

// Pipeline vs oracle at order m (m <= 5): representative lists against brute
// force (m <= 4), per-graph pairing counts against the matching expansion,
// and the (4m-1)!! totals. Any mismatch names the first divergent item.
std::vector<CheckResult> cross_check(int m, int threads = 1);

}  // namespace rcms
