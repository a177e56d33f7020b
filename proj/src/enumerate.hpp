// Builds the class representatives at order m by row augmentation with
// canonical reduction at every stage, plus an independent total count by
// dynamic programming over column-capacity states, plus stage checkpoints.
#pragma once
#include <functional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace rcms {

// One 1 x m row per partition of d into at most m parts (parts
// non-increasing, zero-padded), in the natural partition order.
std::vector<PartialRcMatrix> initial_rows(int m, int d);

// All one-row extensions keeping column sums <= d, reduced to one
// representative per class under (rows x columns) permutations; output
// sorted by canonical key, so results do not depend on the thread count.
std::vector<PartialRcMatrix> augment(const std::vector<PartialRcMatrix>& reps, int threads = 1);

// Called after every completed stage (including the initial one) with the
// current row count and the representative list; used for checkpoints.
using StageCallback = std::function<void(int stage, const std::vector<PartialRcMatrix>&)>;

// Complete class list with orbit sizes and multiplicity factors. When
// `resume` is given, continues from those stage-`resume->front().n`
// representatives instead of starting at stage 1.
std::vector<ClassRep> class_representatives(int m, int d, int threads = 1,
                                            const StageCallback& on_stage = {},
                                            const std::vector<PartialRcMatrix>* resume = nullptr);

// N(m): number of all m x m matrices with margins d, via a DP whose state is
// the multiset of remaining column capacities. No explicit enumeration.
u128 count_total(int m, int d);

void write_checkpoint(const std::string& path, int m, int d, int stage,
                      const std::vector<PartialRcMatrix>& reps);

// false when nothing exists at `path`; throws checkpoint_error when a file
// exists but cannot be used (version/order/margin mismatch, malformed body).
bool read_checkpoint(const std::string& path, int m, int d, int* stage,
                     std::vector<PartialRcMatrix>* reps);

}  // namespace rcms
