// Expansion of matrices into weighted graphs: per-row edge blocks (the three
// pairings of a vertex's four legs), the per-matrix multiplicity product, and
// the order-level assembly over all classes.
#pragma once
#include <vector>

#include "graphs.hpp"
#include "matrix.hpp"

namespace rcms {

// One weighted adjacency increment contributed by a single row: the row
// names a vertex's four leg endpoints, and each perfect matching of those
// four legs yields edges/loops with weight 8. Equal increments merge, so the
// possible weights at margin 4 are 8, 16 and 24.
struct EdgeBlock {
    u64 weight = 0;
    std::array<std::array<std::uint8_t, kMaxDim>, kMaxDim> inc{};  // symmetric; diagonal = 2x loops

    friend bool operator==(const EdgeBlock& x, const EdgeBlock& y);
};

// row must have m entries in [0,4] summing to 4
std::vector<EdgeBlock> row_blocks(const std::uint8_t* row, int m);

// prod_i d!/(a_i1)!...(a_im)! — invariant under row/column permutations
u64 mult_factor(const RcMatrix& A);

// All graphs of one representative: choose one block per row, multiply the
// weights, sum the increments; merge by canonical graph. The raw weights sum
// to 24^m (checked; a mismatch throws internal_error).
WeightedGraphSet expand_representative(const RcMatrix& A);

// distinct labeled adjacencies before canonicalization (test hook)
std::size_t expand_labeled_count(const RcMatrix& A);

// Total multiplicities at order m: scale each class's expansion by
// orbit_size * mult_factor and merge across classes by canonical graph.
WeightedGraphSet assemble_order(int m, const std::vector<ClassRep>& classes, int threads = 1);

}  // namespace rcms
