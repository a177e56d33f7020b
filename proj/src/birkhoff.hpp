// Convex decompositions of RC matrices into permutation matrices with
// positive integer weights, decomposition signatures built from pairwise
// shared fixed positions, and the signature-based inequivalence test.
#pragma once
#include <string>
#include <vector>

#include "matrix.hpp"

namespace rcms {

// All permutations sigma with A[i][sigma(i)] >= 1 for every row i — the
// perfect matchings of the support. A valid residual (equal row and column
// sums >= 1) always has one; finding none is a bug.
std::vector<Permutation> matchings(const RcMatrix& A);

// A = sum of count_j * P_j with distinct permutations and counts >= 1
// summing to the margin.
struct Decomposition {
    std::vector<std::pair<Permutation, int>> terms;
};

// Every decomposition of A exactly once, found by peeling support matchings
// in non-decreasing permutation order (removing one term of a decomposition
// keeps the rest valid on the residual, so ordered peeling is exhaustive and
// duplicate-free).
std::vector<Decomposition> decompositions(const RcMatrix& A);

// Canonical invariant of a decomposition: the term repeat counts plus the
// pairwise overlap counts |P_i ∩ P_j| (shared positions (i, sigma(i))),
// minimized over orderings of the terms. Invariant under simultaneous
// row/column permutation of all terms.
struct DecompSignature {
    std::vector<int> d;        // repeat count per term
    std::vector<int> overlap;  // upper-triangle pairwise overlaps

    std::string to_string() const;  // e.g. "d=[1,3];ov=[1]"
    friend bool operator==(const DecompSignature& x, const DecompSignature& y);
    friend bool operator<(const DecompSignature& x, const DecompSignature& y);
};

DecompSignature signature(const Decomposition& D);

// Compares the signature multisets of all decompositions of A and B. A
// difference proves inequivalence; equality proves nothing (inequivalent
// matrices can share all signatures), so the test never answers "equivalent".
enum class NonEquivalence { Inequivalent, Inconclusive };
NonEquivalence non_equivalence_test(const RcMatrix& A, const RcMatrix& B);

}  // namespace rcms
