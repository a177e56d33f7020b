// RC matrices (rows and columns summing to a fixed margin), the row/column
// permutation action, canonical forms, orbit sizes and Burnside counting.
#pragma once
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rcms {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr int kMaxDim = 7;  // largest supported matrix dimension

std::string to_decimal(u128 v);
u128 factorial128(int n);
u128 pow128(u128 base, int exp);
u128 double_factorial128(int n);  // n!! = n(n-2)(n-4)...

// An n x m grid of entries in [0, d] where every row sums to d and every
// column sums to at most d. A complete RC-magic square has n == m and all
// column sums equal to d; the rectangular case (n < m) appears only while
// building squares row by row.
struct RcMatrix {
    int n = 0;  // rows
    int m = 0;  // columns
    int d = 4;  // margin
    std::array<std::array<std::uint8_t, kMaxDim>, kMaxDim> a{};

    int at(int i, int j) const { return a[i][j]; }
    void set(int i, int j, int v) { a[i][j] = static_cast<std::uint8_t>(v); }
    bool is_square() const { return n == m; }

    friend bool operator==(const RcMatrix& x, const RcMatrix& y);
};

using PartialRcMatrix = RcMatrix;  // n < m: rows complete, columns still open

// Convenience constructor for tests and parsers (row-major).
RcMatrix make_matrix(const std::vector<std::vector<int>>& rows, int d = 4, int m = -1);

void validate_partial(const RcMatrix& A);  // throws std::invalid_argument
void validate_square(const RcMatrix& A);

// A permutation of {0..size-1}; map[i] is the image of i.
struct Permutation {
    int size = 0;
    std::array<std::uint8_t, kMaxDim> map{};

    static Permutation identity(int size);
    friend bool operator==(const Permutation& x, const Permutation& y);
    friend bool operator<(const Permutation& x, const Permutation& y);
};

// All size! permutations in lexicographic order, built once and shared.
const std::vector<Permutation>& all_perms(int size);

// Rows packed one byte per entry, most significant byte first, so unsigned
// comparison of packed rows is lexicographic comparison of the rows.
u64 pack_row(const std::uint8_t* row, int m);

// Dedup / ordering key: packed rows. Total order = row-major lexicographic.
struct MatKey {
    std::array<u64, kMaxDim> rows{};
    std::uint8_t n = 0;

    friend bool operator==(const MatKey& x, const MatKey& y) { return x.n == y.n && x.rows == y.rows; }
    friend bool operator<(const MatKey& x, const MatKey& y) { return x.rows != y.rows ? x.rows < y.rows : x.n < y.n; }
};

struct MatKeyHash {
    std::size_t operator()(const MatKey& k) const {
        u64 h = 1469598103934665603ull;  // FNV-1a
        for (int i = 0; i < k.n; ++i) {
            h ^= k.rows[i];
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h ^ k.n);
    }
};

MatKey mat_key(const RcMatrix& A);                    // rows packed as stored
RcMatrix matrix_from_key(const MatKey& k, int m, int d = 4);

// B[i][j] = A[rows.map[i]][cols.map[j]]; margins are preserved.
RcMatrix apply_perm(const RcMatrix& A, const Permutation& rows, const Permutation& cols);

// Least matrix (row-major lexicographic) over all row/column permutations.
// canonical_key is the fast path: for each column permutation, permute and
// pack the rows, sort them, and keep the least array — equivalent to the full
// (n!·m!) scan because sorting equal-length rows minimises the row-major
// order for a fixed column permutation. canonical_form_scan is the literal
// full scan, kept as the reference the fast path is tested against.
MatKey canonical_key(const RcMatrix& A);
RcMatrix canonical_form(const RcMatrix& A);
RcMatrix canonical_form_scan(const RcMatrix& A);

bool are_equivalent(const RcMatrix& A, const RcMatrix& B);

// Count of pairs (sigma, tau) with P_sigma·A·P_tau = A (square A).
u64 stabilizer_order(const RcMatrix& A);
// Orbit size under the row x column action: (m!)^2 / stabilizer_order.
u64 orbit_size(const RcMatrix& A);

// Every complete m x m matrix with margin d (small m only; the set grows fast).
std::vector<RcMatrix> all_matrices(int m, int d);

// Exact class count via the group average of fixed-point counts; m <= 4.
u64 burnside_class_count(int m, int d);
// The full n(i, j) fixed-point table over (row perm i, column perm j); m <= 3.
std::vector<std::vector<u64>> burnside_fixed_counts(int m, int d);

// A canonical representative with its class data. mult_factor is the
// per-matrix weight ∏_i d!/(a_i1!···a_im!) computed by the expansion module.
struct ClassRep {
    RcMatrix rep;
    u64 orbit_size = 0;
    u64 mult_factor = 0;
};

// Matrix text format: header line "m d", then m lines of m entries.
// parse_matrix_blocks accepts one or more matrices separated by blank lines.
std::string format_matrix(const RcMatrix& A);
std::vector<RcMatrix> parse_matrix_blocks(const std::string& text);

}  // namespace rcms
