// Degree-4 multigraphs as symmetric adjacency matrices: canonical labeling
// under vertex relabeling, merging with exact normalizations, connectivity,
// the disconnected symmetry-factor rule, and DOT/CSV output.
#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace rcms {

// Symmetric m x m adjacency; the diagonal stores twice the loop count, so
// every row sums to 4 (each vertex has degree 4).
struct VacGraph {
    int m = 0;
    std::array<std::array<std::uint8_t, kMaxDim>, kMaxDim> a{};

    int at(int i, int j) const { return a[i][j]; }
    friend bool operator==(const VacGraph& x, const VacGraph& y);
};

VacGraph make_graph(const std::vector<std::vector<int>>& rows);
void validate_graph(const VacGraph& G);  // symmetry, even diagonal, degree 4

MatKey graph_key(const VacGraph& G);
VacGraph graph_from_key(const MatKey& k, int m);

// Least adjacency (row-major) over all simultaneous row/column relabelings.
// Memoised per thread: expansion revisits the same labeled graphs constantly.
MatKey graph_canonical_key(const MatKey& labeled, int m);
VacGraph graph_canonical_form(const VacGraph& G);

// canonical adjacency -> exact multiplicity
using WeightedGraphSet = std::map<MatKey, u128>;

struct MultiplicityRecord {
    VacGraph graph;       // canonical form
    u128 m_total = 0;     // functional-derivative count
    u128 m_kleinert = 0;  // m_total / ((2m)!·2^{2m}) — Wick pairing count
    u64 sym_factor = 0;   // (4!)^m·m! / m_kleinert
    bool connected = false;
};

// Sum multiplicities per canonical graph, then normalize with exact division
// (a remainder means a bug upstream). Sorted: connected records first, then
// canonical adjacency ascending — so ids are stable and connected records
// form a prefix.
std::vector<MultiplicityRecord> merge(const std::vector<const WeightedGraphSet*>& sets, int m);

bool is_connected(const VacGraph& G);
// Vertex partition by edge reachability, each part re-indexed as a graph
// (original vertex order kept within a part). Sorted by part vertex lists.
std::vector<VacGraph> connected_components(const VacGraph& G);

// Symmetry factor of a disconnected graph from its components, given as
// (component sym_factor, count of isomorphic copies) pairs:
// prod_i count_i! * s_i^{count_i}.
u64 disconnected_sym_factor(const std::vector<std::pair<u64, int>>& components);

std::string to_dot(const VacGraph& G, const std::string& name);

// CSV columns: order, graph_id, canonical_adjacency, M_T, M_K, s, connected
std::string records_csv(const std::vector<MultiplicityRecord>& recs, int m, bool connected_only);

std::string graph_id(int m, std::size_t index0);  // 1-based ids: "g3_1"

}  // namespace rcms
