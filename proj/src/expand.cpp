#include "expand.hpp"

#include <atomic>
#include <thread>
#include <unordered_map>

#include "errors.hpp"

namespace rcms {

bool operator==(const EdgeBlock& x, const EdgeBlock& y) {
    return x.weight == y.weight && x.inc == y.inc;
}

std::vector<EdgeBlock> row_blocks(const std::uint8_t* row, int m) {
    int slots[4], pos = 0, sum = 0;
    for (int j = 0; j < m; ++j) {
        sum += row[j];
        if (sum > 4) break;
        for (int k = 0; k < row[j]; ++k) slots[pos++] = j;
    }
    if (sum != 4) throw std::invalid_argument("row must sum to 4");
    // the three perfect matchings of four legs
    static constexpr int kPairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    std::vector<EdgeBlock> out;
    for (const auto& p : kPairings) {
        EdgeBlock b;
        b.weight = 8;
        for (int e = 0; e < 2; ++e) {
            int u = slots[p[2 * e]], v = slots[p[2 * e + 1]];
            b.inc[u][v] = static_cast<std::uint8_t>(b.inc[u][v] + 1);
            b.inc[v][u] = static_cast<std::uint8_t>(b.inc[v][u] + 1);  // u == v: loop adds 2
        }
        bool merged = false;
        for (EdgeBlock& prev : out) {
            if (prev.inc == b.inc) {
                prev.weight += b.weight;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(b);
    }
    return out;
}

u64 mult_factor(const RcMatrix& A) {
    static constexpr u64 kFact[9] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};
    if (A.d > 8) throw std::invalid_argument("margin out of range");
    u64 prod = 1;
    for (int i = 0; i < A.n; ++i) {
        u64 denom = 1;
        for (int j = 0; j < A.m; ++j) denom *= kFact[A.a[i][j]];
        prod *= kFact[A.d] / denom;  // multinomial coefficient, exact
    }
    return prod;
}

namespace {

// depth-first product of one block choice per row, accumulating the adjacency
void expand_raw(const RcMatrix& A, std::unordered_map<MatKey, u64, MatKeyHash>& raw) {
    validate_square(A);
    if (A.d != 4) throw unsupported_error("graph expansion requires margin 4");
    const int m = A.m;
    std::vector<std::vector<EdgeBlock>> blocks;
    blocks.reserve(m);
    for (int i = 0; i < m; ++i) blocks.push_back(row_blocks(A.a[i].data(), m));

    std::array<std::array<std::uint8_t, kMaxDim>, kMaxDim> adj{};
    auto rec = [&](auto&& self, int i, u64 weight) -> void {
        if (i == m) {
            MatKey k;
            k.n = static_cast<std::uint8_t>(m);
            for (int r = 0; r < m; ++r) k.rows[r] = pack_row(adj[r].data(), m);
            raw[k] += weight;
            return;
        }
        for (const EdgeBlock& b : blocks[i]) {
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) adj[r][c] = static_cast<std::uint8_t>(adj[r][c] + b.inc[r][c]);
            self(self, i + 1, weight * b.weight);
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) adj[r][c] = static_cast<std::uint8_t>(adj[r][c] - b.inc[r][c]);
        }
    };
    rec(rec, 0, 1);

    u64 total = 0;
    for (const auto& [k, w] : raw) total += w;
    u64 expect = 1;
    for (int i = 0; i < m; ++i) expect *= 24;
    if (total != expect) throw internal_error("expansion weights do not sum to 24^m");
}

}  // namespace

WeightedGraphSet expand_representative(const RcMatrix& A) {
    std::unordered_map<MatKey, u64, MatKeyHash> raw;
    expand_raw(A, raw);
    WeightedGraphSet out;
    for (const auto& [k, w] : raw) out[graph_canonical_key(k, A.m)] += w;
    return out;
}

std::size_t expand_labeled_count(const RcMatrix& A) {
    std::unordered_map<MatKey, u64, MatKeyHash> raw;
    expand_raw(A, raw);
    return raw.size();
}

WeightedGraphSet assemble_order(int m, const std::vector<ClassRep>& classes, int threads) {
    if (threads < 1) threads = 1;
    const std::size_t n = classes.size();
    auto expand_scaled = [&](const ClassRep& c, WeightedGraphSet& acc) {
        const u128 scale = static_cast<u128>(c.orbit_size) * c.mult_factor;
        for (const auto& [k, w] : expand_representative(c.rep)) acc[k] += scale * w;
    };
    if (threads == 1 || n < 2) {
        WeightedGraphSet total;
        for (const ClassRep& c : classes) expand_scaled(c, total);
        return total;
    }
    const int workers = static_cast<int>(std::min<std::size_t>(threads, n));
    std::vector<WeightedGraphSet> partial(workers);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                expand_scaled(classes[i], partial[w]);
        });
    }
    for (auto& t : pool) t.join();
    WeightedGraphSet total;
    for (const WeightedGraphSet& p : partial)
        for (const auto& [k, w] : p) total[k] += w;
    return total;
}

}  // namespace rcms
