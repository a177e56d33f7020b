#include "oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "enumerate.hpp"
#include "errors.hpp"
#include "expand.hpp"

namespace rcms {

namespace {

// A labeled multigraph on m <= 5 vertices fits in a u64: the m*(m+1)/2
// upper-triangle entries (diagonal included) as 4-bit fields. Entries never
// exceed the degree bound 4, and a loop contributes 2 to its diagonal field,
// so fields stay below 16.
constexpr int kMaxWickDim = 5;

int tri_index(int i, int j, int m) {
    // Row-major upper triangle, i <= j.
    return i * m - i * (i - 1) / 2 + (j - i);
}

MatKey key_from_packed(u64 packed, int m) {
    RcMatrix g;
    g.n = m;
    g.m = m;
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            auto v = static_cast<std::uint8_t>(
                (packed >> (4 * tri_index(i, j, m))) & 0xF);
            g.a[i][j] = v;
            g.a[j][i] = v;
        }
    }
    return mat_key(g);
}

// Pair up the half-edges listed in `free_mask` (bit k = half-edge k free,
// vertex of half-edge k = k / 4): always match the lowest free half-edge
// against every later one. Each complete matching contributes 1 to its
// labeled adjacency's count.
void pair_up(u64 free_mask, u64 packed, int m,
             std::unordered_map<u64, u64>& counts) {
    if (free_mask == 0) {
        ++counts[packed];
        return;
    }
    int lo = __builtin_ctzll(free_mask);
    u64 rest = free_mask & (free_mask - 1);
    int u = lo / 4;
    for (u64 bits = rest; bits != 0; bits &= bits - 1) {
        int hi = __builtin_ctzll(bits);
        int v = hi / 4;
        int step = (u == v) ? 2 : 1;  // a loop raises the diagonal by 2
        u64 next = packed +
                   (static_cast<u64>(step) << (4 * tri_index(u, v, m)));
        pair_up(free_mask ^ (u64{1} << lo) ^ (u64{1} << hi), next, m, counts);
    }
}

void merge_counts(std::unordered_map<u64, u64>& into,
                  const std::unordered_map<u64, u64>& from) {
    for (const auto& [k, v] : from) into[k] += v;
}

}  // namespace

std::vector<std::pair<MatKey, u64>> wick_multiplicities(int m, int threads) {
    if (m < 1) throw std::invalid_argument("order must be at least 1");
    if (m > kMaxWickDim) {
        u128 cost = double_factorial128(4 * m - 1);
        std::ostringstream msg;
        msg << "matching oracle supports order <= " << kMaxWickDim
            << "; order " << m << " would enumerate " << to_decimal(cost)
            << " pairings";
        throw unsupported_error(msg.str());
    }
    int slots = 4 * m;
    u64 all = (slots == 64) ? ~u64{0} : ((u64{1} << slots) - 1);

    std::unordered_map<u64, u64> labeled;
    int lo = __builtin_ctzll(all);
    u64 rest = all & (all - 1);

    // Branch on the partner of half-edge 0; the branches are independent, so
    // they parallelize cleanly when asked to.
    std::vector<u64> branches;
    for (u64 bits = rest; bits != 0; bits &= bits - 1)
        branches.push_back(u64{1} << __builtin_ctzll(bits));

    if (threads <= 1 || branches.size() <= 1) {
        for (u64 hi_bit : branches) {
            int hi = __builtin_ctzll(hi_bit);
            int u = lo / 4, v = hi / 4;
            int step = (u == v) ? 2 : 1;
            u64 packed = static_cast<u64>(step)
                         << (4 * tri_index(std::min(u, v), std::max(u, v), m));
            pair_up(all ^ (u64{1} << lo) ^ hi_bit, packed, m, labeled);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::unordered_map<u64, u64>> partial(
            static_cast<std::size_t>(threads));
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (;;) {
                    std::size_t idx = next.fetch_add(1);
                    if (idx >= branches.size()) break;
                    int hi = __builtin_ctzll(branches[idx]);
                    int u = lo / 4, v = hi / 4;
                    int step = (u == v) ? 2 : 1;
                    u64 packed =
                        static_cast<u64>(step)
                        << (4 * tri_index(std::min(u, v), std::max(u, v), m));
                    pair_up(all ^ (u64{1} << lo) ^ branches[idx], packed, m,
                            partial[static_cast<std::size_t>(t)]);
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& p : partial) merge_counts(labeled, p);
    }

    // Canonical merge and total sanity: every pairing lands somewhere, so the
    // counts must add up to (4m-1)!!.
    std::map<MatKey, u64> merged;
    u128 total = 0;
    for (const auto& [packed, count] : labeled) {
        merged[graph_canonical_key(key_from_packed(packed, m), m)] += count;
        total += count;
    }
    if (total != double_factorial128(4 * m - 1))
        throw internal_error("matching oracle lost pairings at order " +
                             std::to_string(m));
    return {merged.begin(), merged.end()};
}

std::vector<ClassRep> brute_force_classes(int m, int d) {
    // all_matrices enforces its own m <= 4 bound.
    std::map<MatKey, u64> orbit_sizes;
    for (const auto& a : all_matrices(m, d)) ++orbit_sizes[canonical_key(a)];
    std::vector<ClassRep> out;
    out.reserve(orbit_sizes.size());
    for (const auto& [key, size] : orbit_sizes) {
        ClassRep rep;
        rep.rep = matrix_from_key(key, m, d);
        rep.orbit_size = size;
        rep.mult_factor = mult_factor(rep.rep);
        out.push_back(rep);
    }
    return out;
}

namespace {

std::string describe_classes(const std::vector<ClassRep>& reps) {
    std::ostringstream os;
    os << reps.size() << " classes, orbits";
    for (const auto& r : reps) os << ' ' << r.orbit_size;
    return os.str();
}

}  // namespace

std::vector<CheckResult> cross_check(int m, int threads) {
    if (m < 1 || m > kMaxWickDim)
        throw unsupported_error("cross check supports orders 1 through " +
                                std::to_string(kMaxWickDim));
    std::vector<CheckResult> out;

    auto classes = class_representatives(m, 4, threads);

    if (m <= 4) {
        auto brute = brute_force_classes(m, 4);
        CheckResult c;
        c.name = "class_enumeration_vs_brute_force";
        c.expected = describe_classes(brute);
        c.actual = describe_classes(classes);
        c.pass = classes.size() == brute.size();
        if (c.pass) {
            for (std::size_t i = 0; i < classes.size(); ++i) {
                if (mat_key(classes[i].rep) != mat_key(brute[i].rep) ||
                    classes[i].orbit_size != brute[i].orbit_size) {
                    c.pass = false;
                    c.actual += "; diverges at class " + std::to_string(i + 1);
                    break;
                }
            }
        }
        out.push_back(std::move(c));
    }

    auto weights = assemble_order(m, classes, threads);
    auto records = merge({&weights}, m);
    auto wick = wick_multiplicities(m, threads);

    {
        CheckResult c;
        c.name = "pairing_counts_vs_matching_oracle";
        c.expected = std::to_string(wick.size()) + " graphs";
        c.actual = std::to_string(records.size()) + " graphs";
        c.pass = records.size() == wick.size();
        if (c.pass) {
            std::map<MatKey, u128> by_key;
            for (const auto& r : records) by_key[graph_key(r.graph)] = r.m_kleinert;
            for (std::size_t i = 0; i < wick.size(); ++i) {
                auto it = by_key.find(wick[i].first);
                if (it == by_key.end() || it->second != u128{wick[i].second}) {
                    c.pass = false;
                    c.expected = "count " + std::to_string(wick[i].second);
                    c.actual = "pipeline disagrees at oracle graph " +
                               std::to_string(i + 1) +
                               (it == by_key.end()
                                    ? std::string(" (missing)")
                                    : " (count " + to_decimal(it->second) + ")");
                    break;
                }
            }
        }
        out.push_back(std::move(c));
    }

    u128 odd_fact = double_factorial128(4 * m - 1);
    {
        u128 total = 0;
        for (const auto& [key, count] : wick) total += count;
        CheckResult c;
        c.name = "matching_oracle_total";
        c.expected = to_decimal(odd_fact);
        c.actual = to_decimal(total);
        c.pass = total == odd_fact;
        out.push_back(std::move(c));
    }
    {
        u128 total = 0;
        for (const auto& r : records) total += r.m_kleinert;
        CheckResult c;
        c.name = "pairing_count_sum";
        c.expected = to_decimal(odd_fact);
        c.actual = to_decimal(total);
        c.pass = total == odd_fact;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace rcms
