#include "report.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "birkhoff.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "expand.hpp"
#include "oracle.hpp"

namespace rcms {

namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Reference values (orders 1..6). The order-1 and order-2 graph rows follow
// from the matching oracle; everything else is the published table data.
// ---------------------------------------------------------------------------

constexpr u64 kTotalCounts[7] = {0, 1, 5, 120, 10147, 2224955, 1047649905};
constexpr u64 kClassCounts[7] = {0, 1, 3, 9, 43, 264, 2804};
constexpr u64 kGraphCounts[7] = {0, 1, 3, 7, 20, 56, 187};
constexpr u64 kConnectedGraphCounts[7] = {0, 1, 2, 4, 10, 28, 97};

constexpr std::size_t kStageSizes5[5] = {5, 44, 314, 1021, 264};

// (orbit size, per-matrix weight factor) per order-3 class, as a multiset
constexpr std::pair<u64, u64> kOrbitWeight3[9] = {
    {6, 1},  {18, 16}, {9, 36},  {18, 192}, {12, 64},
    {36, 288}, {6, 216}, {9, 864}, {6, 1728}};

struct GraphRow {
    u64 m_total;
    u64 m_kleinert;
    u64 sym;
    bool connected;
};

constexpr GraphRow kTable1[] = {{24, 3, 8, true}};
constexpr GraphRow kTable2[] = {{3456, 9, 128, false},
                                {27648, 72, 16, true},
                                {9216, 24, 48, true}};
constexpr GraphRow kTable3[] = {
    {1244160, 27, 3072, false},  {29859840, 648, 128, false},
    {9953280, 216, 384, false},  {79626240, 1728, 48, true},
    {119439360, 2592, 32, true}, {159252480, 3456, 24, true},
    {79626240, 1728, 48, true}};

// connected rows only (the full order-4/5 tables are engine regressions,
// not reference data)
constexpr GraphRow kConnected4[] = {
    {642105999360, 62208, 128, true},  {2568423997440, 248832, 32, true},
    {1712282664960, 165888, 48, true}, {1712282664960, 165888, 48, true},
    {2568423997440, 248832, 32, true}, {5136847994880, 497664, 16, true},
    {1284211998720, 124416, 64, true}, {570760888320, 55296, 144, true},
    {642105999360, 62208, 128, true},  {2568423997440, 248832, 32, true}};

constexpr GraphRow kConnected5[] = {
    {27738979172352000, 7464960, 128, true},
    {110955916689408000, 29859840, 32, true},
    {221911833378816000, 59719680, 16, true},
    {221911833378816000, 59719680, 16, true},
    {11095591668940800, 2985984, 320, true},
    {110955916689408000, 29859840, 32, true},
    {221911833378816000, 59719680, 16, true},
    {29588244450508800, 7962624, 120, true},
    {55477958344704000, 14929920, 64, true},
    {36985305563136000, 9953280, 96, true},
    {55477958344704000, 14929920, 64, true},
    {55477958344704000, 14929920, 64, true},
    {73970611126272000, 19906560, 48, true},
    {110955916689408000, 29859840, 32, true},
    {27738979172352000, 7464960, 128, true},
    {36985305563136000, 9953280, 96, true},
    {11095591668940800, 2985984, 320, true},
    {36985305563136000, 9953280, 96, true},
    {110955916689408000, 29859840, 32, true},
    {110955916689408000, 29859840, 32, true},
    {73970611126272000, 19906560, 48, true},
    {24656870375424000, 6635520, 144, true},
    {12328435187712000, 3317760, 288, true},
    {73970611126272000, 19906560, 48, true},
    {110955916689408000, 29859840, 32, true},
    {36985305563136000, 9953280, 96, true},
    {55477958344704000, 14929920, 64, true},
    {221911833378816000, 59719680, 16, true}};

// ---------------------------------------------------------------------------
// small rendering helpers
// ---------------------------------------------------------------------------

u64 require_u64(u128 v) {
    if (v > std::numeric_limits<u64>::max())
        throw internal_error("value exceeds 64 bits");
    return static_cast<u64>(v);
}

// "(M_T,M_K,s,conn)" rows sorted, so two renderings match iff the multisets do
std::string render_rows(std::vector<std::array<u128, 4>> rows) {
    std::sort(rows.begin(), rows.end());
    std::ostringstream os;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << (i ? " " : "") << '(' << to_decimal(rows[i][0]) << ','
           << to_decimal(rows[i][1]) << ',' << to_decimal(rows[i][2]) << ','
           << (rows[i][3] ? "conn" : "disc") << ')';
    }
    return os.str();
}

std::string render_pairs(std::vector<std::pair<u64, u64>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    std::ostringstream os;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        os << (i ? " " : "") << '(' << pairs[i].first << ',' << pairs[i].second
           << ')';
    return os.str();
}

template <typename T>
std::string render_list(const std::vector<T>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << xs[i];
    return os.str();
}

template <std::size_t N>
std::vector<std::array<u128, 4>> rows_of(const GraphRow (&table)[N],
                                         bool connected_only) {
    std::vector<std::array<u128, 4>> out;
    for (const GraphRow& r : table)
        if (!connected_only || r.connected)
            out.push_back({r.m_total, r.m_kleinert, r.sym, r.connected ? u128{1} : u128{0}});
    return out;
}

std::vector<std::array<u128, 4>> rows_of(const std::vector<MultiplicityRecord>& recs,
                                         bool connected_only) {
    std::vector<std::array<u128, 4>> out;
    for (const MultiplicityRecord& r : recs)
        if (!connected_only || r.connected)
            out.push_back({r.m_total, r.m_kleinert, r.sym_factor, r.connected ? u128{1} : u128{0}});
    return out;
}

ordered_json matrix_json(const RcMatrix& A) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < A.n; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < A.m; ++j) row.push_back(A.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json graph_json(const VacGraph& G) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < G.m; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < G.m; ++j) row.push_back(G.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string perm_one_line(const Permutation& p) {
    std::ostringstream os;
    for (int i = 0; i < p.size; ++i) os << (i ? " " : "") << (p.map[i] + 1);
    return os.str();
}

ordered_json report_head(const char* command) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// OrderCache
// ---------------------------------------------------------------------------

OrderCache::OrderCache(int threads) : threads_(threads < 1 ? 1 : threads) {}

void OrderCache::set_threads(int threads) { threads_ = threads < 1 ? 1 : threads; }

const std::vector<ClassRep>& OrderCache::classes(int m, int d) {
    return classes_with_checkpoint(m, d, nullptr);
}

const std::vector<ClassRep>& OrderCache::classes_with_checkpoint(
    int m, int d, const std::string* checkpoint_path) {
    const auto key = std::make_pair(m, d);
    if (auto it = classes_.find(key); it != classes_.end()) return it->second;

    StageCallback on_stage;
    std::vector<PartialRcMatrix> resume;
    const std::vector<PartialRcMatrix>* resume_ptr = nullptr;
    if (checkpoint_path != nullptr) {
        int stage = 0;
        if (read_checkpoint(*checkpoint_path, m, d, &stage, &resume)) resume_ptr = &resume;
        const std::string path = *checkpoint_path;
        on_stage = [path, m, d](int done, const std::vector<PartialRcMatrix>& reps) {
            write_checkpoint(path, m, d, done, reps);
        };
    }
    auto reps = class_representatives(m, d, threads_, on_stage, resume_ptr);
    return classes_.emplace(key, std::move(reps)).first->second;
}

const std::vector<MultiplicityRecord>& OrderCache::records(int m) {
    if (auto it = records_.find(m); it != records_.end()) return it->second;
    WeightedGraphSet set = assemble_order(m, classes(m, 4), threads_);
    auto recs = merge({&set}, m);
    return records_.emplace(m, std::move(recs)).first->second;
}

std::vector<std::size_t> OrderCache::stage_sizes(int m, int d) {
    std::vector<std::size_t> sizes;
    class_representatives(m, d, threads_,
                          [&](int, const std::vector<PartialRcMatrix>& reps) {
                              sizes.push_back(reps.size());
                          });
    return sizes;
}

// ---------------------------------------------------------------------------
// JSON / CSV builders
// ---------------------------------------------------------------------------

std::string count_json(OrderCache& cache, int m, int d) {
    if (m < 1 || m > 8) throw unsupported_error("count supports orders 1..8");
    if (d < 1 || d > 8) throw unsupported_error("count supports margins 1..8");
    ordered_json j = report_head("count");
    j["order"] = m;
    j["margin"] = d;
    j["total"] = to_decimal(count_total(m, d));
    // Class counts need the full enumeration; past order 6 that is out of
    // casual reach (use `enumerate` with a checkpoint instead).
    if (m <= 6 && d <= 5)
        j["classes"] = cache.classes(m, d).size();
    else
        j["classes"] = nullptr;
    return j.dump(2) + "\n";
}

namespace {

const std::vector<ClassRep>& enumerate_classes(OrderCache& cache, int m, int d,
                                               const std::string* checkpoint_path) {
    if (m < 1 || m > kMaxDim)
        throw unsupported_error("enumeration supports orders 1.." + std::to_string(kMaxDim));
    if (d < 1 || d > 5) throw unsupported_error("enumeration supports margins 1..5");
    return cache.classes_with_checkpoint(m, d, checkpoint_path);
}

}  // namespace

std::string enumerate_json(OrderCache& cache, int m, int d,
                           const std::string* checkpoint_path) {
    const auto& classes = enumerate_classes(cache, m, d, checkpoint_path);
    ordered_json j = report_head("enumerate");
    j["order"] = m;
    j["margin"] = d;
    j["class_count"] = classes.size();
    j["total_count"] = to_decimal(count_total(m, d));
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        ordered_json c;
        c["index"] = i + 1;
        c["matrix"] = matrix_json(classes[i].rep);
        c["orbit_size"] = classes[i].orbit_size;
        c["mult_factor"] = classes[i].mult_factor;
        list.push_back(std::move(c));
    }
    j["classes"] = std::move(list);
    return j.dump(2) + "\n";
}

std::string enumerate_csv(OrderCache& cache, int m, int d,
                          const std::string* checkpoint_path) {
    const auto& classes = enumerate_classes(cache, m, d, checkpoint_path);
    std::ostringstream os;
    os << "order,index,matrix,orbit_size,mult_factor\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const RcMatrix& A = classes[i].rep;
        os << m << ',' << (i + 1) << ',';
        for (int r = 0; r < A.n; ++r)
            for (int c = 0; c < A.m; ++c) os << (r + c ? " " : "") << A.at(r, c);
        os << ',' << classes[i].orbit_size << ',' << classes[i].mult_factor << '\n';
    }
    return os.str();
}

std::string graphs_json(OrderCache& cache, int m, bool connected_only) {
    if (m < 1 || m > kMaxDim)
        throw unsupported_error("graph assembly supports orders 1.." + std::to_string(kMaxDim));
    const auto& recs = cache.records(m);
    std::size_t connected = 0;
    for (const auto& r : recs) connected += r.connected ? 1 : 0;
    ordered_json j = report_head("graphs");
    j["order"] = m;
    j["graph_count"] = recs.size();
    j["connected_count"] = connected;
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const MultiplicityRecord& r = recs[i];
        if (connected_only && !r.connected) break;  // connected records lead
        ordered_json g;
        g["graph_id"] = graph_id(m, i);
        g["adjacency"] = graph_json(r.graph);
        g["m_total"] = to_decimal(r.m_total);
        g["m_kleinert"] = require_u64(r.m_kleinert);
        g["sym_factor"] = r.sym_factor;
        g["connected"] = r.connected;
        list.push_back(std::move(g));
    }
    j["records"] = std::move(list);
    return j.dump(2) + "\n";
}

std::string decompose_report_json(const std::vector<RcMatrix>& matrices) {
    ordered_json j = report_head("decompose");
    ordered_json list = ordered_json::array();
    std::vector<std::vector<Decomposition>> all;
    all.reserve(matrices.size());
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        const RcMatrix& A = matrices[i];
        if (A.d > kMaxDim)
            throw unsupported_error("decomposition supports margins 1.." +
                                    std::to_string(kMaxDim));
        all.push_back(decompositions(A));
        const auto& decs = all.back();
        ordered_json entry;
        entry["index"] = i + 1;
        entry["order"] = A.m;
        entry["margin"] = A.d;
        entry["matrix"] = matrix_json(A);
        entry["decomposition_count"] = decs.size();
        ordered_json dlist = ordered_json::array();
        std::vector<std::string> sigs;
        for (const Decomposition& D : decs) {
            ordered_json dj;
            ordered_json terms = ordered_json::array();
            for (const auto& [perm, count] : D.terms) {
                ordered_json t;
                t["perm"] = perm_one_line(perm);
                t["count"] = count;
                terms.push_back(std::move(t));
            }
            dj["terms"] = std::move(terms);
            const std::string sig = signature(D).to_string();
            dj["signature"] = sig;
            sigs.push_back(sig);
            dlist.push_back(std::move(dj));
        }
        entry["decompositions"] = std::move(dlist);
        std::sort(sigs.begin(), sigs.end());
        entry["signatures"] = sigs;
        list.push_back(std::move(entry));
    }
    j["matrices"] = std::move(list);

    ordered_json pairwise = ordered_json::array();
    for (std::size_t a = 0; a < matrices.size(); ++a) {
        for (std::size_t b = a + 1; b < matrices.size(); ++b) {
            ordered_json p;
            p["a"] = a + 1;
            p["b"] = b + 1;
            if (matrices[a].m != matrices[b].m || matrices[a].d != matrices[b].d) {
                p["non_equivalence_test"] = "inequivalent";
                p["are_equivalent"] = false;
            } else {
                const auto verdict = non_equivalence_test(matrices[a], matrices[b]);
                p["non_equivalence_test"] =
                    verdict == NonEquivalence::Inequivalent ? "inequivalent"
                                                            : "inconclusive";
                p["are_equivalent"] = are_equivalent(matrices[a], matrices[b]);
            }
            pairwise.push_back(std::move(p));
        }
    }
    j["pairwise"] = std::move(pairwise);
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

namespace {

CheckResult simple_check(std::string name, std::string expected, std::string actual) {
    CheckResult c;
    c.name = std::move(name);
    c.expected = std::move(expected);
    c.actual = std::move(actual);
    c.pass = c.expected == c.actual;
    return c;
}

std::vector<CheckResult> order_checks(OrderCache& cache, int m) {
    std::vector<CheckResult> out;
    const auto& classes = cache.classes(m, 4);
    const auto& records = cache.records(m);

    out.push_back(simple_check("total_count", std::to_string(kTotalCounts[m]),
                               to_decimal(count_total(m, 4))));
    out.push_back(simple_check("class_count", std::to_string(kClassCounts[m]),
                               std::to_string(classes.size())));
    {
        u128 orbit_sum = 0;
        for (const auto& c : classes) orbit_sum += c.orbit_size;
        out.push_back(simple_check("orbit_size_sum",
                                   std::to_string(kTotalCounts[m]),
                                   to_decimal(orbit_sum)));
    }
    if (m == 5) {
        std::vector<std::size_t> expect(std::begin(kStageSizes5), std::end(kStageSizes5));
        out.push_back(simple_check("stage_sizes", render_list(expect),
                                   render_list(cache.stage_sizes(m, 4))));
    }
    if (m == 3) {
        std::vector<std::pair<u64, u64>> expect(std::begin(kOrbitWeight3),
                                                std::end(kOrbitWeight3));
        std::vector<std::pair<u64, u64>> got;
        for (const auto& c : classes) got.emplace_back(c.orbit_size, c.mult_factor);
        out.push_back(simple_check("orbit_and_weight_factors",
                                   render_pairs(std::move(expect)),
                                   render_pairs(std::move(got))));
    }
    {
        std::size_t connected = 0;
        for (const auto& r : records) connected += r.connected ? 1 : 0;
        std::ostringstream expect, got;
        expect << kGraphCounts[m] << " graphs, " << kConnectedGraphCounts[m] << " connected";
        got << records.size() << " graphs, " << connected << " connected";
        out.push_back(simple_check("graph_count", expect.str(), got.str()));
    }
    if (m <= 3) {
        auto expect = m == 1 ? rows_of(kTable1, false)
                             : m == 2 ? rows_of(kTable2, false) : rows_of(kTable3, false);
        out.push_back(simple_check("graph_table", render_rows(std::move(expect)),
                                   render_rows(rows_of(records, false))));
    } else if (m == 4 || m == 5) {
        auto expect = m == 4 ? rows_of(kConnected4, true) : rows_of(kConnected5, true);
        out.push_back(simple_check("connected_graph_table",
                                   render_rows(std::move(expect)),
                                   render_rows(rows_of(records, true))));
    }
    {
        u128 sum = 0;
        for (const auto& r : records) sum += r.m_kleinert;
        out.push_back(simple_check("pairing_sum_identity",
                                   to_decimal(double_factorial128(4 * m - 1)),
                                   to_decimal(sum)));
    }
    {
        CheckResult c;
        c.name = "weight_conservation";
        c.expected = "every representative expands to total weight 24^" + std::to_string(m);
        c.pass = true;
        std::size_t checked = 0;
        const u128 want = pow128(24, m);
        for (std::size_t i = 0; i < classes.size() && c.pass; ++i) {
            u128 sum = 0;
            for (const auto& [key, w] : expand_representative(classes[i].rep)) sum += w;
            if (sum != want) {
                c.pass = false;
                c.actual = "class " + std::to_string(i + 1) + " sums to " + to_decimal(sum);
            }
            ++checked;
        }
        if (c.pass) c.actual = "all " + std::to_string(checked) + " representatives conserve weight";
        out.push_back(std::move(c));
    }
    {
        CheckResult c;
        c.name = "disconnected_factor_rule";
        c.expected = "every disconnected record matches the component product rule";
        c.pass = true;
        std::size_t checked = 0;
        for (std::size_t i = 0; i < records.size() && c.pass; ++i) {
            if (records[i].connected) continue;
            ++checked;
            // group components by isomorphism type
            std::map<MatKey, std::pair<int, int>> groups;  // key -> (order, copies)
            for (const VacGraph& comp : connected_components(records[i].graph)) {
                VacGraph canon = graph_canonical_form(comp);
                auto [it, fresh] = groups.emplace(graph_key(canon), std::make_pair(canon.m, 0));
                (void)fresh;
                ++it->second.second;
            }
            std::vector<std::pair<u64, int>> parts;
            for (const auto& [key, group] : groups) {
                const auto& [order, copies] = group;
                u64 part_sym = 0;
                for (const auto& r : cache.records(order)) {
                    if (graph_key(r.graph) == key) {
                        part_sym = r.sym_factor;
                        break;
                    }
                }
                if (part_sym == 0) {
                    c.pass = false;
                    c.actual = graph_id(m, i) + " has a component missing from order " +
                               std::to_string(order);
                    break;
                }
                parts.emplace_back(part_sym, copies);
            }
            if (c.pass && disconnected_sym_factor(parts) != records[i].sym_factor) {
                c.pass = false;
                c.actual = graph_id(m, i) + " violates the product rule";
            }
        }
        if (c.pass)
            c.actual = "all " + std::to_string(checked) + " disconnected records match";
        out.push_back(std::move(c));
    }
    if (m <= 4)
        out.push_back(simple_check("burnside_class_count",
                                   std::to_string(classes.size()),
                                   std::to_string(burnside_class_count(m, 4))));
    if (m == 2) {
        std::vector<u64> flat;
        for (const auto& row : burnside_fixed_counts(2, 4))
            flat.insert(flat.end(), row.begin(), row.end());
        out.push_back(simple_check("burnside_fixed_counts", "5 1 1 5", render_list(flat)));
    }
    return out;
}

}  // namespace

VerifyOutcome verify_order(OrderCache& cache, int m, bool with_oracle) {
    if (m < 1 || m > 6)
        throw unsupported_error("verify supports orders 1..6 (reference data ends there)");
    std::vector<CheckResult> checks = order_checks(cache, m);
    if (with_oracle) {
        for (auto& c : cross_check(m, cache.threads())) checks.push_back(std::move(c));
    }

    ordered_json j = report_head("verify");
    j["order"] = m;
    j["oracle"] = with_oracle;
    ordered_json list = ordered_json::array();
    bool all = true;
    for (const CheckResult& c : checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["expected"] = c.expected;
        cj["actual"] = c.actual;
        list.push_back(std::move(cj));
        all = all && c.pass;
    }
    j["checks"] = std::move(list);
    j["all_pass"] = all;

    VerifyOutcome out;
    out.json = j.dump(2) + "\n";
    out.all_pass = all;
    return out;
}

}  // namespace rcms
