#include "graphs.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "errors.hpp"

namespace rcms {

bool operator==(const VacGraph& x, const VacGraph& y) {
    if (x.m != y.m) return false;
    for (int i = 0; i < x.m; ++i)
        for (int j = 0; j < x.m; ++j)
            if (x.a[i][j] != y.a[i][j]) return false;
    return true;
}

VacGraph make_graph(const std::vector<std::vector<int>>& rows) {
    VacGraph G;
    G.m = static_cast<int>(rows.size());
    if (G.m < 1 || G.m > kMaxDim) throw std::invalid_argument("graph size out of range");
    for (int i = 0; i < G.m; ++i) {
        if (static_cast<int>(rows[i].size()) != G.m) throw std::invalid_argument("ragged adjacency");
        for (int j = 0; j < G.m; ++j) G.a[i][j] = static_cast<std::uint8_t>(rows[i][j]);
    }
    validate_graph(G);
    return G;
}

void validate_graph(const VacGraph& G) {
    if (G.m < 1 || G.m > kMaxDim) throw internal_error("graph size out of range");
    for (int i = 0; i < G.m; ++i) {
        if (G.a[i][i] % 2 != 0) throw internal_error("odd diagonal entry in adjacency");
        int deg = 0;
        for (int j = 0; j < G.m; ++j) {
            if (G.a[i][j] != G.a[j][i]) throw internal_error("asymmetric adjacency");
            deg += G.a[i][j];
        }
        if (deg != 4) throw internal_error("vertex degree differs from 4");
    }
}

MatKey graph_key(const VacGraph& G) {
    MatKey k;
    k.n = static_cast<std::uint8_t>(G.m);
    for (int i = 0; i < G.m; ++i) k.rows[i] = pack_row(G.a[i].data(), G.m);
    return k;
}

VacGraph graph_from_key(const MatKey& k, int m) {
    VacGraph G;
    G.m = m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            G.a[i][j] = static_cast<std::uint8_t>((k.rows[i] >> (8 * (m - 1 - j))) & 0xff);
    return G;
}

MatKey graph_canonical_key(const MatKey& labeled, int m) {
    thread_local std::unordered_map<MatKey, MatKey, MatKeyHash> memo;
    auto hit = memo.find(labeled);
    if (hit != memo.end()) return hit->second;

    std::array<std::array<std::uint8_t, kMaxDim>, kMaxDim> g{};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            g[i][j] = static_cast<std::uint8_t>((labeled.rows[i] >> (8 * (m - 1 - j))) & 0xff);

    MatKey best;
    best.n = static_cast<std::uint8_t>(m);
    bool have = false;
    std::array<u64, kMaxDim> cur{};
    for (const auto& p : all_perms(m)) {
        for (int i = 0; i < m; ++i) {
            u64 v = 0;
            const std::uint8_t* src = g[p.map[i]].data();
            for (int j = 0; j < m; ++j) v = (v << 8) | src[p.map[j]];
            cur[i] = v;
        }
        if (!have) {
            best.rows = cur;
            have = true;
            continue;
        }
        for (int i = 0; i < m; ++i) {
            if (cur[i] < best.rows[i]) {
                best.rows = cur;
                break;
            }
            if (cur[i] > best.rows[i]) break;
        }
    }
    memo.emplace(labeled, best);
    return best;
}

VacGraph graph_canonical_form(const VacGraph& G) {
    return graph_from_key(graph_canonical_key(graph_key(G), G.m), G.m);
}

bool is_connected(const VacGraph& G) {
    int seen = 1, stack[kMaxDim], top = 0;
    stack[top++] = 0;
    int mask = 1;
    while (top > 0) {
        int u = stack[--top];
        for (int v = 0; v < G.m; ++v) {
            if (v != u && G.a[u][v] > 0 && !(mask & (1 << v))) {
                mask |= 1 << v;
                ++seen;
                stack[top++] = v;
            }
        }
    }
    return seen == G.m;
}

std::vector<VacGraph> connected_components(const VacGraph& G) {
    std::vector<VacGraph> out;
    int visited = 0;
    for (int s = 0; s < G.m; ++s) {
        if (visited & (1 << s)) continue;
        // collect the part reachable from s
        int part = 1 << s;
        int stack[kMaxDim], top = 0;
        stack[top++] = s;
        while (top > 0) {
            int u = stack[--top];
            for (int v = 0; v < G.m; ++v) {
                if (v != u && G.a[u][v] > 0 && !(part & (1 << v))) {
                    part |= 1 << v;
                    stack[top++] = v;
                }
            }
        }
        visited |= part;
        std::vector<int> verts;
        for (int v = 0; v < G.m; ++v)
            if (part & (1 << v)) verts.push_back(v);
        VacGraph C;
        C.m = static_cast<int>(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = 0; j < verts.size(); ++j)
                C.a[i][j] = G.a[verts[i]][verts[j]];
        out.push_back(C);
    }
    return out;
}

u64 disconnected_sym_factor(const std::vector<std::pair<u64, int>>& components) {
    u128 r = 1;
    for (const auto& [s, count] : components) {
        if (count < 1) throw std::invalid_argument("component count must be positive");
        r *= factorial128(count);
        r *= pow128(s, count);
    }
    if (r > ~static_cast<u64>(0)) throw internal_error("symmetry factor out of 64-bit range");
    return static_cast<u64>(r);
}

std::vector<MultiplicityRecord> merge(const std::vector<const WeightedGraphSet*>& sets, int m) {
    WeightedGraphSet total;
    for (const WeightedGraphSet* s : sets)
        for (const auto& [k, w] : *s) {
            if (w == 0) throw internal_error("zero multiplicity in weighted graph set");
            total[k] += w;
        }
    const u128 kleinert_denom = factorial128(2 * m) * pow128(2, 2 * m);
    const u128 vertex_terms = pow128(24, m) * factorial128(m);  // (4!)^m·m!
    std::vector<MultiplicityRecord> recs;
    recs.reserve(total.size());
    for (const auto& [k, mt] : total) {
        if (graph_canonical_key(k, m) != k) throw internal_error("weighted graph set key not canonical");
        MultiplicityRecord r;
        r.graph = graph_from_key(k, m);
        validate_graph(r.graph);
        r.m_total = mt;
        if (mt % kleinert_denom != 0) throw internal_error("total multiplicity not divisible by (2m)!*2^(2m)");
        r.m_kleinert = mt / kleinert_denom;
        if (vertex_terms % r.m_kleinert != 0) throw internal_error("pairing count does not divide (4!)^m*m!");
        r.sym_factor = static_cast<u64>(vertex_terms / r.m_kleinert);
        r.connected = is_connected(r.graph);
        recs.push_back(r);
    }
    std::sort(recs.begin(), recs.end(), [](const MultiplicityRecord& x, const MultiplicityRecord& y) {
        if (x.connected != y.connected) return x.connected;
        return graph_key(x.graph) < graph_key(y.graph);
    });
    return recs;
}

std::string graph_id(int m, std::size_t index0) {
    return "g" + std::to_string(m) + "_" + std::to_string(index0 + 1);
}

std::string to_dot(const VacGraph& G, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    os << "  node [shape=circle];\n";
    for (int i = 0; i < G.m; ++i) os << "  v" << i << ";\n";
    for (int i = 0; i < G.m; ++i) {
        for (int k = 0; k < G.a[i][i] / 2; ++k) os << "  v" << i << " -- v" << i << ";\n";
        for (int j = i + 1; j < G.m; ++j)
            for (int k = 0; k < G.a[i][j]; ++k) os << "  v" << i << " -- v" << j << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string records_csv(const std::vector<MultiplicityRecord>& recs, int m, bool connected_only) {
    std::ostringstream os;
    os << "order,graph_id,canonical_adjacency,M_T,M_K,s,connected\n";
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        if (connected_only && !r.connected) continue;
        os << m << ',' << graph_id(m, i) << ',';
        for (int a = 0; a < r.graph.m; ++a)
            for (int b = 0; b < r.graph.m; ++b) os << (a == 0 && b == 0 ? "" : " ") << r.graph.at(a, b);
        os << ',' << to_decimal(r.m_total) << ',' << to_decimal(r.m_kleinert) << ',' << r.sym_factor
           << ',' << (r.connected ? "true" : "false") << '\n';
    }
    return os.str();
}

}  // namespace rcms
