#include "enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "errors.hpp"
#include "expand.hpp"

namespace rcms {

namespace {
constexpr const char* kCheckpointMagic = "rcms-checkpoint";
constexpr const char* kToolVersionStr = "1.0.0";

void check_limits(int m, int d) {
    if (m < 1 || m > kMaxDim) throw std::invalid_argument("order out of range 1..7");
    if (d < 1 || d > 5) throw unsupported_error("class enumeration supports margins 1..5");
}
}  // namespace

std::vector<PartialRcMatrix> initial_rows(int m, int d) {
    check_limits(m, d);
    std::vector<PartialRcMatrix> out;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int rem, int mx) -> void {
        if (rem == 0) {
            PartialRcMatrix A;
            A.n = 1;
            A.m = m;
            A.d = d;
            for (std::size_t j = 0; j < parts.size(); ++j) A.a[0][j] = static_cast<std::uint8_t>(parts[j]);
            out.push_back(A);
            return;
        }
        if (static_cast<int>(parts.size()) == m) return;
        for (int p = std::min(rem, mx); p >= 1; --p) {
            parts.push_back(p);
            self(self, rem - p, p);
            parts.pop_back();
        }
    };
    rec(rec, d, d);
    return out;
}

namespace {

// one-row extensions of a single parent, canonical keys pushed into `sink`
template <typename Sink>
void extend_parent(const PartialRcMatrix& A, Sink&& sink) {
    const int m = A.m, d = A.d, n = A.n;
    int caps[kMaxDim], suffix[kMaxDim + 1];
    for (int j = 0; j < m; ++j) {
        int cs = 0;
        for (int i = 0; i < n; ++i) cs += A.a[i][j];
        caps[j] = d - cs;
    }
    suffix[m] = 0;
    for (int j = m - 1; j >= 0; --j) suffix[j] = suffix[j + 1] + caps[j];
    PartialRcMatrix child = A;
    child.n = n + 1;
    // compositions of d within caps, lexicographic
    auto rec = [&](auto&& self, int j, int rem) -> void {
        if (j == m) {
            if (rem == 0) sink(canonical_key(child));
            return;
        }
        if (rem > suffix[j]) return;
        const int hi = std::min(rem, caps[j]);
        for (int v = 0; v <= hi; ++v) {
            child.a[n][j] = static_cast<std::uint8_t>(v);
            self(self, j + 1, rem - v);
        }
        child.a[n][j] = 0;
    };
    rec(rec, 0, d);
}

}  // namespace

std::vector<PartialRcMatrix> augment(const std::vector<PartialRcMatrix>& reps, int threads) {
    if (reps.empty()) return {};
    const int m = reps[0].m, d = reps[0].d, n = reps[0].n;
    if (n >= m) throw std::invalid_argument("representatives already have m rows");
    if (threads < 1) threads = 1;

    std::vector<MatKey> keys;
    if (threads == 1 || reps.size() < 16) {
        std::unordered_set<MatKey, MatKeyHash> seen;
        for (const auto& A : reps) extend_parent(A, [&](const MatKey& k) { seen.insert(k); });
        keys.assign(seen.begin(), seen.end());
    } else {
        const int workers = static_cast<int>(std::min<std::size_t>(threads, reps.size()));
        std::vector<std::unordered_set<MatKey, MatKeyHash>> local(workers);
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = next.fetch_add(1); i < reps.size(); i = next.fetch_add(1))
                    extend_parent(reps[i], [&](const MatKey& k) { local[w].insert(k); });
            });
        }
        for (auto& t : pool) t.join();
        std::unordered_set<MatKey, MatKeyHash> seen;
        for (const auto& l : local) seen.insert(l.begin(), l.end());
        keys.assign(seen.begin(), seen.end());
    }
    std::sort(keys.begin(), keys.end());
    std::vector<PartialRcMatrix> out;
    out.reserve(keys.size());
    for (const MatKey& k : keys) out.push_back(matrix_from_key(k, m, d));
    return out;
}

std::vector<ClassRep> class_representatives(int m, int d, int threads, const StageCallback& on_stage,
                                            const std::vector<PartialRcMatrix>* resume) {
    check_limits(m, d);
    std::vector<PartialRcMatrix> reps;
    int stage;
    if (resume && !resume->empty()) {
        reps = *resume;
        stage = reps[0].n;
        for (const auto& A : reps) {
            if (A.m != m || A.d != d || A.n != stage) throw checkpoint_error("resume data shape mismatch");
            try {
                if (stage == m)
                    validate_square(A);
                else
                    validate_partial(A);
            } catch (const std::invalid_argument& e) {
                throw checkpoint_error(std::string("resume representative invalid: ") + e.what());
            }
            if (canonical_key(A) != mat_key(A)) throw checkpoint_error("resume representative not canonical");
        }
    } else {
        reps = initial_rows(m, d);
        stage = 1;
        if (on_stage) on_stage(stage, reps);
    }
    while (stage < m) {
        reps = augment(reps, threads);
        ++stage;
        if (on_stage) on_stage(stage, reps);
    }
    std::vector<ClassRep> out;
    out.reserve(reps.size());
    for (const auto& A : reps) {
        ClassRep c;
        c.rep = A;
        c.orbit_size = orbit_size(A);
        c.mult_factor = mult_factor(A);
        out.push_back(c);
    }
    return out;
}

u128 count_total(int m, int d) {
    if (m < 1 || m > 16) throw std::invalid_argument("order out of range 1..16");
    if (d < 1 || d > 8) throw std::invalid_argument("margin out of range 1..8");
    // state: counts of columns by remaining capacity 0..d, packed into u64
    // (5 bits per count: up to 9 counts of at most 16 columns each)
    auto pack_state = [d](const int* c) {
        u64 v = 0;
        for (int k = 0; k <= d; ++k) v = (v << 5) | static_cast<unsigned>(c[k]);
        return v;
    };
    // binomials up to 16
    static u64 choose[17][17];
    for (int i = 0; i <= 16; ++i) {
        choose[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : 0);
    }

    std::unordered_map<u64, u128> states;
    {
        int c[9] = {0};
        c[d] = m;
        states.emplace(pack_state(c), 1);
    }
    for (int row = 0; row < m; ++row) {
        std::unordered_map<u64, u128> next;
        for (const auto& [packed, ways] : states) {
            int c[9];
            for (int k = 0; k <= d; ++k) c[k] = static_cast<int>((packed >> (5 * (d - k))) & 0x1f);
            // distribute d units over capacity classes: within class k, choose
            // t_j columns receiving exactly j units (j descending kills order
            // ambiguity); multiply the ways of choosing those columns
            int ns[9];
            for (int k = 0; k <= d; ++k) ns[k] = c[k];
            auto rec_class = [&](auto&& self, int k, int rem, u64 mult) -> void {
                if (k == 0 || rem == 0) {
                    if (rem == 0) next[pack_state(ns)] += ways * static_cast<u128>(mult);
                    return;
                }
                auto rec_amount = [&](auto&& self2, int j, int left_cols, int rem2, u64 m2) -> void {
                    if (j == 0) {
                        self(self, k - 1, rem2, m2);
                        return;
                    }
                    const int maxt = std::min(left_cols, rem2 / j);
                    for (int t = 0; t <= maxt; ++t) {
                        if (t > 0) {
                            ns[k] -= t;
                            ns[k - j] += t;
                        }
                        self2(self2, j - 1, left_cols - t, rem2 - t * j, m2 * choose[left_cols][t]);
                        if (t > 0) {
                            ns[k] += t;
                            ns[k - j] -= t;
                        }
                    }
                };
                rec_amount(rec_amount, std::min(k, rem), c[k], rem, mult);
            };
            rec_class(rec_class, d, d, 1);
        }
        states = std::move(next);
    }
    int done[9] = {0};
    done[0] = m;
    auto it = states.find(pack_state(done));
    return it == states.end() ? 0 : it->second;
}

void write_checkpoint(const std::string& path, int m, int d, int stage,
                      const std::vector<PartialRcMatrix>& reps) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw checkpoint_error("cannot write checkpoint file: " + path);
        os << kCheckpointMagic << ' ' << kToolVersionStr << '\n';
        os << "m " << m << " d " << d << " stage " << stage << '\n';
        for (const auto& A : reps) {
            for (int i = 0; i < A.n; ++i)
                for (int j = 0; j < A.m; ++j) os << (i + j ? " " : "") << static_cast<int>(A.a[i][j]);
            os << '\n';
        }
        if (!os) throw checkpoint_error("short write on checkpoint file: " + path);
    }
    std::filesystem::rename(tmp, path);
}

bool read_checkpoint(const std::string& path, int m, int d, int* stage,
                     std::vector<PartialRcMatrix>* reps) {
    std::ifstream is(path);
    if (!is) return false;
    std::string magic, version;
    if (!(is >> magic >> version)) throw checkpoint_error("checkpoint header unreadable: " + path);
    if (magic != kCheckpointMagic) throw checkpoint_error("not a checkpoint file: " + path);
    if (version != kToolVersionStr)
        throw checkpoint_error("checkpoint version " + version + " does not match tool version " +
                               kToolVersionStr);
    std::string km, kd, ks;
    int fm = 0, fd = 0, fs = 0;
    if (!(is >> km >> fm >> kd >> fd >> ks >> fs) || km != "m" || kd != "d" || ks != "stage")
        throw checkpoint_error("checkpoint shape record unreadable: " + path);
    if (fm != m || fd != d)
        throw checkpoint_error("checkpoint is for order " + std::to_string(fm) + ", margin " +
                               std::to_string(fd));
    if (fs < 1 || fs > fm) throw checkpoint_error("checkpoint stage out of range");
    std::string rest;
    std::getline(is, rest);
    reps->clear();
    std::string line;
    int line_no = 2;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        PartialRcMatrix A;
        A.n = fs;
        A.m = m;
        A.d = d;
        int v;
        for (int i = 0; i < fs; ++i)
            for (int j = 0; j < m; ++j) {
                if (!(ls >> v) || v < 0 || v > d)
                    throw checkpoint_error("checkpoint line " + std::to_string(line_no) + " malformed");
                A.a[i][j] = static_cast<std::uint8_t>(v);
            }
        if (ls >> v) throw checkpoint_error("checkpoint line " + std::to_string(line_no) + " has extra data");
        validate_partial(A);
        reps->push_back(A);
    }
    if (reps->empty()) throw checkpoint_error("checkpoint has no representatives: " + path);
    *stage = fs;
    return true;
}

}  // namespace rcms
