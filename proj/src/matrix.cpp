#include "matrix.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace rcms {

std::string to_decimal(u128 v) {
    if (v == 0) return "0";
    char buf[48];
    int pos = 48;
    while (v > 0) {
        buf[--pos] = static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    }
    return std::string(buf + pos, buf + 48);
}

u128 factorial128(int n) {
    u128 r = 1;
    for (int k = 2; k <= n; ++k) r *= static_cast<unsigned>(k);
    return r;
}

u128 pow128(u128 base, int exp) {
    u128 r = 1;
    for (int k = 0; k < exp; ++k) r *= base;
    return r;
}

u128 double_factorial128(int n) {
    u128 r = 1;
    for (int k = n; k > 1; k -= 2) r *= static_cast<unsigned>(k);
    return r;
}

bool operator==(const RcMatrix& x, const RcMatrix& y) {
    if (x.n != y.n || x.m != y.m || x.d != y.d) return false;
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.m; ++j)
            if (x.a[i][j] != y.a[i][j]) return false;
    return true;
}

RcMatrix make_matrix(const std::vector<std::vector<int>>& rows, int d, int m) {
    RcMatrix A;
    A.n = static_cast<int>(rows.size());
    A.m = m >= 0 ? m : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    A.d = d;
    if (A.n > kMaxDim || A.m > kMaxDim) throw std::invalid_argument("matrix dimension above supported maximum");
    for (int i = 0; i < A.n; ++i) {
        if (static_cast<int>(rows[i].size()) != A.m) throw std::invalid_argument("ragged matrix rows");
        for (int j = 0; j < A.m; ++j) {
            if (rows[i][j] < 0 || rows[i][j] > 255) throw std::invalid_argument("entry out of range");
            A.a[i][j] = static_cast<std::uint8_t>(rows[i][j]);
        }
    }
    return A;
}

void validate_partial(const RcMatrix& A) {
    if (A.n < 1 || A.m < 1 || A.n > A.m || A.m > kMaxDim)
        throw std::invalid_argument("bad matrix shape");
    if (A.d < 1) throw std::invalid_argument("margin must be positive");
    for (int j = 0; j < A.m; ++j) {
        int cs = 0;
        for (int i = 0; i < A.n; ++i) cs += A.a[i][j];
        if (cs > A.d) throw std::invalid_argument("column sum exceeds margin");
    }
    for (int i = 0; i < A.n; ++i) {
        int rs = 0;
        for (int j = 0; j < A.m; ++j) {
            if (A.a[i][j] > A.d) throw std::invalid_argument("entry exceeds margin");
            rs += A.a[i][j];
        }
        if (rs != A.d) throw std::invalid_argument("row sum differs from margin");
    }
}

void validate_square(const RcMatrix& A) {
    validate_partial(A);
    if (A.n != A.m) throw std::invalid_argument("matrix is not square");
    for (int j = 0; j < A.m; ++j) {
        int cs = 0;
        for (int i = 0; i < A.n; ++i) cs += A.a[i][j];
        if (cs != A.d) throw std::invalid_argument("column sum differs from margin");
    }
}

Permutation Permutation::identity(int size) {
    Permutation p;
    p.size = size;
    for (int i = 0; i < size; ++i) p.map[i] = static_cast<std::uint8_t>(i);
    return p;
}

bool operator==(const Permutation& x, const Permutation& y) {
    return x.size == y.size && std::equal(x.map.begin(), x.map.begin() + x.size, y.map.begin());
}

bool operator<(const Permutation& x, const Permutation& y) {
    return std::lexicographical_compare(x.map.begin(), x.map.begin() + x.size,
                                        y.map.begin(), y.map.begin() + y.size);
}

const std::vector<Permutation>& all_perms(int size) {
    if (size < 1 || size > kMaxDim) throw std::invalid_argument("permutation size out of range");
    static std::array<std::vector<Permutation>, kMaxDim + 1> table;
    static std::once_flag built;
    std::call_once(built, [] {
        for (int s = 1; s <= kMaxDim; ++s) {
            std::array<std::uint8_t, kMaxDim> idx{};
            for (int i = 0; i < s; ++i) idx[i] = static_cast<std::uint8_t>(i);
            do {
                Permutation p;
                p.size = s;
                p.map = idx;
                table[s].push_back(p);
            } while (std::next_permutation(idx.begin(), idx.begin() + s));
        }
    });
    return table[size];
}

u64 pack_row(const std::uint8_t* row, int m) {
    u64 v = 0;
    for (int j = 0; j < m; ++j) v = (v << 8) | row[j];
    return v;
}

MatKey mat_key(const RcMatrix& A) {
    MatKey k;
    k.n = static_cast<std::uint8_t>(A.n);
    for (int i = 0; i < A.n; ++i) k.rows[i] = pack_row(A.a[i].data(), A.m);
    return k;
}

RcMatrix matrix_from_key(const MatKey& k, int m, int d) {
    RcMatrix A;
    A.n = k.n;
    A.m = m;
    A.d = d;
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < m; ++j)
            A.a[i][j] = static_cast<std::uint8_t>((k.rows[i] >> (8 * (m - 1 - j))) & 0xff);
    return A;
}

RcMatrix apply_perm(const RcMatrix& A, const Permutation& rows, const Permutation& cols) {
    if (rows.size != A.n || cols.size != A.m) throw std::invalid_argument("permutation size mismatch");
    RcMatrix B;
    B.n = A.n;
    B.m = A.m;
    B.d = A.d;
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.m; ++j)
            B.a[i][j] = A.a[rows.map[i]][cols.map[j]];
    return B;
}

MatKey canonical_key(const RcMatrix& A) {
    const auto& perms = all_perms(A.m);
    const int n = A.n, m = A.m;
    MatKey best;
    best.n = static_cast<std::uint8_t>(n);
    bool have = false;
    std::array<u64, kMaxDim> cur{};
    for (const auto& p : perms) {
        for (int i = 0; i < n; ++i) {
            u64 v = 0;
            const std::uint8_t* row = A.a[i].data();
            for (int j = 0; j < m; ++j) v = (v << 8) | row[p.map[j]];
            cur[i] = v;
        }
        // insertion sort: n <= 7
        for (int i = 1; i < n; ++i) {
            u64 v = cur[i];
            int k = i;
            while (k > 0 && cur[k - 1] > v) {
                cur[k] = cur[k - 1];
                --k;
            }
            cur[k] = v;
        }
        if (!have) {
            best.rows = cur;
            have = true;
            continue;
        }
        for (int i = 0; i < n; ++i) {
            if (cur[i] < best.rows[i]) {
                best.rows = cur;
                break;
            }
            if (cur[i] > best.rows[i]) break;
        }
    }
    return best;
}

RcMatrix canonical_form(const RcMatrix& A) { return matrix_from_key(canonical_key(A), A.m, A.d); }

RcMatrix canonical_form_scan(const RcMatrix& A) {
    const auto& rp = all_perms(A.n);
    const auto& cp = all_perms(A.m);
    RcMatrix best;
    MatKey best_key;
    bool have = false;
    for (const auto& r : rp) {
        for (const auto& c : cp) {
            RcMatrix B = apply_perm(A, r, c);
            MatKey k = mat_key(B);
            if (!have || k < best_key) {
                best = B;
                best_key = k;
                have = true;
            }
        }
    }
    return best;
}

bool are_equivalent(const RcMatrix& A, const RcMatrix& B) {
    if (A.n != B.n || A.m != B.m || A.d != B.d) throw std::invalid_argument("dimension mismatch");
    return canonical_key(A) == canonical_key(B);
}

u64 stabilizer_order(const RcMatrix& A) {
    if (!A.is_square()) throw std::invalid_argument("stabilizer requires a square matrix");
    const int m = A.m;
    // base: sorted packed columns of A, and the product of multiplicities of
    // equal columns (the number of column bijections fixing the multiset)
    std::array<u64, kMaxDim> base{};
    for (int j = 0; j < m; ++j) {
        u64 v = 0;
        for (int i = 0; i < m; ++i) v = (v << 8) | A.a[i][j];
        base[j] = v;
    }
    std::sort(base.begin(), base.begin() + m);
    u64 mult = 1;
    for (int j = 0; j < m;) {
        int k = j;
        while (k < m && base[k] == base[j]) ++k;
        for (int c = 2; c <= k - j; ++c) mult *= static_cast<u64>(c);
        j = k;
    }
    // a row permutation sigma contributes iff the columns of P_sigma·A form
    // the same multiset; it then admits exactly `mult` column permutations
    u64 total = 0;
    std::array<u64, kMaxDim> cur{};
    for (const auto& p : all_perms(m)) {
        for (int j = 0; j < m; ++j) {
            u64 v = 0;
            for (int i = 0; i < m; ++i) v = (v << 8) | A.a[p.map[i]][j];
            cur[j] = v;
        }
        std::sort(cur.begin(), cur.begin() + m);
        if (std::equal(cur.begin(), cur.begin() + m, base.begin())) total += mult;
    }
    return total;
}

u64 orbit_size(const RcMatrix& A) {
    u64 g = 1;
    for (int k = 2; k <= A.m; ++k) g *= static_cast<u64>(k);
    g *= g;  // (m!)^2
    u64 st = stabilizer_order(A);
    if (st == 0 || g % st != 0) throw internal_error("stabilizer order does not divide the group order");
    return g / st;
}

namespace {

// extend partial rows depth-first; row entries bounded by remaining column capacity
void all_matrices_rec(int m, int d, int row, std::array<int, kMaxDim>& caps,
                      RcMatrix& work, std::vector<RcMatrix>& out) {
    if (row == m) {
        bool full = true;
        for (int j = 0; j < m; ++j)
            if (caps[j] != 0) full = false;
        if (full) out.push_back(work);
        return;
    }
    // compositions of d into m parts within caps, lexicographic
    std::array<int, kMaxDim> row_vals{};
    int suffix[kMaxDim + 1];
    suffix[m] = 0;
    for (int j = m - 1; j >= 0; --j) suffix[j] = suffix[j + 1] + caps[j];
    auto rec = [&](auto&& self, int j, int rem) -> void {
        if (j == m) {
            if (rem != 0) return;
            for (int t = 0; t < m; ++t) work.a[row][t] = static_cast<std::uint8_t>(row_vals[t]);
            for (int t = 0; t < m; ++t) caps[t] -= row_vals[t];
            all_matrices_rec(m, d, row + 1, caps, work, out);
            for (int t = 0; t < m; ++t) caps[t] += row_vals[t];
            return;
        }
        if (rem > suffix[j]) return;
        int hi = std::min(rem, caps[j]);
        for (int v = 0; v <= hi; ++v) {
            row_vals[j] = v;
            self(self, j + 1, rem - v);
        }
        row_vals[j] = 0;
    };
    rec(rec, 0, d);
}

}  // namespace

std::vector<RcMatrix> all_matrices(int m, int d) {
    if (m < 1 || m > 4) throw unsupported_error("full matrix set only enumerated for m <= 4");
    if (d < 1 || d > 8) throw std::invalid_argument("margin out of range");
    std::vector<RcMatrix> out;
    std::array<int, kMaxDim> caps{};
    for (int j = 0; j < m; ++j) caps[j] = d;
    RcMatrix work;
    work.n = work.m = m;
    work.d = d;
    all_matrices_rec(m, d, 0, caps, work, out);
    return out;
}

u64 burnside_class_count(int m, int d) {
    if (m == 1) return 1;
    if (m < 1 || m > 4) throw unsupported_error("Burnside count by direct fixed-point scan is limited to m <= 4");
    // sum over matrices of |Stab(A)| equals the sum over group elements of
    // their fixed-point counts; divide by the group order
    u128 total = 0;
    for (const RcMatrix& A : all_matrices(m, d)) total += stabilizer_order(A);
    u64 g = 1;
    for (int k = 2; k <= m; ++k) g *= static_cast<u64>(k);
    g *= g;
    if (total % g != 0) throw internal_error("Burnside average is not an integer");
    return static_cast<u64>(total / g);
}

std::vector<std::vector<u64>> burnside_fixed_counts(int m, int d) {
    if (m < 1 || m > 3) throw unsupported_error("fixed-point table only built for m <= 3");
    const auto mats = all_matrices(m, d);
    const auto& perms = all_perms(m);
    const std::size_t np = perms.size();
    std::vector<std::vector<u64>> n(np, std::vector<u64>(np, 0));
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j)
            for (const RcMatrix& A : mats)
                if (apply_perm(A, perms[i], perms[j]) == A) ++n[i][j];
    return n;
}

std::string format_matrix(const RcMatrix& A) {
    std::ostringstream os;
    os << A.m << ' ' << A.d << '\n';
    for (int i = 0; i < A.n; ++i) {
        for (int j = 0; j < A.m; ++j) os << (j ? " " : "") << static_cast<int>(A.a[i][j]);
        os << '\n';
    }
    return os.str();
}

namespace {

std::vector<int> parse_int_line(const std::string& line, int line_no) {
    std::istringstream is(line);
    std::vector<int> vals;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            vals.push_back(v);
        } catch (const std::exception&) {
            throw parse_error("line " + std::to_string(line_no) + ": not an integer: '" + tok + "'");
        }
    }
    return vals;
}

}  // namespace

std::vector<RcMatrix> parse_matrix_blocks(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) lines.push_back(line);
    }
    std::vector<RcMatrix> out;
    std::size_t i = 0;
    auto blank = [](const std::string& s) {
        return s.find_first_not_of(" \t\r") == std::string::npos;
    };
    while (true) {
        while (i < lines.size() && blank(lines[i])) ++i;
        if (i >= lines.size()) break;
        const int header_line = static_cast<int>(i) + 1;
        std::vector<int> hdr = parse_int_line(lines[i], header_line);
        if (hdr.size() != 2)
            throw parse_error("line " + std::to_string(header_line) + ": expected header 'm d'");
        const int m = hdr[0], d = hdr[1];
        if (m < 1 || m > kMaxDim)
            throw parse_error("line " + std::to_string(header_line) + ": order " + std::to_string(m) +
                              " out of range 1.." + std::to_string(kMaxDim));
        if (d < 1 || d > 8)
            throw parse_error("line " + std::to_string(header_line) + ": margin " + std::to_string(d) +
                              " out of range 1..8");
        ++i;
        RcMatrix A;
        A.n = A.m = m;
        A.d = d;
        for (int r = 0; r < m; ++r) {
            while (i < lines.size() && blank(lines[i])) ++i;
            if (i >= lines.size())
                throw parse_error("line " + std::to_string(lines.size() + 1) + ": matrix truncated, expected " +
                                  std::to_string(m) + " rows");
            const int line_no = static_cast<int>(i) + 1;
            std::vector<int> vals = parse_int_line(lines[i], line_no);
            if (static_cast<int>(vals.size()) != m)
                throw parse_error("line " + std::to_string(line_no) + ": expected " + std::to_string(m) +
                                  " entries, found " + std::to_string(vals.size()));
            int rs = 0;
            for (int j = 0; j < m; ++j) {
                if (vals[j] < 0 || vals[j] > d)
                    throw parse_error("line " + std::to_string(line_no) + ": entry " + std::to_string(vals[j]) +
                                      " outside [0, " + std::to_string(d) + "]");
                A.a[r][j] = static_cast<std::uint8_t>(vals[j]);
                rs += vals[j];
            }
            if (rs != d)
                throw parse_error("line " + std::to_string(line_no) + ": row sums to " + std::to_string(rs) +
                                  ", expected " + std::to_string(d));
            ++i;
        }
        for (int j = 0; j < m; ++j) {
            int cs = 0;
            for (int r = 0; r < m; ++r) cs += A.a[r][j];
            if (cs != d)
                throw parse_error("matrix at line " + std::to_string(header_line) + ": column " +
                                  std::to_string(j + 1) + " sums to " + std::to_string(cs) + ", expected " +
                                  std::to_string(d));
        }
        out.push_back(A);
    }
    if (out.empty()) throw parse_error("line 1: no matrix found");
    return out;
}

}  // namespace rcms
