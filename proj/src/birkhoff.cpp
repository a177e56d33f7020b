#include "birkhoff.hpp"

#include <algorithm>
#include <sstream>

#include "errors.hpp"

namespace rcms {

std::vector<Permutation> matchings(const RcMatrix& A) {
    if (!A.is_square()) throw std::invalid_argument("matchings require a square matrix");
    const int m = A.m;
    std::vector<Permutation> out;
    Permutation p;
    p.size = m;
    auto rec = [&](auto&& self, int i, unsigned used) -> void {
        if (i == m) {
            out.push_back(p);
            return;
        }
        for (int j = 0; j < m; ++j) {
            if (!(used & (1u << j)) && A.a[i][j] >= 1) {
                p.map[i] = static_cast<std::uint8_t>(j);
                self(self, i + 1, used | (1u << j));
            }
        }
    };
    rec(rec, 0, 0);
    // a residual with equal positive margins always has a matching
    bool valid = true;
    int first = 0;
    for (int j = 0; j < m; ++j) first += A.a[0][j];
    for (int i = 0; i < m && valid; ++i) {
        int rs = 0, cs = 0;
        for (int j = 0; j < m; ++j) {
            rs += A.a[i][j];
            cs += A.a[j][i];
        }
        valid = rs == first && cs == first && first >= 1;
    }
    if (valid && out.empty()) throw internal_error("no support matching on a valid residual");
    return out;
}

std::vector<Decomposition> decompositions(const RcMatrix& A) {
    validate_square(A);
    const int m = A.m, d = A.d;
    std::vector<Decomposition> out;
    std::vector<Permutation> seq;
    RcMatrix R = A;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            Decomposition dec;
            for (const Permutation& p : seq) {
                if (!dec.terms.empty() && dec.terms.back().first == p)
                    ++dec.terms.back().second;
                else
                    dec.terms.emplace_back(p, 1);
            }
            out.push_back(dec);
            return;
        }
        for (const Permutation& sigma : matchings(R)) {
            if (!seq.empty() && sigma < seq.back()) continue;  // non-decreasing peeling
            for (int i = 0; i < m; ++i) --R.a[i][sigma.map[i]];
            seq.push_back(sigma);
            self(self, remaining - 1);
            seq.pop_back();
            for (int i = 0; i < m; ++i) ++R.a[i][sigma.map[i]];
        }
    };
    rec(rec, d);
    return out;
}

namespace {

int overlap_count(const Permutation& x, const Permutation& y) {
    int c = 0;
    for (int i = 0; i < x.size; ++i)
        if (x.map[i] == y.map[i]) ++c;
    return c;
}

}  // namespace

bool operator==(const DecompSignature& x, const DecompSignature& y) {
    return x.d == y.d && x.overlap == y.overlap;
}

bool operator<(const DecompSignature& x, const DecompSignature& y) {
    return x.d != y.d ? x.d < y.d : x.overlap < y.overlap;
}

std::string DecompSignature::to_string() const {
    std::ostringstream os;
    os << "d=[";
    for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
    os << "];ov=[";
    for (std::size_t i = 0; i < overlap.size(); ++i) os << (i ? "," : "") << overlap[i];
    os << "]";
    return os.str();
}

DecompSignature signature(const Decomposition& D) {
    const int k = static_cast<int>(D.terms.size());
    if (k < 1) throw std::invalid_argument("empty decomposition");
    int ov[kMaxDim][kMaxDim] = {};
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            ov[i][j] = ov[j][i] = overlap_count(D.terms[i].first, D.terms[j].first);
    DecompSignature best;
    bool have = false;
    for (const Permutation& p : all_perms(k)) {
        DecompSignature cand;
        cand.d.reserve(k);
        for (int i = 0; i < k; ++i) cand.d.push_back(D.terms[p.map[i]].second);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) cand.overlap.push_back(ov[p.map[i]][p.map[j]]);
        if (!have || cand < best) {
            best = std::move(cand);
            have = true;
        }
    }
    return best;
}

NonEquivalence non_equivalence_test(const RcMatrix& A, const RcMatrix& B) {
    if (A.m != B.m || A.n != B.n || A.d != B.d) throw std::invalid_argument("dimension mismatch");
    auto sigs = [](const RcMatrix& M) {
        std::vector<DecompSignature> s;
        for (const Decomposition& dec : decompositions(M)) s.push_back(signature(dec));
        std::sort(s.begin(), s.end());
        return s;
    };
    return sigs(A) == sigs(B) ? NonEquivalence::Inconclusive : NonEquivalence::Inequivalent;
}

}  // namespace rcms
