#include "oblat/oracle.hpp"

#include <algorithm>
#include <functional>

#include "oblat/enumeration.hpp"
#include "oblat/obtuse.hpp"
#include "oblat/reduction.hpp"

namespace oblat {

namespace {

// Exact LDL^T of a positive-definite Gram matrix: G = L D L^T with L unit
// lower triangular.  A deliberately separate factorization path from the
// basis-side Gram-Schmidt used by enumeration.
void ldlt(const IntMat& G, std::vector<RatVec>& L, RatVec& D) {
    const size_t n = G.size();
    L.assign(n, RatVec(n, Rat(0)));
    D.assign(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j <= i; ++j) {
            Rat s(G[i][j]);
            for (size_t t = 0; t < j; ++t) s -= L[i][t] * L[j][t] * D[t];
            if (j == i) {
                if (s <= 0) throw RankDeficient("ldlt: Gram matrix not positive definite");
                D[i] = s;
                L[i][i] = 1;
            } else {
                L[i][j] = s / D[j];
                L[i][j].canonicalize();
            }
        }
    }
}

// floor(sqrt(num/den)) for num >= 0, den > 0.
Int isqrt_floor(const Rat& q) {
    Int num = q.get_num(), den = q.get_den();
    if (num <= 0) return 0;
    Int prod = num * den, root;
    mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), root.get_mpz_t(), den.get_mpz_t());
    return out;
}

void normalize_sign(IntVec& v) {
    for (size_t i = v.size(); i-- > 0;) {
        if (v[i] == 0) continue;
        if (v[i] < 0)
            for (auto& e : v) e = -e;
        return;
    }
}

struct OracleSearch {
    const IntMat& G;
    const std::vector<RatVec>& L;
    const RatVec& D;
    const std::vector<Int>& box;
    Rat r_sq; // fixed radius, never shrunk
    int n;
    IntVec v;
    std::function<void(const IntVec&, const Rat&)> on_leaf;

    // Ascending scan of level i; u_i = v_i + s_i with
    // s_i = sum_{j>i} L[j][i]*v_j.
    void run(int i, const Rat& rho) {
        Rat s(0);
        for (int j = i + 1; j < n; ++j)
            if (v[j] != 0) s += L[j][i] * Rat(v[j]);
        Rat rem = r_sq - rho;
        Rat center = -s;
        auto ok = [&](const Int& x) {
            Rat u = Rat(x) + s;
            return u * u * D[i] <= rem;
        };
        // The integer nearest the center minimizes the cost; if even it
        // fails, the interval holds no integer.
        Int mid = rat_round_nearest(center);
        if (!ok(mid)) {
            v[i] = 0;
            return;
        }
        // Exact bracketing of the admissible interval (cost is monotone on
        // each side of the center), then intersect with the fixed box.
        auto expand = [&](Int from, const Int& limit, int dir) {
            // Largest step count st with ok(from + dir*st), st <= |limit - from|.
            Int lo(0), hi = dir > 0 ? Int(limit - from) : Int(from - limit);
            if (hi < 0) return from;
            while (lo < hi) {
                Int m = (lo + hi + 1) / 2;
                if (ok(from + dir * m))
                    lo = m;
                else
                    hi = m - 1;
            }
            return Int(from + dir * lo);
        };
        Int lo = mid, hi = mid;
        if (mid > -box[i]) lo = expand(mid, -box[i], -1);
        if (mid < box[i]) hi = expand(mid, box[i], +1);
        if (lo < -box[i]) lo = -box[i];
        if (hi > box[i]) hi = box[i];
        for (Int x = lo; x <= hi; x += 1) {
            if (!ok(x)) continue; // box clamp may reintroduce infeasible ends
            Rat u = Rat(x) + s;
            Rat cost = u * u * D[i];
            v[i] = x;
            if (i == 0) {
                on_leaf(v, rho + cost);
            } else {
                run(i - 1, rho + cost);
            }
        }
        v[i] = 0;
    }
};

void oracle_scan(const IntMat& B, int cap, std::vector<Int>& box_out,
                 const std::function<void(const IntVec&, const Rat&)>& on_leaf) {
    if (B.empty()) throw DimensionMismatch("brute_force_svp: empty basis");
    if ((int)B.size() > cap)
        throw OracleCapExceeded("brute_force_svp: dimension " + std::to_string(B.size()) +
                                " exceeds cap " + std::to_string(cap));
    const int n = (int)B.size();
    IntMat G = generate_dot_product_matrix(B);
    std::vector<RatVec> L;
    RatVec D;
    ldlt(G, L, D);
    Rat r_sq = minkowski_sq_upper(B);

    // Fixed box from the dual Gram diagonal: |v_i|^2 <= R^2 * (G^-1)_ii.
    box_out.assign(n, Int(0));
    RatVec e(n, Rat(0));
    for (int i = 0; i < n; ++i) {
        std::fill(e.begin(), e.end(), Rat(0));
        e[i] = 1;
        RatVec col = solve_exact(G, e);
        box_out[i] = isqrt_floor(r_sq * col[i]);
    }

    OracleSearch search{G, L, D, box_out, r_sq, n, IntVec(n, 0), on_leaf};
    search.run(n - 1, Rat(0));
}

} // namespace

SvpCertificate brute_force_svp(const IntMat& B, int cap) {
    SvpCertificate cert;
    bool have = false;
    Rat best(0);
    oracle_scan(B, cap, cert.search_box, [&](const IntVec& v, const Rat& norm) {
        bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
        if (zero) return;
        IntVec cand = v;
        normalize_sign(cand);
        if (!have || norm < best || (norm == best && cand < cert.coeffs)) {
            have = true;
            best = norm;
            cert.coeffs = cand;
        }
    });
    if (!have) throw RankDeficient("brute_force_svp: no nonzero vector found (inconsistent state)");
    // The projected accumulation is exact, but recompute from the basis.
    IntVec s(B[0].size(), 0);
    for (size_t i = 0; i < B.size(); ++i)
        for (size_t t = 0; t < s.size(); ++t) s[t] += cert.coeffs[i] * B[i][t];
    cert.norm_sq = dot(s, s);
    return cert;
}

std::vector<IntVec> brute_force_all_shortest(const IntMat& B, int cap) {
    std::vector<IntVec> all;
    std::vector<Int> box;
    bool have = false;
    Rat best(0);
    oracle_scan(B, cap, box, [&](const IntVec& v, const Rat& norm) {
        bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
        if (zero) return;
        if (have && norm > best) return;
        IntVec cand = v;
        normalize_sign(cand);
        if (!have || norm < best) {
            have = true;
            best = norm;
            all.clear();
        }
        all.push_back(cand);
    });
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

bool is_obtuse(const IntMat& B) {
    IntMat G = generate_dot_product_matrix(B);
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = 0; j < G.size(); ++j)
            if (i != j && G[i][j] > 0) return false;
    return true;
}

std::optional<std::pair<std::vector<int>, std::vector<int>>>
is_semi_obtuse(const IntMat& B) {
    return split_semi_obtuse(B);
}

bool same_lattice(const IntMat& B1, const IntMat& B2) {
    if (B1.size() != B2.size() || (B1.size() && B1[0].size() != B2[0].size()))
        throw DimensionMismatch("same_lattice: bases of unequal dimension");
    return hnf(B1) == hnf(B2);
}

bool sign_uniformity(const IntVec& coeffs) {
    bool has_pos = false, has_neg = false;
    for (const auto& e : coeffs) {
        if (e > 0) has_pos = true;
        if (e < 0) has_neg = true;
    }
    return !(has_pos && has_neg);
}

bool sign_uniformity(const SvpCertificate& cert) { return sign_uniformity(cert.coeffs); }

BigFloat minkowski_bound(const IntMat& B, mpfr_prec_t precision) {
    Rat sq = minkowski_sq_upper(B, precision);
    BigFloat in(precision), out(precision);
    mpfr_set_q(in.raw(), sq.get_mpq_t(), MPFR_RNDU);
    mpfr_sqrt(out.raw(), in.raw(), MPFR_RNDU);
    return out;
}

BigFloat gaussian_heuristic(const IntMat& B, mpfr_prec_t precision) {
    const unsigned long n = B.size();
    Int d = det(B);
    if (d == 0) throw RankDeficient("gaussian_heuristic: singular basis");
    Int ad = abs(d);

    mpfr_prec_t p = precision < 64 ? 64 : precision;
    mpfr_t vol, pi, e, f, out;
    mpfr_inits2(p, vol, pi, e, f, out, (mpfr_ptr)nullptr);
    mpfr_set_z(vol, ad.get_mpz_t(), MPFR_RNDN);
    mpfr_rootn_ui(vol, vol, n, MPFR_RNDN);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_ui(e, 1, MPFR_RNDN);
    mpfr_exp(e, e, MPFR_RNDN);
    mpfr_set_ui(f, n, MPFR_RNDN);
    mpfr_div(f, f, pi, MPFR_RNDN);
    mpfr_div(f, f, e, MPFR_RNDN);
    mpfr_div_2ui(f, f, 1, MPFR_RNDN);
    mpfr_sqrt(f, f, MPFR_RNDN);
    mpfr_mul(out, f, vol, MPFR_RNDN);

    BigFloat r(precision);
    mpfr_set(r.raw(), out, MPFR_RNDN);
    mpfr_clears(vol, pi, e, f, out, (mpfr_ptr)nullptr);
    return r;
}

} // namespace oblat
