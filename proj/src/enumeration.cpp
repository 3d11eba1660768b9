#include "oblat/enumeration.hpp"

#include <cassert>

namespace oblat {

GsoData compute_gso(const IntMat& B) { return rat_gso(B); }

namespace {

struct EnumCtx {
    const GsoData& g;
    int n;
    EnumMode mode;
    bool shrink;
    Rat r_sq; // live radius (shrinks on improvement when enabled)
    unsigned long long nodes = 0;
    IntVec v;
    IntVec best;
    Rat best_sq;
    bool have_best = false;

    EnumCtx(const GsoData& g_, int n_, EnumMode m, bool s, Rat r)
        : g(g_), n(n_), mode(m), shrink(s), r_sq(std::move(r)), v(n_, 0) {}

    // Visit level i with the coefficients above it fixed and their projected
    // squared norm rho accumulated; prefix_zero tracks whether all of them
    // are zero (used both for mirror-subtree skipping and for rejecting the
    // zero vector at the deepest level).
    void descend(int i, const Rat& rho, bool prefix_zero) {
        Rat center(0);
        for (int j = i + 1; j < n; ++j) {
            if (v[j] == 0) continue;
            center -= g.mu[j][i] * Rat(v[j]);
        }
        const bool nonneg_only = (mode == EnumMode::SignRestricted) || prefix_zero;

        Int x0 = rat_round_nearest(center);
        if (nonneg_only && x0 < 0) x0 = 0;
        Int up = x0, down = x0 - 1;
        bool up_alive = true;
        bool down_alive = !nonneg_only || down >= 0;

        auto try_candidate = [&](const Int& x) -> bool {
            Rat d = Rat(x) - center;
            Rat cost = d * d * g.bstar_sq[i];
            if (cost > r_sq - rho) return false;
            ++nodes;
            v[i] = x;
            if (i == 0) {
                if (!(prefix_zero && x == 0)) {
                    Rat total = rho + cost;
                    if (!have_best || total < best_sq) {
                        have_best = true;
                        best_sq = total;
                        best = v;
                        if (shrink) r_sq = total;
                    }
                }
            } else {
                descend(i - 1, rho + cost, prefix_zero && x == 0);
            }
            return true;
        };

        while (up_alive || down_alive) {
            bool take_up;
            if (up_alive && down_alive) {
                // Radial order: nearer candidate first, ties upward.
                Rat du = abs(Rat(up) - center), dd = abs(Rat(down) - center);
                take_up = du <= dd;
            } else {
                take_up = up_alive;
            }
            if (take_up) {
                if (!try_candidate(up)) {
                    up_alive = false;
                } else {
                    up += 1;
                }
            } else {
                if (!try_candidate(down)) {
                    down_alive = false;
                } else {
                    down -= 1;
                    if (nonneg_only && down < 0) down_alive = false;
                }
            }
        }
        v[i] = 0;
    }
};

} // namespace

std::optional<EnumerationResult> enumerate(const IntMat& B, const EnumerationBound& bound,
                                           EnumMode mode, bool shrink) {
    if (B.empty()) throw DimensionMismatch("enumerate: empty basis");
    GsoData g = rat_gso(B); // throws RankDeficient
    EnumCtx ctx(g, (int)B.size(), mode, shrink, bound.r_sq);
    ctx.descend((int)B.size() - 1, Rat(0), true);
    if (!ctx.have_best) return std::nullopt;

    EnumerationResult res;
    res.coeffs = ctx.best;
    res.mode = mode;
    res.nodes_visited = ctx.nodes;
    // Recompute the norm from the basis; it must agree with the projected sum.
    IntVec s(B[0].size(), 0);
    for (size_t i = 0; i < B.size(); ++i)
        for (size_t t = 0; t < s.size(); ++t) s[t] += ctx.best[i] * B[i][t];
    res.norm_sq = dot(s, s);
    assert(Rat(res.norm_sq) == ctx.best_sq);
    return res;
}

Rat minkowski_sq_upper(const IntMat& B, mpfr_prec_t precision) {
    const unsigned long n = B.size();
    Int d = det(B);
    if (d == 0) throw RankDeficient("minkowski_sq_upper: singular basis");
    Int d2 = d * d;

    mpfr_prec_t p = precision < 64 ? 64 : precision;
    mpfr_t vol, gam, half, pi, res;
    mpfr_inits2(p, vol, gam, half, pi, res, (mpfr_ptr)nullptr);

    // vol = det^2 ^ (1/n), rounded up.
    mpfr_set_z(vol, d2.get_mpz_t(), MPFR_RNDU);
    mpfr_rootn_ui(vol, vol, n, MPFR_RNDU);

    // gam = Gamma(n/2 + 1)^(2/n) = (Gamma(n/2+1)^2)^(1/n), rounded up.
    mpfr_set_ui(half, n, MPFR_RNDN); // exact
    mpfr_div_2ui(half, half, 1, MPFR_RNDN); // exact: n/2 is dyadic
    mpfr_add_ui(half, half, 1, MPFR_RNDU);
    mpfr_gamma(gam, half, MPFR_RNDU);
    mpfr_sqr(gam, gam, MPFR_RNDU);
    mpfr_rootn_ui(gam, gam, n, MPFR_RNDU);

    // res = 4 * vol * gam / pi with pi rounded down so the quotient rounds up.
    mpfr_const_pi(pi, MPFR_RNDD);
    mpfr_mul(res, vol, gam, MPFR_RNDU);
    mpfr_mul_ui(res, res, 4, MPFR_RNDU);
    mpfr_div(res, res, pi, MPFR_RNDU);

    // Exact conversion: res = z * 2^e.
    mpz_class z;
    mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), res);
    Rat q(z);
    if (e >= 0) {
        mpz_mul_2exp(q.get_num().get_mpz_t(), q.get_num().get_mpz_t(), (mp_bitcnt_t)e);
    } else {
        mpz_mul_2exp(q.get_den().get_mpz_t(), q.get_den().get_mpz_t(), (mp_bitcnt_t)(-e));
    }
    q.canonicalize();
    mpfr_clears(vol, gam, half, pi, res, (mpfr_ptr)nullptr);
    return q;
}

EnumerationBound default_bound(const IntMat& B) {
    return EnumerationBound{minkowski_sq_upper(B)};
}

} // namespace oblat
