#include "oblat/linalg.hpp"

#include <algorithm>
#include <cstddef>

namespace oblat {

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: vectors of unequal dimension");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int det(const IntMat& A) {
    const size_t n = A.size();
    for (const auto& row : A)
        if (row.size() != n) throw DimensionMismatch("det: matrix not square");
    if (n == 0) return 1;

    IntMat M = A;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && M[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(M[k], M[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) / prev;
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign > 0 ? M[n - 1][n - 1] : -M[n - 1][n - 1];
}

RatVec solve_exact(const IntMat& A, const RatVec& c) {
    const size_t n = A.size();
    for (const auto& row : A)
        if (row.size() != n) throw DimensionMismatch("solve_exact: matrix not square");
    if (c.size() != n) throw DimensionMismatch("solve_exact: rhs dimension mismatch");

    // Rational Gaussian elimination with column-wise pivot on the largest
    // absolute value (keeps intermediate fractions modest).
    std::vector<RatVec> M(n, RatVec(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M[i][j] = Rat(A[i][j]);
        M[i][n] = c[i];
        M[i][n].canonicalize();
    }
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k; i < n; ++i)
            if (cmp(abs(M[i][k]), abs(M[piv][k])) > 0) piv = i;
        if (M[piv][k] == 0) throw SingularSystem();
        std::swap(M[k], M[piv]);
        for (size_t i = k + 1; i < n; ++i) {
            if (M[i][k] == 0) continue;
            Rat f = M[i][k] / M[k][k];
            for (size_t j = k; j <= n; ++j) M[i][j] -= f * M[k][j];
        }
    }
    RatVec x(n);
    for (size_t k = n; k-- > 0;) {
        Rat s = M[k][n];
        for (size_t j = k + 1; j < n; ++j) s -= M[k][j] * x[j];
        x[k] = s / M[k][k];
        x[k].canonicalize();
    }
    return x;
}

namespace {

// One LU solve at fixed precision; throws SingularSystem on a zero pivot.
FloatVec lu_solve(const IntMat& A, const FloatVec& c, mpfr_prec_t prec) {
    const size_t n = A.size();
    std::vector<FloatVec> M(n);
    for (size_t i = 0; i < n; ++i) {
        M[i].reserve(n + 1);
        for (size_t j = 0; j < n; ++j) M[i].push_back(BigFloat::of(Int(A[i][j]), prec));
        BigFloat rhs(prec);
        mpfr_set(rhs.raw(), c[i].raw(), MPFR_RNDN);
        M[i].push_back(rhs);
    }
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (abs(M[i][k]) > abs(M[piv][k])) piv = i;
        if (M[piv][k].is_zero()) throw SingularSystem("solve_float: zero pivot");
        std::swap(M[k], M[piv]);
        for (size_t i = k + 1; i < n; ++i) {
            if (M[i][k].is_zero()) continue;
            BigFloat f = M[i][k] / M[k][k];
            for (size_t j = k; j <= n; ++j) M[i][j] -= f * M[k][j];
        }
    }
    FloatVec x(n, BigFloat(prec));
    for (size_t k = n; k-- > 0;) {
        BigFloat s = M[k][n];
        for (size_t j = k + 1; j < n; ++j) s -= M[k][j] * x[j];
        x[k] = s / M[k][k];
    }
    return x;
}

BigFloat vec_norm(const FloatVec& v, mpfr_prec_t prec) {
    BigFloat s(prec);
    for (const auto& e : v) s += e * e;
    return sqrt(s);
}

} // namespace

FloatVec solve_float(const IntMat& A, const FloatVec& c, mpfr_prec_t precision) {
    const size_t n = A.size();
    for (const auto& row : A)
        if (row.size() != n) throw DimensionMismatch("solve_float: matrix not square");
    if (c.size() != n) throw DimensionMismatch("solve_float: rhs dimension mismatch");
    if (det(A) == 0) throw SingularSystem("solve_float: singular matrix");

    // The residual target is relative to ||c||; a zero rhs has the exact
    // solution zero.
    bool c_zero = true;
    for (const auto& e : c)
        if (!e.is_zero()) c_zero = false;
    if (c_zero) return FloatVec(n, BigFloat(precision));

    BigFloat target = BigFloat::of(1L, precision);
    {
        mpfr_mul_2si(target.raw(), target.raw(), -(long)(precision / 2), MPFR_RNDN);
    }

    mpfr_prec_t work = precision + 64;
    for (int attempt = 0; attempt < 16; ++attempt, work *= 2) {
        FloatVec x = lu_solve(A, c, work);
        // Residual at doubled precision so the check itself is trustworthy.
        mpfr_prec_t rp = work * 2;
        FloatVec r(n, BigFloat(rp));
        for (size_t i = 0; i < n; ++i) {
            BigFloat s(rp);
            for (size_t j = 0; j < n; ++j) s += BigFloat::of(Int(A[i][j]), rp) * x[j];
            mpfr_sub(r[i].raw(), s.raw(), c[i].raw(), MPFR_RNDN);
        }
        BigFloat rel = vec_norm(r, rp) / vec_norm(c, rp);
        if (rel <= target) {
            // Round down to the requested precision.
            FloatVec out(n, BigFloat(precision));
            for (size_t i = 0; i < n; ++i) mpfr_set(out[i].raw(), x[i].raw(), MPFR_RNDN);
            return out;
        }
    }
    throw SingularSystem("solve_float: residual target unreachable");
}

BigFloat euclidean_norm(const IntVec& a, mpfr_prec_t precision) {
    Int s = 0;
    for (const auto& e : a) s += e * e;
    // Exact operand, then a single correctly-rounded square root.
    size_t bits = mpz_sizeinbase(s.get_mpz_t(), 2);
    BigFloat exact(std::max<mpfr_prec_t>(precision, (mpfr_prec_t)bits + 2));
    mpfr_set_z(exact.raw(), s.get_mpz_t(), MPFR_RNDN);
    BigFloat r(precision);
    mpfr_sqrt(r.raw(), exact.raw(), MPFR_RNDN);
    return r;
}

IntMat hnf(const IntMat& B) {
    const size_t nrows = B.size();
    if (nrows == 0) return B;
    const size_t ncols = B[0].size();
    for (const auto& row : B)
        if (row.size() != ncols) throw DimensionMismatch("hnf: ragged matrix");

    IntMat M = B;
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < nrows; ++c) {
        size_t piv = r;
        while (piv < nrows && M[piv][c] == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(M[r], M[piv]);
        for (size_t i = r + 1; i < nrows; ++i) {
            if (M[i][c] == 0) continue;
            // Unimodular 2-row combination zeroing M[i][c]:
            //   [ x  y ] [row_r]   with x*M[r][c] + y*M[i][c] = g
            //   [-v  u ] [row_i]   u = M[r][c]/g, v = M[i][c]/g  (det = 1)
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                       M[r][c].get_mpz_t(), M[i][c].get_mpz_t());
            Int u = M[r][c] / g, v = M[i][c] / g;
            for (size_t j = 0; j < ncols; ++j) {
                Int a = M[r][j], b = M[i][j];
                M[r][j] = x * a + y * b;
                M[i][j] = u * b - v * a;
            }
        }
        if (M[r][c] < 0)
            for (size_t j = 0; j < ncols; ++j) M[r][j] = -M[r][j];
        for (size_t i = 0; i < r; ++i) {
            if (M[i][c] == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), M[i][c].get_mpz_t(), M[r][c].get_mpz_t());
            if (q == 0) continue;
            for (size_t j = 0; j < ncols; ++j) M[i][j] -= q * M[r][j];
        }
        ++r;
    }
    if (r < nrows) throw RankDeficient("hnf: rows are linearly dependent");
    return M;
}

IntVec round_to_int(const FloatVec& p) {
    IntVec r;
    r.reserve(p.size());
    for (const auto& e : p) r.push_back(e.round_away());
    return r;
}

Int rat_round_nearest(const Rat& q) {
    // floor((2|num| + den) / (2 den)) with the sign reattached rounds ties
    // away from zero.
    Int num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    Int r;
    Int t = 2 * num + den;
    Int d2 = 2 * den;
    mpz_fdiv_q(r.get_mpz_t(), t.get_mpz_t(), d2.get_mpz_t());
    return neg ? Int(-r) : r;
}

RatGso rat_gso(const IntMat& B) {
    const size_t n = B.size();
    RatGso g;
    g.mu.assign(n, RatVec(n, Rat(0)));
    g.bstar_sq.assign(n, Rat(0));
    // bstar_i = b_i - sum_{j<i} mu_ij bstar_j; inner products kept exactly.
    std::vector<RatVec> bstar(n);
    for (size_t i = 0; i < n; ++i) {
        RatVec v(B[i].size());
        for (size_t t = 0; t < B[i].size(); ++t) v[t] = Rat(B[i][t]);
        for (size_t j = 0; j < i; ++j) {
            Rat num(0);
            for (size_t t = 0; t < v.size(); ++t) num += Rat(B[i][t]) * bstar[j][t];
            Rat m = num / g.bstar_sq[j];
            m.canonicalize();
            g.mu[i][j] = m;
            for (size_t t = 0; t < v.size(); ++t) v[t] -= m * bstar[j][t];
        }
        g.mu[i][i] = 1;
        Rat nsq(0);
        for (const auto& e : v) nsq += e * e;
        nsq.canonicalize();
        if (nsq == 0) throw RankDeficient("rat_gso: rows are linearly dependent");
        g.bstar_sq[i] = nsq;
        bstar[i] = std::move(v);
    }
    return g;
}

IntMat identity_mat(int n) {
    IntMat I(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

IntMat transpose(const IntMat& A) {
    if (A.empty()) return A;
    IntMat T(A[0].size(), IntVec(A.size()));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
    return T;
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
    if (A.empty() || B.empty() || A[0].size() != B.size())
        throw DimensionMismatch("mat_mul: inner dimensions differ");
    IntMat C(A.size(), IntVec(B[0].size(), 0));
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t k = 0; k < B.size(); ++k) {
            if (A[i][k] == 0) continue;
            for (size_t j = 0; j < B[0].size(); ++j) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

size_t max_entry_bits(const IntMat& A) {
    size_t best = 0;
    for (const auto& row : A)
        for (const auto& e : row)
            if (e != 0) best = std::max(best, mpz_sizeinbase(e.get_mpz_t(), 2));
    return best;
}

} // namespace oblat
