#include "oblat/reduction.hpp"

#include <stdexcept>

namespace oblat {

IntMat generate_dot_product_matrix(const IntMat& B) {
    if (B.empty()) throw DimensionMismatch("generate_dot_product_matrix: empty basis");
    const size_t n = B.size();
    IntMat G(n, IntVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            G[i][j] = dot(B[i], B[j]);
            G[j][i] = G[i][j];
        }
    return G;
}

IntMat update_dot_product_matrix(const IntMat& G, const IntMat& B, int i) {
    if (i < 0 || (size_t)i >= B.size())
        throw std::out_of_range("update_dot_product_matrix: index out of range");
    IntMat out = G;
    for (size_t j = 0; j < B.size(); ++j) {
        out[i][j] = dot(B[i], B[j]);
        out[j][i] = out[i][j];
    }
    return out;
}

IntMat negate_dot_product_matrix(const IntMat& G, int i) {
    if (i < 0 || (size_t)i >= G.size())
        throw std::out_of_range("negate_dot_product_matrix: index out of range");
    IntMat out = G;
    for (size_t j = 0; j < G.size(); ++j) {
        if ((size_t)j == (size_t)i) continue;
        out[i][j] = -out[i][j];
        out[j][i] = -out[j][i];
    }
    return out;
}

IntMat lll_reduce(const IntMat& B, const Rat& delta) {
    if (!(delta > Rat(1, 4) && delta < Rat(1)))
        throw std::invalid_argument("lll_reduce: delta must lie in (1/4, 1)");
    IntMat basis = B;
    const size_t n = basis.size();
    if (n <= 1) return basis;

    RatGso g = rat_gso(basis); // throws RankDeficient on dependent rows

    size_t k = 1;
    while (k < n) {
        // Size-reduce row k, updating mu in place.
        bool changed = false;
        for (size_t j = k; j-- > 0;) {
            Int q = rat_round_nearest(g.mu[k][j]);
            if (q == 0) continue;
            changed = true;
            Rat qr(q);
            for (size_t t = 0; t < basis[k].size(); ++t) basis[k][t] -= q * basis[j][t];
            for (size_t l = 0; l < j; ++l) g.mu[k][l] -= qr * g.mu[j][l];
            g.mu[k][j] -= qr;
        }
        (void)changed;
        Rat lhs = g.bstar_sq[k];
        Rat rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.bstar_sq[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            g = rat_gso(basis);
            k = k > 1 ? k - 1 : 1;
        }
    }
    return basis;
}

} // namespace oblat
