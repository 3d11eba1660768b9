#ifndef OBLAT_RNG_HPP
#define OBLAT_RNG_HPP

#include <cstdint>
#include <random>

#include "oblat/linalg.hpp"

namespace oblat {

// Deterministic RNG for reproducible experiments.  mt19937_64 output is
// pinned by the C++ standard; the bounded mapping below is rejection
// sampling, so streams are identical across platforms and library versions
// (std::uniform_int_distribution is not portable).
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform integer in [lo, hi], inclusive.
    long uniform(long lo, long hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

  private:
    std::mt19937_64 eng_;
};

// Random full-rank basis with entries uniform in [-bound, bound];
// rank-deficient draws are rejected and redrawn.
inline IntMat random_basis(int n, long bound, Rng& rng) {
    while (true) {
        IntMat B(n, IntVec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) B[i][j] = rng.uniform(-bound, bound);
        if (det(B) != 0) return B;
    }
}

// Random unimodular matrix built from elementary row operations.
inline IntMat random_unimodular(int n, int ops, Rng& rng) {
    IntMat U = identity_mat(n);
    for (int t = 0; t < ops; ++t) {
        int i = (int)rng.uniform(0, n - 1);
        int j = (int)rng.uniform(0, n - 1);
        switch (rng.uniform(0, 2)) {
        case 0:
            if (i != j) std::swap(U[i], U[j]);
            break;
        case 1:
            for (int k = 0; k < n; ++k) U[i][k] = -U[i][k];
            break;
        default:
            if (i != j) {
                Int f = rng.uniform(-3, 3);
                for (int k = 0; k < n; ++k) U[i][k] += f * U[j][k];
            }
        }
    }
    return U;
}

} // namespace oblat

#endif
