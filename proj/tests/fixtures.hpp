#ifndef OBLAT_TESTS_FIXTURES_HPP
#define OBLAT_TESTS_FIXTURES_HPP

#include "oblat/linalg.hpp"

namespace fixtures {

// 10x10 reference basis (rows are basis vectors).
inline oblat::IntMat basis10() {
    return {
        {2, -2, -6, 10, -2, 3, 0, -4, 5, 3},
        {3, 2, 11, 2, 1, 2, -7, -3, -1, -13},
        {3, -2, -5, 7, -3, 2, 5, 16, 5, 5},
        {7, 8, 1, -2, -3, 10, 10, 5, 1, 1},
        {11, -2, 2, 12, 7, 4, 8, 0, -6, -8},
        {12, 3, 5, -5, -7, -7, -7, -7, 3, 2},
        {5, 15, 4, 6, 2, -9, 1, -3, -3, -2},
        {6, -11, -6, 0, -9, -6, 14, 2, 0, -5},
        {-1, 10, -12, -2, -2, -2, 4, 0, -15, -6},
        {6, 1, -19, -8, 18, -8, 3, -2, 12, -4},
    };
}

// Published step-method conversion result for basis10(); printed transposed
// (columns are the basis vectors), so transpose before use.
inline oblat::IntMat converted10_step_printed() {
    return {
        {2, 3, 2, 7, -11, 21, -908, 21224, -2, 184569532},
        {-2, 2, -30, 8, 2, -13, -89, -70911, 0, 163550688},
        {-6, 11, 21, 1, -2, 24, 14, -28215, -16, -60219038},
        {10, 2, 3, -2, -12, -38, 85, -38992, 0, 5511663},
        {-2, 1, 14, -3, -7, 31, 425, -29845, 9, 415682694},
        {3, 2, -8, 10, -4, 2, 634, 45139, -13, 340218771},
        {0, -7, 2, 10, -8, 32, 240, -13612, 9, -546575041},
        {-4, -3, 22, 5, 0, -87, -42, 829, 2, 130456108},
        {5, -1, 19, 1, 6, -2, 16, -17434, -26, -256738052},
        {3, -13, 15, 1, 8, 38, -179, -22755, -5, 385918402},
    };
}

// Gram row 0 of basis10(), frozen from an independent computation.
inline oblat::IntVec gram_row0() {
    return {207, -72, 98, -4, 78, -20, -24, 47, -65, 40};
}

// Working clique {0,1,3,4} (row 4 negated) against target row 8:
// clique Gram submatrix and c0 of the feasibility system A*v <= c0.
inline oblat::IntMat clique_gram() {
    return {
        {207, -72, -4, -78},
        {-72, 371, -38, -144},
        {-4, -38, 354, -124},
        {-78, -144, -124, 502},
    };
}

inline oblat::IntVec clique_c0() { return {65, 60, -70, 69}; }

// Narrated first transformation: coefficients and the transformed vector.
inline oblat::IntVec first_step_v() { return {-1, -1, -1, -1}; }

inline oblat::IntVec first_step_b8() {
    return {-2, 0, -16, 0, 9, -13, 9, 2, -26, -5};
}

} // namespace fixtures

#endif
