#ifndef OBLAT_LINALG_HPP
#define OBLAT_LINALG_HPP

#include <gmpxx.h>

#include <vector>

#include "oblat/bigfloat.hpp"
#include "oblat/errors.hpp"

namespace oblat {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>; // rows are basis vectors
using RatVec = std::vector<Rat>;
using FloatVec = std::vector<BigFloat>;

// Exact dot product; throws DimensionMismatch.
Int dot(const IntVec& a, const IntVec& b);

// Exact determinant of a square matrix (Bareiss fraction-free elimination).
Int det(const IntMat& A);

// Exact solution of A*x = c for square nonsingular A; throws SingularSystem.
RatVec solve_exact(const IntMat& A, const RatVec& c);

// Floating solution of A*x = c with relative residual below 2^(-precision/2);
// internally raises the working precision until the residual bound holds.
FloatVec solve_float(const IntMat& A, const FloatVec& c, mpfr_prec_t precision);

// sqrt(dot(a,a)) correctly rounded to `precision` bits.
BigFloat euclidean_norm(const IntVec& a, mpfr_prec_t precision);

// Canonical Hermite Normal Form of the row lattice: upper triangular with
// positive pivots and entries above each pivot reduced into [0, pivot).
// Two full-rank bases span the same lattice iff their HNFs are equal.
// Throws RankDeficient if the rows are dependent.
IntMat hnf(const IntMat& B);

// Per-coordinate nearest integer, ties away from zero.
IntVec round_to_int(const FloatVec& p);

// Nearest integer to an exact rational, ties away from zero.
Int rat_round_nearest(const Rat& q);

// Exact rational Gram-Schmidt data: mu lower-triangular with unit diagonal,
// bstar_sq[i] = ||b*_i||^2 > 0.  Throws RankDeficient on dependent rows.
struct RatGso {
    std::vector<RatVec> mu;
    RatVec bstar_sq;
};
RatGso rat_gso(const IntMat& B);

// Helpers used across modules and tests.
IntMat identity_mat(int n);
IntMat transpose(const IntMat& A);
IntMat mat_mul(const IntMat& A, const IntMat& B);
size_t max_entry_bits(const IntMat& A);

} // namespace oblat

#endif
