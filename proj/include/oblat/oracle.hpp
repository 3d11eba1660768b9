#ifndef OBLAT_ORACLE_HPP
#define OBLAT_ORACLE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "oblat/linalg.hpp"

namespace oblat {

struct SvpCertificate {
    IntVec coeffs;
    Int norm_sq;
    // Inclusive per-coordinate coefficient bounds [-t_i, t_i] that provably
    // contain a shortest vector (derived from the dual Gram diagonal and the
    // Minkowski radius).
    std::vector<Int> search_box;
};

// Exhaustive shortest-vector search, independent of the enumeration module:
// exact LDL^T of the Gram matrix, fixed Minkowski radius (never shrunk),
// plain ascending scan of each pruned interval.  The certificate is
// canonical: global sign normalized so the last nonzero coefficient is
// positive, ties broken lexicographically.  Throws OracleCapExceeded when
// dim > cap.
SvpCertificate brute_force_svp(const IntMat& B, int cap = 6);

// All minimal-norm coefficient vectors (sign-normalized, sorted, deduped).
std::vector<IntVec> brute_force_all_shortest(const IntMat& B, int cap = 6);

// True iff every off-diagonal Gram entry is <= 0.
bool is_obtuse(const IntMat& B);

// Witness partition if the basis is semi-obtuse (delegates to
// split_semi_obtuse in the conversion module).
std::optional<std::pair<std::vector<int>, std::vector<int>>>
is_semi_obtuse(const IntMat& B);

// True iff hnf(B1) == hnf(B2); throws DimensionMismatch.
bool same_lattice(const IntMat& B1, const IntMat& B2);

// True iff the coefficients are all >= 0 or all <= 0.
bool sign_uniformity(const SvpCertificate& cert);
bool sign_uniformity(const IntVec& coeffs);

// Minkowski bound 2*vol^(1/n)*V_n(1)^(-1/n), rounded up (>= lambda_1).
BigFloat minkowski_bound(const IntMat& B, mpfr_prec_t precision = 256);

// Gaussian heuristic sqrt(n/(2*pi*e))*vol^(1/n).
BigFloat gaussian_heuristic(const IntMat& B, mpfr_prec_t precision = 256);

} // namespace oblat

#endif
