#ifndef OBLAT_ENUMERATION_HPP
#define OBLAT_ENUMERATION_HPP

#include <optional>

#include "oblat/linalg.hpp"

namespace oblat {

// Exact rational Gram-Schmidt data of a basis.
using GsoData = RatGso;
GsoData compute_gso(const IntMat& B);

enum class EnumMode { Full, SignRestricted };

struct EnumerationBound {
    Rat r_sq; // squared radius, > 0
};

struct EnumerationResult {
    IntVec coeffs;
    Int norm_sq;
    unsigned long long nodes_visited = 0;
    EnumMode mode = EnumMode::Full;
};

// Schnorr-Euchner enumeration: depth-first over coefficient suffixes with
// radial (nearest-first, alternating outward) traversal of each projected
// interval.  Full mode skips the mirror subtree where the highest-index
// nonzero coefficient is negative; SignRestricted intersects every interval
// with [0, inf), which is sound for obtuse bases.  `shrink` updates the
// radius whenever a shorter vector is found (on by default; disable to
// measure the raw tree).  Returns the nonzero lattice vector of minimal
// norm with norm^2 <= r_sq, or nothing if none exists.
std::optional<EnumerationResult> enumerate(const IntMat& B, const EnumerationBound& bound,
                                           EnumMode mode, bool shrink = true);

// Squared Minkowski bound 4*vol^(2/n)/V_n(1)^(2/n), evaluated with directed
// rounding so the result is >= the true bound (hence >= lambda_1^2).
Rat minkowski_sq_upper(const IntMat& B, mpfr_prec_t precision = 256);

// Default enumeration radius: the squared Minkowski bound above.
EnumerationBound default_bound(const IntMat& B);

} // namespace oblat

#endif
