#ifndef OBLAT_REDUCTION_HPP
#define OBLAT_REDUCTION_HPP

#include "oblat/linalg.hpp"

namespace oblat {

// Gram (dot-product) matrix of a basis: entries[i][j] = dot(b_i, b_j).
IntMat generate_dot_product_matrix(const IntMat& B);

// Row/column i recomputed from B (whose row i already holds the new vector);
// all other entries carried over.
IntMat update_dot_product_matrix(const IntMat& G, const IntMat& B, int i);

// Gram update for negating basis vector i: row and column i flip sign,
// entry (i,i) is unchanged.
IntMat negate_dot_product_matrix(const IntMat& G, int i);

// Exact-rational LLL reduction with parameter delta in (1/4, 1).
// Output spans the same lattice (HNF-equal) and satisfies the size-reduction
// and Lovasz conditions.
IntMat lll_reduce(const IntMat& B, const Rat& delta = Rat(99, 100));

} // namespace oblat

#endif
