#pragma once

// Exact linear algebra over Z and Q: determinant, inverse, rank, Hermite
// normal form with unimodular cofactor, and LDL decomposition. All results
// are exact; there is no floating point anywhere in this module.

#include "ilpk/matrix.hpp"

namespace ilpk {

/// Factorization input = U * H with U unimodular (integer, |det U| = 1) and
/// H upper triangular with positive diagonal. For integer input the
/// above-diagonal entries satisfy 0 <= H(i,j) < H(j,j) for i < j; for
/// rational input H is the scaled integer form (diagonal still positive).
struct HnfResult {
    IntMatrix U;
    RatMatrix H;
};

/// Factorization input = L^T * D * L with L upper triangular, unit diagonal,
/// and D the diagonal (stored as a vector) with all entries positive.
struct LdlResult {
    RatMatrix L;
    RatVec D;
};

/// Exact determinant (fraction-free Bareiss elimination).
Int det(const IntMatrix& m);

/// Exact determinant; integer matrices scaled through the Bareiss path.
Rat det(const RatMatrix& m);

/// Exact inverse; throws SingularMatrix when det = 0.
RatMatrix inverse(const RatMatrix& m);

/// Exact inverse of a unimodular integer matrix (result is integer).
IntMatrix inverse_unimodular(const IntMatrix& u);

/// Rank over the rationals (fraction-free elimination).
std::size_t rank(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Hermite normal form of a square nonsingular rational matrix.
/// Throws SingularMatrix.
HnfResult hnf(const RatMatrix& m);

/// LDL decomposition of a symmetric positive-definite rational matrix.
/// Throws NotPositiveDefinite when a pivot is <= 0.
LdlResult ldl(const RatMatrix& m);

} // namespace ilpk
