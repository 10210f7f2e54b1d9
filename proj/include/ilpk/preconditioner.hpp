#pragma once

// Normalized preconditioner B' for an integer matrix A of full row rank k:
// |det B'| stays within a controlled multiple of the largest k x k minor of
// A, every column of M = B'^{-1} A has Euclidean norm <= 1 (exactly), and a
// unimodular transform U puts B' in upper-triangular form with diagonal >= 1
// for cheap lattice enumeration.

#include <vector>

#include "ilpk/mvee.hpp"

namespace ilpk {

/// A nonsingular k x k column selection of A, locally optimal under single
/// column swaps (no swap increases |det|).
struct BasisSelection {
    std::vector<std::size_t> indices;
    Rat det_abs;
};

struct LdPreconditioner {
    RatMatrix B_prime;   // k x k, nonsingular
    Rat delta;           // |det B_prime|
    RatMatrix M;         // B_prime^{-1} A, unit-norm columns (exact)
    IntMatrix U;         // unimodular, U * B_prime = H_enum
    RatMatrix H_enum;    // upper triangular, diagonal >= 1
    Rat eps;             // ellipsoid rounding parameter used by build()
    BasisSelection basis;
    RationalEllipsoid ellipsoid; // the certified ellipsoid behind the factor
};

/// Greedy volume-maximizing column selection followed by single-swap local
/// search. Throws RankDeficient when rank(A) < k.
BasisSelection select_basis(const IntMatrix& a);

/// Full pipeline: basis selection, enclosing ellipsoid of the preconditioned
/// columns, triangular rounding, and the enumeration form via HNF.
LdPreconditioner build_preconditioner(const IntMatrix& a, const Rat& eps = Rat(1));

/// Exact Delta(A): maximum |det| over all k x k column submatrices.
/// Intended for desk scale; throws RankDeficient when every minor vanishes.
Int delta_exact(const IntMatrix& a);

} // namespace ilpk
