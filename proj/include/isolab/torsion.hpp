#pragma once

#include <optional>
#include <utility>

#include "isolab/curve.hpp"
#include "isolab/linalg.hpp"
#include "isolab/roots.hpp"

namespace isolab {

// Basis (P, Q) of E[ell] over the smallest extension F_{p^k} containing it.
struct TorsionBasis {
    unsigned ell = 0;
    unsigned degree = 0;  // k
    FqCurve base_curve;   // E over F_p
    FqCurve curve;        // E over F_{p^k}
    FqPoint P, Q;
};

// Frobenius action on a torsion basis; columns are the coordinates of the
// images of P and Q.
struct FrobeniusMatrix {
    FlMatrix matrix;
    u64 q = 0;
};

// Smallest k with E[ell] contained in E(F_{p^k}); decided over F_p by checking
// that the ell-division polynomial splits and that every root lifts to a point.
unsigned torsion_degree(const FqCurve& E, unsigned ell);

// Curve over a prime field with p > 3, ell prime and != p. Deterministic for a
// fixed seed.
TorsionBasis torsion_basis(const FqCurve& E, unsigned ell, u64 seed = 0);

// Miller's algorithm. Points must be ell-torsion on a common curve; throws
// DomainError otherwise.
FieldElement weil_pairing(const FqPoint& P, const FqPoint& Q, unsigned ell);

// (i, j) with R = iP + jQ, by enumeration of the ell^2 combinations.
std::optional<std::pair<unsigned, unsigned>> basis_coordinates(const TorsionBasis& B, const FqPoint& R);
// i P + j Q
FqPoint basis_combination(const TorsionBasis& B, long i, long j);

FrobeniusMatrix frobenius_matrix(const TorsionBasis& B);
FrobeniusMatrix frobenius_matrix(const FqCurve& E, unsigned ell);

// dim_{F_ell} E[ell](F_p), as the dimension of the fixed space of Frobenius.
unsigned rational_ell_torsion(const FqCurve& E, unsigned ell);

// Rational points of exact order ell, one generator per rational subgroup,
// found from the roots of the ell-division polynomial over F_p.
std::vector<FqPoint> rational_torsion_generators(const FqCurve& E, unsigned ell);
// Same, reusing a precomputed division_polynomial(E, ell).
std::vector<FqPoint> rational_torsion_generators(const FqCurve& E, unsigned ell, const FpPoly& psi);

}  // namespace isolab
