#pragma once

#include <vector>

#include "isolab/field.hpp"
#include "isolab/polynomial.hpp"
#include "isolab/rational.hpp"

namespace isolab {

using FpPoly = Polynomial<FieldElement>;
using QPoly = Polynomial<Rational>;

// Fields up to this size are searched exhaustively for roots.
inline constexpr u64 kExhaustiveRootLimit = u64{1} << 20;

// Distinct roots of f in its coefficient field, sorted by index.
std::vector<FieldElement> poly_roots(const FpPoly& f);
// Distinct roots of f in `field`; f may have coefficients in the prime subfield.
std::vector<FieldElement> poly_roots(const FpPoly& f, const FiniteField& field);

// x^(q^n) mod m where q is the size of the coefficient field.
FpPoly frobenius_power_of_x(const FpPoly& m, unsigned n);

bool is_irreducible(const FpPoly& f);

// Lexicographically smallest monic irreducible of degree k over F_p, where the
// order is by the integer sum c_i p^i over the non-leading coefficients.
FpPoly find_irreducible(u64 p, unsigned k);

// Distinct rational roots by the rational root theorem, sorted ascending.
std::vector<Rational> rational_roots(const QPoly& f);

// All n-th roots of c in its field.
std::vector<FieldElement> nth_roots(const FieldElement& c, unsigned n);
std::vector<Rational> nth_roots(const Rational& c, unsigned n);

// Lift polynomial coefficients from the prime subfield into `field`.
FpPoly lift_poly(const FpPoly& f, const FiniteField& field);

}  // namespace isolab
