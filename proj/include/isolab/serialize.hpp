#pragma once

#include <json.hpp>

#include "isolab/curve.hpp"
#include "isolab/galmod.hpp"
#include "isolab/rational.hpp"

namespace isolab {

using Json = nlohmann::json;

// Prime-field elements are integers; extension elements are coefficient arrays
// (low to high) over the field's modulus.
Json to_json(const FieldElement& x);
FieldElement element_from_json(const FiniteField& F, const Json& j);

Json field_to_json(const FiniteField& F);  // {"p", "k", "modulus"}
const FiniteField& field_from_json(const Json& j);

// {"p", "k", "modulus", "a": [a1, a2, a3, a4, a6]}
Json to_json(const FqCurve& E);
FqCurve curve_from_json(const Json& j);
// Rational curves use strings such as "-10" or "3/4" for the coefficients.
Json to_json(const QCurve& E);

// null for the point at infinity, [x, y] otherwise.
Json to_json(const FqPoint& P);
FqPoint point_from_json(const FqCurve& E, const Json& j);

Json to_json(const FlMatrix& m);  // row-major
FlMatrix matrix_from_json(unsigned ell, size_t rows, size_t cols, const Json& j);
FlVector vector_from_json(unsigned ell, size_t n, const Json& j);

// {"ell", "dim", "generators", "hyperplanes"}; each hyperplane is written as its
// defining functional. On input a hyperplane may also be given as a list of
// spanning vectors.
Json to_json(const GaloisModule& M);
Json to_json(const PointedConfiguration& cfg);
GaloisModule module_from_json(const Json& j);
PointedConfiguration configuration_from_json(const Json& j);
std::vector<Subspace> hyperplanes_from_json(unsigned ell, size_t dim, const Json& j);
Json hyperplanes_to_json(const std::vector<Subspace>& H);

}  // namespace isolab
