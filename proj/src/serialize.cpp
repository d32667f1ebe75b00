#include "isolab/serialize.hpp"

#include <string>

namespace isolab {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw StructuralError("malformed JSON: " + what); }

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

i64 integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
    return j.get<i64>();
}

u64 non_negative(const Json& j, const char* what) {
    const i64 v = integer(j, what);
    if (v < 0) malformed(std::string(what) + " must be non-negative");
    return static_cast<u64>(v);
}

}  // namespace

Json to_json(const FieldElement& x) {
    if (x.field().is_prime_field()) return x.value();
    Json a = Json::array();
    for (size_t i = 0; i < x.field().degree(); ++i) a.push_back(i < x.coeffs().size() ? x.coeffs()[i] : 0);
    return a;
}

FieldElement element_from_json(const FiniteField& F, const Json& j) {
    if (j.is_number_integer()) return F.from_int(j.get<i64>());
    if (!j.is_array() || j.size() > F.degree()) malformed("field element must be an integer or a coefficient array");
    std::vector<u64> c;
    for (const auto& x : j) c.push_back(F.base().from_int(integer(x, "coefficient")));
    return F.from_coeffs(c);
}

Json field_to_json(const FiniteField& F) {
    Json j{{"p", F.characteristic()}, {"k", F.degree()}};
    j["modulus"] = F.modulus();
    return j;
}

const FiniteField& field_from_json(const Json& j) {
    const u64 p = non_negative(member(j, "p"), "p");
    if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
    const u64 k = j.contains("k") ? non_negative(j.at("k"), "k") : 1;
    if (k == 0) malformed("k must be >= 1");
    if (k == 1) return FiniteField::prime(p);
    if (!j.contains("modulus")) return FiniteField::extension(p, static_cast<unsigned>(k));
    std::vector<u64> m;
    for (const auto& x : j.at("modulus")) m.push_back(non_negative(x, "modulus coefficient"));
    if (m.size() != k + 1) malformed("modulus must have k + 1 coefficients");
    return FiniteField::with_modulus(p, m);
}

Json to_json(const FqCurve& E) {
    Json j = field_to_json(E.a1().field());
    Json a = Json::array();
    for (const auto& c : E.coefficients()) a.push_back(to_json(c));
    j["a"] = a;
    return j;
}

FqCurve curve_from_json(const Json& j) {
    const FiniteField& F = field_from_json(j);
    const Json& a = member(j, "a");
    if (!a.is_array() || (a.size() != 5 && a.size() != 2)) malformed("\"a\" must list [a1,a2,a3,a4,a6] or [a4,a6]");
    if (a.size() == 2) return FqCurve::short_form(element_from_json(F, a[0]), element_from_json(F, a[1]));
    std::array<FieldElement, 5> c;
    for (size_t i = 0; i < 5; ++i) c[i] = element_from_json(F, a[i]);
    return FqCurve(c);
}

Json to_json(const QCurve& E) {
    Json a = Json::array();
    for (const auto& c : E.coefficients()) a.push_back(c.to_string());
    return Json{{"field", "Q"}, {"a", a}};
}

Json to_json(const FqPoint& P) {
    if (P.is_infinity()) return nullptr;
    return Json::array({to_json(P.x()), to_json(P.y())});
}

FqPoint point_from_json(const FqCurve& E, const Json& j) {
    if (j.is_null()) return E.infinity();
    if (!j.is_array() || j.size() != 2) malformed("point must be null or [x, y]");
    const FiniteField& F = E.a1().field();
    return E.point(element_from_json(F, j[0]), element_from_json(F, j[1]));
}

Json to_json(const FlMatrix& m) { return m.to_rows(); }

FlMatrix matrix_from_json(unsigned ell, size_t rows, size_t cols, const Json& j) {
    if (!j.is_array() || j.size() != rows) malformed("matrix must have " + std::to_string(rows) + " rows");
    std::vector<std::vector<long>> r;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) malformed("matrix rows must have " + std::to_string(cols) + " entries");
        std::vector<long> v;
        for (const auto& x : row) v.push_back(integer(x, "matrix entry"));
        r.push_back(std::move(v));
    }
    return FlMatrix::from_rows(ell, r);
}

FlVector vector_from_json(unsigned ell, size_t n, const Json& j) {
    if (!j.is_array() || j.size() != n) malformed("vector must have " + std::to_string(n) + " entries");
    FlVector v;
    for (const auto& x : j) v.push_back(static_cast<std::uint32_t>(mod_ell(integer(x, "vector entry"), ell)));
    return v;
}

Json to_json(const GaloisModule& M) {
    Json g = Json::array();
    for (const auto& m : M.generators()) g.push_back(to_json(m));
    return Json{{"ell", M.ell()}, {"dim", M.dim()}, {"generators", g}};
}

Json hyperplanes_to_json(const std::vector<Subspace>& H) {
    Json h = Json::array();
    for (const auto& s : H) h.push_back(defining_functional(s));
    return h;
}

Json to_json(const PointedConfiguration& cfg) {
    Json j = to_json(cfg.module);
    j["hyperplanes"] = hyperplanes_to_json(cfg.hyperplanes);
    return j;
}

GaloisModule module_from_json(const Json& j) {
    const u64 ell = non_negative(member(j, "ell"), "ell");
    const u64 dim = non_negative(member(j, "dim"), "dim");
    if (ell > 0xffff || dim > 64) throw CapabilityError("module too large (ell <= 65535, dim <= 64)");
    const Json& g = member(j, "generators");
    if (!g.is_array()) malformed("\"generators\" must be an array of matrices");
    if (ell < 2 || !is_prime(ell)) throw DomainError("ell must be prime, got " + std::to_string(ell));
    std::vector<FlMatrix> gens;
    for (const auto& m : g) gens.push_back(matrix_from_json(static_cast<unsigned>(ell), dim, dim, m));
    return GaloisModule(static_cast<unsigned>(ell), dim, std::move(gens));
}

std::vector<Subspace> hyperplanes_from_json(unsigned ell, size_t dim, const Json& j) {
    if (!j.is_array()) malformed("\"hyperplanes\" must be an array");
    std::vector<Subspace> H;
    for (const auto& h : j) {
        if (h.is_array() && !h.empty() && h[0].is_array()) {
            std::vector<FlVector> basis;
            for (const auto& v : h) basis.push_back(vector_from_json(ell, dim, v));
            H.push_back(Subspace::span(ell, dim, basis));
            if (H.back().dim() + 1 != dim) throw DomainError("hyperplane spanning set has rank " +
                                                             std::to_string(H.back().dim()) + ", expected " +
                                                             std::to_string(dim - 1));
        } else {
            const FlVector f = vector_from_json(ell, dim, h);
            if (std::all_of(f.begin(), f.end(), [](auto x) { return x == 0; }))
                throw DomainError("hyperplane functional is zero");
            H.push_back(Subspace::annihilated_by(ell, dim, {f}));
        }
    }
    return H;
}

PointedConfiguration configuration_from_json(const Json& j) {
    GaloisModule M = module_from_json(j);
    std::vector<Subspace> H;
    if (j.contains("hyperplanes")) H = hyperplanes_from_json(M.ell(), M.dim(), j.at("hyperplanes"));
    return {std::move(M), std::move(H)};
}

}  // namespace isolab
