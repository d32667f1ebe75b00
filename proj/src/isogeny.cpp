#include "isolab/isogeny.hpp"

#include <map>
#include <thread>

#include "isolab/division.hpp"

namespace isolab {

namespace {

// Solves sum_i c_i cols[i] = rhs over the field; nullopt when inconsistent.
std::optional<std::vector<FieldElement>> solve_columns(const std::vector<std::vector<FieldElement>>& cols,
                                                       const std::vector<FieldElement>& rhs) {
    const size_t n = rhs.size(), d = cols.size();
    std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(d + 1));
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < d; ++c) m[r][c] = cols[c][r];
        m[r][d] = rhs[r];
    }
    std::vector<size_t> pivot_cols;
    size_t row = 0;
    for (size_t c = 0; c < d && row < n; ++c) {
        size_t piv = row;
        while (piv < n && m[piv][c].is_zero()) ++piv;
        if (piv == n) continue;
        std::swap(m[piv], m[row]);
        const FieldElement inv = m[row][c].inverse();
        for (auto& e : m[row]) e *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            const FieldElement f = m[r][c];
            for (size_t k = c; k <= d; ++k) m[r][k] -= f * m[row][k];
        }
        pivot_cols.push_back(c);
        ++row;
    }
    for (size_t r = row; r < n; ++r)
        if (!m[r][d].is_zero()) return std::nullopt;
    std::vector<FieldElement> sol(d, rhs.empty() ? FieldElement() : rhs[0].zero_like());
    for (size_t i = 0; i < pivot_cols.size(); ++i) sol[pivot_cols[i]] = m[i][d];
    return sol;
}

std::vector<FieldElement> dense(const FpPoly& f, size_t n, const FieldElement& zero) {
    std::vector<FieldElement> v(n, zero);
    for (size_t i = 0; i < f.coeffs().size() && i < n; ++i) v[i] = f.coeffs()[i];
    return v;
}

// Minimal polynomial of xi in F[x]/(r).
FpPoly minimal_polynomial_mod(const FpPoly& xi, const FpPoly& r) {
    const FieldElement zero = r.zero();
    const size_t n = static_cast<size_t>(r.degree());
    std::vector<FpPoly> powers{FpPoly::constant(zero.one_like())};
    std::vector<std::vector<FieldElement>> cols{dense(powers[0], n, zero)};
    for (size_t d = 1; d <= n; ++d) {
        powers.push_back(mulmod(powers.back(), xi, r));
        std::vector<FieldElement> rhs = dense(powers.back(), n, zero);
        for (auto& e : rhs) e = -e;
        if (auto c = solve_columns(cols, rhs)) {
            std::vector<FieldElement> coeffs = *c;
            coeffs.push_back(zero.one_like());
            return FpPoly(coeffs);
        }
        cols.push_back(dense(powers.back(), n, zero));
    }
    throw InternalError("minimal polynomial search exceeded the algebra dimension");
}

std::pair<u64, u64> short_key(const FqCurve& E) { return {E.a4().index(), E.a6().index()}; }

}  // namespace

FpPoly dual_kernel_polynomial(const FqIsogeny& phi, const FpPoly* torsion) {
    const FqCurve& E = phi.domain();
    const unsigned ell = phi.degree();
    const FpPoly& h = phi.kernel_polynomial();
    const FpPoly T = torsion ? *torsion : division_polynomial(E, static_cast<int>(ell));
    auto [quot, rem] = FpPoly::divmod(T, h);
    if (!rem.is_zero()) throw InternalError("kernel polynomial does not divide the torsion polynomial");
    const FpPoly r = quot.monic();
    auto inv = inverse_mod(mulmod(h, h, r), r);
    if (!inv) throw InternalError("kernel polynomial is not coprime to the non-kernel torsion");
    const FpPoly xi = mulmod(phi.x_numerator() % r, *inv, r);
    FpPoly mp = minimal_polynomial_mod(xi, r);
    const int expected = ell == 2 ? 1 : static_cast<int>((ell - 1) / 2);
    if (mp.degree() != expected) throw InternalError("dual kernel polynomial has unexpected degree");
    return mp;
}

FpPoly transport_kernel_polynomial(const FpPoly& h, const FqIsomorphism& iso) {
    const FpPoly g(std::vector<FieldElement>{iso.r, iso.u * iso.u});
    return compose(h, g).monic();
}

Subspace line_from_kernel_polynomial(const TorsionBasis& B, const FpPoly& h) {
    const FiniteField& L = B.curve.a1().field();
    const FpPoly hl = &h.zero().field() == &L ? h : lift_poly(h, L);
    std::vector<FlVector> found;
    auto test = [&](unsigned i, unsigned j) {
        const FqPoint G = basis_combination(B, i, j);
        if (!G.is_infinity() && hl.eval(G.x()).is_zero()) found.push_back({i, j});
    };
    test(0, 1);
    for (unsigned j = 0; j < B.ell; ++j) test(1, j);
    if (found.size() != 1) throw InternalError("kernel polynomial does not single out one line of the torsion");
    return Subspace::span(B.ell, 2, found);
}

Subspace dual_kernel(const FqIsogeny& phi, const TorsionBasis& B) {
    if (!(B.base_curve == phi.codomain())) throw DomainError("torsion basis is not for the isogeny codomain");
    return line_from_kernel_polynomial(B, dual_kernel_polynomial(phi));
}

FqCurve canonical_short_model(const FqCurve& E) {
    const FiniteField& F = E.a1().field();
    const FieldElement A = F.from_int(-27) * E.c4(), B = F.from_int(-54) * E.c6();
    if (F.is_prime_field()) {
        const u64 p = F.characteristic();
        const u64 a = A.value(), b = B.value();
        u64 best_a = a, best_b = b;
        for (u64 l = 2; l < p; ++l) {
            const u64 l2 = modp::mul(l, l, p);
            const u64 l4 = modp::mul(l2, l2, p);
            const u64 ca = modp::mul(l4, a, p);
            if (ca > best_a) continue;
            const u64 cb = modp::mul(modp::mul(l4, l2, p), b, p);
            if (ca < best_a || cb < best_b) {
                best_a = ca;
                best_b = cb;
            }
        }
        return FqCurve::short_form(F.from_int(static_cast<i64>(best_a)), F.from_int(static_cast<i64>(best_b)));
    }
    const auto size = F.size();
    if (!size || *size > kPointCountCap) throw CapabilityError("canonical models are enumerated only for q <= 10^6");
    FieldElement best_a = A, best_b = B;
    for (u64 i = 2; i < *size; ++i) {
        const FieldElement l = F.element_at(i);
        const FieldElement l2 = l * l, l4 = l2 * l2;
        const FieldElement ca = l4 * A, cb = l4 * l2 * B;
        if (ca < best_a || (ca == best_a && cb < best_b)) {
            best_a = ca;
            best_b = cb;
        }
    }
    return FqCurve::short_form(best_a, best_b);
}

ArmChecks check_isogeny(const FqIsogeny& phi, const FpPoly& dual, std::mt19937_64& rng, unsigned samples) {
    ArmChecks c;
    const FqCurve& E = phi.domain();
    const FqCurve& E2 = phi.codomain();
    const unsigned ell = phi.degree();
    c.nonsingular = !E2.discriminant().is_zero();

    const FpPoly& h = phi.kernel_polynomial();
    const int expected = ell == 2 ? 1 : static_cast<int>((ell - 1) / 2);
    bool kernel_ok = h.degree() == expected && poly_gcd(h, h.derivative()).degree() == 0;
    FqPoint R = E.infinity();
    for (unsigned i = 0; i < ell && kernel_ok; ++i, R += phi.kernel_point()) kernel_ok = phi(R).is_infinity();
    c.kernel_size = kernel_ok;

    bool hom = true;
    for (unsigned s = 0; s < samples && hom; ++s) {
        const FqPoint Q1 = random_point(E, rng), Q2 = random_point(E, rng);
        const FqPoint i1 = phi(Q1), i2 = phi(Q2);
        hom = (i1.is_infinity() || E2.contains(i1.x(), i1.y())) && phi(Q1 + Q2) == i1 + i2 &&
              phi(Q1 + phi.kernel_point()) == i1;
    }
    c.homomorphism = hom;

    try {
        c.dual_quotient = kohel_codomain(E2, dual, ell).j_invariant() == E.j_invariant();
    } catch (const DomainError&) {
        c.dual_quotient = false;
    }
    return c;
}

u64 source_curve_count(const FiniteField& field, const GraphBuildOptions& opt) {
    const auto q = field.size();
    if (!q) throw CapabilityError("field too large to enumerate curves");
    u64 per = (*q) * (*q);
    return (opt.short_curves ? per : 0) + (opt.family_curves ? per : 0);
}

namespace {

std::vector<std::array<FieldElement, 5>> source_coefficients(const FiniteField& F, const GraphBuildOptions& opt) {
    std::vector<std::array<FieldElement, 5>> out;
    const u64 q = *F.size();
    const FieldElement z = F.zero();
    if (opt.short_curves)
        for (u64 a = 0; a < q; ++a)
            for (u64 b = 0; b < q; ++b) out.push_back({z, z, z, F.element_at(a), F.element_at(b)});
    if (opt.family_curves)
        for (u64 v = 0; v < q; ++v)
            for (u64 w = 0; w < q; ++w) {
                const FieldElement V = F.element_at(v), W = F.element_at(w);
                out.push_back({W, z, V, z, z});
            }
    return out;
}

struct PartialGraph {
    FqCurve target;
    std::vector<GraphArm> arms;
    size_t raw = 0;
};

using GraphMap = std::map<std::pair<u64, u64>, PartialGraph>;

void add_arm(GraphMap& graphs, const std::pair<u64, u64>& key, const FqCurve& target, GraphArm arm, size_t raw) {
    auto it = graphs.find(key);
    if (it == graphs.end()) it = graphs.emplace(key, PartialGraph{target, {}, 0}).first;
    it->second.raw += raw;
    for (const auto& a : it->second.arms)
        if (a.dual_kernel == arm.dual_kernel) return;
    it->second.arms.push_back(std::move(arm));
}

struct ChunkResult {
    GraphMap graphs;
    GraphBuildStats stats;
};

void process_range(const std::vector<std::array<FieldElement, 5>>& coeffs, size_t begin, size_t end, unsigned ell,
                   const GraphBuildOptions& opt, ChunkResult& out) {
    for (size_t idx = begin; idx < end; ++idx) {
        std::optional<FqCurve> E;
        try {
            E.emplace(coeffs[idx]);
        } catch (const DomainError&) {
            continue;
        }
        ++out.stats.curves_scanned;
        if (curve_order(*E) % ell != 0) continue;
        std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + idx);
        const FpPoly psi = division_polynomial(*E, static_cast<int>(ell));
        for (const FqPoint& P : rational_torsion_generators(*E, ell, psi)) {
            FqIsogeny phi = velu_quotient(*E, P, ell);
            FpPoly dual = dual_kernel_polynomial(phi, &psi);
            const FqCurve target = canonical_short_model(phi.codomain());
            auto iso = curves_isomorphic(phi.codomain(), target);
            if (!iso) throw InternalError("codomain is not isomorphic to its canonical model");
            FpPoly dual_t = transport_kernel_polynomial(dual, *iso);
            ArmChecks checks = check_isogeny(phi, dual, rng, opt.homomorphism_samples);
            ++out.stats.isogenies;
            if (!checks.homomorphism) ++out.stats.homomorphism_failures;
            if (!checks.kernel_size) ++out.stats.kernel_failures;
            if (!checks.nonsingular) ++out.stats.singular_failures;
            if (!checks.dual_quotient) ++out.stats.dual_failures;
            GraphArm arm{*E, P, std::move(phi), *iso, std::move(dual_t), checks};
            if (!checks.all() && out.stats.failed_arms.size() < 16) out.stats.failed_arms.push_back(arm);
            add_arm(out.graphs, short_key(target), target, std::move(arm), 1);
        }
    }
}

}  // namespace

GraphBuildResult build_pointed_graphs(const FiniteField& field, unsigned ell, const GraphBuildOptions& opt) {
    if (!field.is_prime_field()) throw CapabilityError("pointed graphs are built over prime fields only");
    const u64 p = field.characteristic();
    if (p <= 3) throw DomainError("characteristic must exceed 3");
    if (ell < 2 || !is_prime(ell)) throw DomainError("ell must be prime");
    if (ell == p) throw DomainError("ell must differ from the characteristic");
    const u64 count = source_curve_count(field, opt);
    if (count > opt.max_curves)
        throw CapabilityError("curve enumeration needs " + std::to_string(count) + " curves, above max-curves = " +
                              std::to_string(opt.max_curves));

    const auto coeffs = source_coefficients(field, opt);
    const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, 64));
    std::vector<ChunkResult> chunks(threads);
    const size_t n = coeffs.size();
    if (threads == 1) {
        process_range(coeffs, 0, n, ell, opt, chunks[0]);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    process_range(coeffs, n * t / threads, n * (t + 1) / threads, ell, opt, chunks[t]);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    GraphBuildResult result;
    GraphMap merged;
    for (auto& c : chunks) {
        result.stats.curves_scanned += c.stats.curves_scanned;
        result.stats.isogenies += c.stats.isogenies;
        result.stats.homomorphism_failures += c.stats.homomorphism_failures;
        result.stats.kernel_failures += c.stats.kernel_failures;
        result.stats.singular_failures += c.stats.singular_failures;
        result.stats.dual_failures += c.stats.dual_failures;
        for (auto& a : c.stats.failed_arms)
            if (result.stats.failed_arms.size() < 16) result.stats.failed_arms.push_back(std::move(a));
        for (auto& [key, g] : c.graphs) {
            bool first = true;
            for (auto& arm : g.arms) {
                add_arm(merged, key, g.target, std::move(arm), first ? g.raw : 0);
                first = false;
            }
        }
    }
    for (auto& [key, g] : merged) {
        PointedGraph pg{ell, g.target, std::move(g.arms), g.raw, std::nullopt, {}};
        if (pg.arms.size() >= opt.basis_min_arms) {
            pg.basis = torsion_basis(pg.target, ell, opt.seed);
            ++result.stats.bases;
            for (const auto& arm : pg.arms) pg.lines.push_back(line_from_kernel_polynomial(*pg.basis, arm.dual_kernel));
        }
        result.graphs.push_back(std::move(pg));
    }
    return result;
}

}  // namespace isolab
