#include <doctest.h>

#include <map>
#include <random>

#include "isolab/division.hpp"
#include "isolab/isogeny.hpp"

using namespace isolab;

namespace {

std::optional<FqCurve> random_curve(const FiniteField& F, std::mt19937_64& rng, bool long_form) {
    std::array<FieldElement, 5> a;
    for (size_t i = 0; i < 5; ++i) a[i] = (long_form || i >= 3) ? F.random(rng) : F.zero();
    try {
        return FqCurve(a);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// Curves over F_p paired with a rational point of order ell.
std::vector<std::pair<FqCurve, FqPoint>> curves_with_torsion(u64 p, unsigned ell, int want, std::mt19937_64& rng) {
    std::vector<std::pair<FqCurve, FqPoint>> out;
    const auto& F = FiniteField::prime(p);
    for (int tries = 0; tries < 2000 && static_cast<int>(out.size()) < want; ++tries) {
        auto E = random_curve(F, rng, tries % 2 == 0);
        if (!E || curve_order(*E) % ell != 0) continue;
        auto gens = rational_torsion_generators(*E, ell);
        if (!gens.empty()) out.emplace_back(*E, gens[uniform_below(rng, gens.size())]);
    }
    return out;
}

}  // namespace

TEST_CASE("universal 3-isogeny family at (v, w) = (2, 1) over Q") {
    auto fam = family_E3(Rational(2), Rational(1));
    std::array<Rational, 5> e3{Rational(1), Rational(0), Rational(2), Rational(0), Rational(0)};
    std::array<Rational, 5> e3p{Rational(1), Rational(0), Rational(2), Rational(-10), Rational(-30)};
    CHECK(fam.E3.coefficients() == e3);
    CHECK(fam.E3_prime.coefficients() == e3p);
    CHECK(has_exact_order(fam.P, 3));
    QIsogeny phi = velu_quotient(fam.E3, fam.P);
    CHECK(phi.degree() == 3);
    CHECK(phi.codomain() == fam.E3_prime);
    auto iso = curves_isomorphic(phi.codomain(), fam.E3_prime);
    REQUIRE(iso);
    CHECK(iso->u.is_one());
    CHECK(iso->r.is_zero());
    CHECK(phi(fam.P).is_infinity());
    CHECK(phi(fam.P + fam.P).is_infinity());
    CHECK_THROWS_AS(family_E3(Rational(0), Rational(1)), DomainError);
}

TEST_CASE("family quotient matches E3' on random parameters over random prime fields") {
    std::mt19937_64 rng(41);
    const std::vector<u64> primes{5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 101, 211, 1009, 10007};
    int done = 0;
    while (done < 100) {
        const auto& F = FiniteField::prime(primes[uniform_below(rng, primes.size())]);
        const FieldElement v = F.random(rng), w = F.random(rng);
        std::optional<Family3<FieldElement>> fam;
        try {
            fam.emplace(family_E3(v, w));
        } catch (const DomainError&) {
            continue;
        }
        CHECK(has_exact_order(fam->P, 3));
        FqIsogeny phi = velu_quotient(fam->E3, fam->P, 3);
        CHECK(curves_isomorphic(phi.codomain(), fam->E3_prime).has_value());
        CHECK(phi.codomain() == fam->E3_prime);
        ++done;
    }
}

TEST_CASE("Velu maps are homomorphisms with fibres of size ell") {
    std::mt19937_64 rng(43);
    for (unsigned ell : {2u, 3u, 5u, 7u}) {
        for (u64 p : {31ULL, 61ULL, 101ULL}) {
            for (auto& [E, P] : curves_with_torsion(p, ell, 3, rng)) {
                FqIsogeny phi = velu_quotient(E, P, ell);
                CHECK(phi.degree() == ell);
                CHECK(phi(P).is_infinity());
                for (int s = 0; s < 20; ++s) {
                    FqPoint Q1 = random_point(E, rng), Q2 = random_point(E, rng);
                    CHECK(phi(Q1 + Q2) == phi(Q1) + phi(Q2));
                    CHECK(phi(Q1 + P) == phi(Q1));
                }
                // fibres over the image, counted over all rational points
                std::map<std::pair<u64, u64>, int> fibre;
                int at_infinity = 0;
                const auto pts = enumerate_points(E);
                for (const auto& R : pts) {
                    FqPoint S = phi(R);
                    if (S.is_infinity()) {
                        ++at_infinity;
                        continue;
                    }
                    CHECK(phi.codomain().contains(S.x(), S.y()));
                    ++fibre[{S.x().value(), S.y().value()}];
                }
                CHECK(at_infinity == static_cast<int>(ell));
                for (const auto& [k, n] : fibre) CHECK(n == static_cast<int>(ell));
                CHECK(curve_order(phi.codomain()) == pts.size());
                // independent codomain formula from the kernel polynomial
                CHECK(kohel_codomain(E, phi.kernel_polynomial(), ell) == phi.codomain());
            }
        }
    }
}

TEST_CASE("Velu input validation") {
    const auto& F = FiniteField::prime(7);
    FqCurve E(F.one(), F.zero(), F.from_int(2), F.zero(), F.zero());
    FqPoint P = E.point(F.zero(), F.zero());
    CHECK_THROWS_AS(velu_quotient(E, P, 5), DomainError);
    CHECK_THROWS_AS(velu_quotient(E, E.infinity()), DomainError);
    CHECK(velu_quotient(E, P).degree() == 3);
    const auto& F3 = FiniteField::prime(13);
    FqCurve E13(F3.zero(), F3.zero(), F3.zero(), F3.one(), F3.zero());
    CHECK_THROWS_AS(velu_quotient(E, E13.point(F3.zero(), F3.zero())), DomainError);
}

TEST_CASE("dual kernels: image of the domain torsion, Frobenius stable, quotient returns the domain") {
    std::mt19937_64 rng(47);
    int checked = 0;
    for (unsigned ell : {2u, 3u, 5u}) {
        for (u64 p : {7ULL, 11ULL, 13ULL, 19ULL, 31ULL}) {
            if (p == ell) continue;
            for (auto& [E, P] : curves_with_torsion(p, ell, 2, rng)) {
                FqIsogeny phi = velu_quotient(E, P, ell);
                const FpPoly hd = dual_kernel_polynomial(phi);
                // image of the full domain torsion
                TorsionBasis Bd = torsion_basis(E, ell);
                if (Bd.degree > 12) continue;
                std::vector<FqPoint> images;
                for (unsigned i = 0; i < ell; ++i)
                    for (unsigned j = 0; j < ell; ++j) {
                        FqPoint S = phi(basis_combination(Bd, i, j));
                        bool seen = false;
                        for (const auto& T : images) seen = seen || T == S;
                        if (!seen) images.push_back(S);
                    }
                CHECK(images.size() == ell);
                const FpPoly hl = lift_poly(hd, Bd.curve.a1().field());
                for (const auto& S : images)
                    if (!S.is_infinity()) CHECK(hl.eval(S.x()).is_zero());

                TorsionBasis Bc = torsion_basis(phi.codomain(), ell);
                Subspace H = dual_kernel(phi, Bc);
                CHECK(H.dim() == 1);
                FlMatrix F = frobenius_matrix(Bc).matrix;
                CHECK(H.image(F) == H);
                const FlVector g = H.basis()[0];
                FqPoint G = basis_combination(Bc, g[0], g[1]);
                CHECK(has_exact_order(G, ell));
                FqCurve back = velu_quotient(Bc.curve, G, ell).codomain();
                CHECK(back.j_invariant() == lift_curve(E, Bc.curve.a1().field()).j_invariant());
                CHECK(kohel_codomain(phi.codomain(), hd, ell).j_invariant() == E.j_invariant());
                ++checked;
            }
        }
    }
    CHECK(checked > 10);
}

TEST_CASE("curve isomorphisms") {
    std::mt19937_64 rng(53);
    const auto& F = FiniteField::prime(101);
    for (int t = 0; t < 30; ++t) {
        auto E = random_curve(F, rng, true);
        if (!E) continue;
        auto id = curves_isomorphic(*E, *E);
        REQUIRE(id);
        CHECK(id->u.is_one());
        CHECK(id->r.is_zero());
        CHECK(id->s.is_zero());
        CHECK(id->t.is_zero());

        FieldElement u = F.random(rng);
        if (u.is_zero()) u = F.one();
        const FieldElement r = F.random(rng), s = F.random(rng), tt = F.random(rng);
        FqCurve E2(transform_coefficients(*E, u, r, s, tt));
        auto iso = curves_isomorphic(*E, E2);
        REQUIRE(iso);
        CHECK(iso->valid());
        FqPoint P = random_point(*E, rng);
        FqPoint Q = (*iso)(P);
        CHECK(E2.contains(Q.x(), Q.y()));
        CHECK(iso->inverse()(Q) == P);
        CHECK(iso->then(iso->inverse()).valid());
        CHECK(canonical_short_model(*E) == canonical_short_model(E2));
        // transitivity through a third model
        FqCurve E3(transform_coefficients(E2, F.from_int(3), F.one(), F.zero(), F.from_int(5)));
        auto a = curves_isomorphic(*E, E2), b = curves_isomorphic(E2, E3);
        REQUIRE(a);
        REQUIRE(b);
        CHECK(a->then(*b).valid());
        CHECK(curves_isomorphic(E3, *E).has_value());
    }
}

TEST_CASE("quadratic twists are isomorphic only over the quadratic extension") {
    std::mt19937_64 rng(59);
    const auto& F = FiniteField::prime(103);
    const auto& F2 = FiniteField::extension(103, 2);
    const FieldElement d = F.nonsquare();
    int checked = 0;
    for (int t = 0; t < 30; ++t) {
        auto E = random_curve(F, rng, false);
        if (!E || E->a4().is_zero() || E->a6().is_zero()) continue;
        FqCurve T = FqCurve::short_form(E->a4() * d * d, E->a6() * d * d * d);
        CHECK(E->j_invariant() == T.j_invariant());
        CHECK(!curves_isomorphic(*E, T).has_value());
        CHECK(!(canonical_short_model(*E) == canonical_short_model(T)));
        CHECK(curves_isomorphic(lift_curve(*E, F2), lift_curve(T, F2)).has_value());
        ++checked;
    }
    CHECK(checked > 10);
    FqCurve A = FqCurve::short_form(F.one(), F.one());
    FqCurve B = FqCurve::short_form(F.from_int(2), F.one());
    if (!(A.j_invariant() == B.j_invariant())) CHECK(!curves_isomorphic(A, B).has_value());
}

TEST_CASE("isomorphisms at j = 0 and j = 1728") {
    std::mt19937_64 rng(61);
    for (u64 p : {103ULL, 109ULL}) {  // 103 = 1 mod 3, 109 = 1 mod 4
        const auto& F = FiniteField::prime(p);
        for (auto E : {FqCurve::short_form(F.zero(), F.one()), FqCurve::short_form(F.one(), F.zero())}) {
            for (int t = 0; t < 10; ++t) {
                FieldElement u = F.random(rng);
                if (u.is_zero()) continue;
                FqCurve E2(transform_coefficients(E, u, F.random(rng), F.random(rng), F.random(rng)));
                auto iso = curves_isomorphic(E, E2);
                REQUIRE(iso);
                CHECK(iso->valid());
                CHECK(canonical_short_model(E) == canonical_short_model(E2));
            }
        }
    }
}

TEST_CASE("pointed graphs over F_7 with ell = 3") {
    const auto& F = FiniteField::prime(7);
    GraphBuildResult res = build_pointed_graphs(F, 3);
    CHECK(res.stats.isogenies > 0);
    CHECK(res.stats.homomorphism_failures == 0);
    CHECK(res.stats.kernel_failures == 0);
    CHECK(res.stats.singular_failures == 0);
    CHECK(res.stats.dual_failures == 0);
    int multi = 0;
    for (const auto& g : res.graphs) {
        CHECK(g.arms.size() <= 4);
        CHECK(g.target.is_short());
        for (const auto& arm : g.arms) {
            CHECK(arm.kernel_point.x().field().is_prime_field());
            CHECK(has_exact_order(arm.kernel_point, 3));
            CHECK(arm.to_target.valid());
            CHECK(arm.to_target.target == g.target);
            CHECK(arm.isogeny.codomain() == arm.to_target.source);
        }
        if (g.arms.size() >= 2) {
            ++multi;
            REQUIRE(g.basis);
            CHECK(curve_order(g.target) == 9);
            CHECK(frobenius_matrix(*g.basis).matrix.is_identity());
            for (size_t i = 0; i < g.lines.size(); ++i)
                for (size_t j = i + 1; j < g.lines.size(); ++j) CHECK(!(g.lines[i] == g.lines[j]));
        }
    }
    CHECK(multi > 0);
}

TEST_CASE("no multi-arm graphs when q is not 1 mod ell") {
    for (auto [p, ell] : {std::pair<u64, unsigned>{11, 3}, {13, 5}, {17, 3}}) {
        GraphBuildResult res = build_pointed_graphs(FiniteField::prime(p), ell);
        for (const auto& g : res.graphs) CHECK(g.arms.size() == 1);
    }
}

TEST_CASE("graph building is deterministic and thread-count independent") {
    const auto& F = FiniteField::prime(13);
    GraphBuildOptions one, three;
    three.threads = 3;
    auto a = build_pointed_graphs(F, 3, one), b = build_pointed_graphs(F, 3, three);
    REQUIRE(a.graphs.size() == b.graphs.size());
    for (size_t i = 0; i < a.graphs.size(); ++i) {
        CHECK(a.graphs[i].target == b.graphs[i].target);
        CHECK(a.graphs[i].raw_arms == b.graphs[i].raw_arms);
        REQUIRE(a.graphs[i].arms.size() == b.graphs[i].arms.size());
        for (size_t j = 0; j < a.graphs[i].arms.size(); ++j)
            CHECK(a.graphs[i].arms[j].dual_kernel == b.graphs[i].arms[j].dual_kernel);
    }
    GraphBuildOptions tiny;
    tiny.max_curves = 10;
    CHECK_THROWS_AS(build_pointed_graphs(F, 3, tiny), CapabilityError);
}
