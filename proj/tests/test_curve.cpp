#include <doctest.h>

#include <cmath>
#include <random>

#include "isolab/curve.hpp"
#include "isolab/division.hpp"
#include "isolab/roots.hpp"
#include "isolab/torsion.hpp"

using namespace isolab;

namespace {

QCurve qcurve(long a1, long a2, long a3, long a4, long a6) {
    return QCurve(Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6));
}

FqCurve fcurve(const FiniteField& F, std::array<long, 5> a) {
    return FqCurve(F.from_int(a[0]), F.from_int(a[1]), F.from_int(a[2]), F.from_int(a[3]), F.from_int(a[4]));
}

std::optional<FqCurve> random_curve(const FiniteField& F, std::mt19937_64& rng, bool long_form) {
    std::array<FieldElement, 5> a;
    for (size_t i = 0; i < 5; ++i) a[i] = (long_form || i >= 3) ? F.random(rng) : F.zero();
    try {
        return FqCurve(a);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

// Points counted by testing every (x, y) pair.
u64 naive_count(const FqCurve& E) {
    const u64 q = *E.a1().field().size();
    u64 n = 1;
    for (u64 i = 0; i < q; ++i)
        for (u64 j = 0; j < q; ++j)
            if (E.contains(E.a1().field().element_at(i), E.a1().field().element_at(j))) ++n;
    return n;
}

}  // namespace

TEST_CASE("group law on a rational curve with a 3-torsion point") {
    QCurve E = qcurve(1, 0, 2, 0, 0);
    QPoint P = E.point(Rational(0), Rational(0));
    CHECK(P + P == E.point(Rational(0), Rational(-2)));
    CHECK((3 * P).is_infinity());
    CHECK(has_exact_order(P, 3));
    CHECK_THROWS_AS(E.point(Rational(1), Rational(1)), DomainError);
}

TEST_CASE("singular and small-characteristic curves are rejected") {
    CHECK_THROWS_AS(qcurve(0, 0, 0, 0, 0), DomainError);
    CHECK_THROWS_AS(fcurve(FiniteField::prime(3), {0, 0, 0, 1, 1}), DomainError);
    CHECK_THROWS_AS(fcurve(FiniteField::prime(2), {0, 0, 0, 1, 1}), DomainError);
}

TEST_CASE("points on different curves cannot be added") {
    const auto& F = FiniteField::prime(7);
    FqCurve E1 = fcurve(F, {0, 0, 0, 1, 0});
    FqCurve E2 = fcurve(F, {0, 0, 0, 2, 0});
    FqPoint P = E1.point(F.zero(), F.zero());
    FqPoint Q = E2.point(F.zero(), F.zero());
    CHECK_THROWS_AS(P + Q, StructuralError);
}

TEST_CASE("point counts match enumeration and the Hasse bound") {
    const auto& F5 = FiniteField::prime(5);
    CHECK(curve_order(fcurve(F5, {0, 0, 0, 1, 0})) == 4);
    std::mt19937_64 rng(11);
    for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 31ULL}) {
        const auto& F = FiniteField::prime(p);
        for (int t = 0; t < 10; ++t) {
            auto E = random_curve(F, rng, true);
            if (!E) continue;
            const u64 n = curve_order(*E);
            CHECK(n == naive_count(*E));
            CHECK(n == enumerate_points(*E).size());
            CHECK(std::abs(static_cast<double>(p + 1) - static_cast<double>(n)) <= 2 * std::sqrt(double(p)));
        }
    }
    const auto& F25 = FiniteField::extension(5, 2);
    for (int t = 0; t < 5; ++t) {
        auto E = random_curve(F25, rng, true);
        if (E) CHECK(curve_order(*E) == naive_count(*E));
    }
    CHECK_THROWS_AS(curve_order(fcurve(FiniteField::prime(1000003), {0, 0, 0, 1, 1})), CapabilityError);
}

TEST_CASE("group law is associative and orders divide the group order") {
    std::mt19937_64 rng(5);
    const auto& F = FiniteField::extension(101, 2);
    for (int t = 0; t < 10; ++t) {
        auto E = random_curve(F, rng, true);
        if (!E) continue;
        FqPoint P = random_point(*E, rng), Q = random_point(*E, rng), R = random_point(*E, rng);
        CHECK((P + Q) + R == P + (Q + R));
        CHECK(P + Q == Q + P);
        CHECK((P - P).is_infinity());
        CHECK((P + P) == 2 * P);
    }
    const auto& Fp = FiniteField::prime(1009);
    for (int t = 0; t < 10; ++t) {
        auto E = random_curve(Fp, rng, true);
        if (!E) continue;
        const long n = static_cast<long>(curve_order(*E));
        CHECK(random_point(*E, rng).times(n).is_infinity());
    }
}

TEST_CASE("b-invariants and the 3-division polynomial of the rational isogenous curve") {
    QCurve E = qcurve(1, 0, 2, -10, -30);
    CHECK(E.b2() == Rational(1));
    CHECK(E.b4() == Rational(-18));
    CHECK(E.b6() == Rational(-116));
    CHECK(E.b8() == Rational(-110));
    QPoly psi3 = division_polynomial(E, 3);
    std::vector<Rational> expected{Rational(-110), Rational(-348), Rational(-54), Rational(1), Rational(3)};
    CHECK(psi3 == QPoly(expected));
}

TEST_CASE("short-form 3-division polynomial") {
    const auto& F = FiniteField::prime(101);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        auto E = random_curve(F, rng, false);
        if (!E) continue;
        const FieldElement a = E->a4(), b = E->a6();
        FpPoly expected(std::vector<FieldElement>{-(a * a), F.from_int(12) * b, F.from_int(6) * a, F.zero(), F.from_int(3)});
        CHECK(division_polynomial(*E, 3) == expected);
    }
}

TEST_CASE("division polynomial roots are the x-coordinates of torsion points") {
    std::mt19937_64 rng(17);
    for (u64 p : {101ULL, 103ULL}) {
        const auto& F = FiniteField::prime(p);
        for (int t = 0; t < 6; ++t) {
            auto E = random_curve(F, rng, true);
            if (!E) continue;
            auto pts = enumerate_points(*E);
            DivisionPolynomials<FieldElement> div(*E);
            for (int n = 2; n <= 7; ++n) {
                FpPoly psi = div.torsion_polynomial(n);
                for (const auto& P : pts) {
                    if (P.is_infinity()) continue;
                    const bool torsion = P.times(n).is_infinity();
                    CHECK(torsion == psi.eval(P.x()).is_zero());
                }
            }
        }
    }
}

TEST_CASE("Weil pairing on 2-torsion of y^2 = x^3 + x over F_5") {
    const auto& F = FiniteField::prime(5);
    FqCurve E = fcurve(F, {0, 0, 0, 1, 0});
    FqPoint P = E.point(F.zero(), F.zero());
    FqPoint Q = E.point(F.from_int(2), F.zero());
    CHECK(weil_pairing(P, Q, 2) == F.from_int(4));
    CHECK(weil_pairing(P, P, 2).is_one());
    CHECK(weil_pairing(P, E.infinity(), 2).is_one());
    CHECK_THROWS_AS(weil_pairing(P, Q, 3), DomainError);
}

TEST_CASE("torsion bases: independence, pairing laws and Frobenius invariants") {
    std::mt19937_64 rng(23);
    int checked = 0;
    for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL}) {
        const auto& F = FiniteField::prime(p);
        for (unsigned ell : {2u, 3u, 5u}) {
            if (ell == p) continue;
            for (int t = 0; t < 3; ++t) {
                auto E = random_curve(F, rng, t % 2 == 0);
                if (!E) continue;
                TorsionBasis B = torsion_basis(*E, ell, static_cast<u64>(t));
                CHECK(has_exact_order(B.P, ell));
                CHECK(has_exact_order(B.Q, ell));
                FieldElement e = weil_pairing(B.P, B.Q, ell);
                CHECK(!e.is_one());
                CHECK(e.pow(u64{ell}).is_one());
                // e(aP + bQ, cP + dQ) = e(P, Q)^(ad - bc)
                for (int s = 0; s < 3; ++s) {
                    long a = long(uniform_below(rng, ell)), b = long(uniform_below(rng, ell));
                    long c = long(uniform_below(rng, ell)), d = long(uniform_below(rng, ell));
                    long det = mod_ell(a * d - b * c, ell);
                    CHECK(weil_pairing(basis_combination(B, a, b), basis_combination(B, c, d), ell) ==
                          e.pow(u64(det)));
                }
                FrobeniusMatrix M = frobenius_matrix(B);
                const u64 n = curve_order(*E);
                CHECK(M.matrix.determinant() == mod_ell(long(p), ell));
                CHECK(M.matrix.trace() == mod_ell(long(p + 1) - long(n), ell));
                CHECK(M.matrix.pow(B.degree).is_identity());
                for (unsigned j = 1; j < B.degree; ++j) CHECK(!M.matrix.pow(j).is_identity());
                // rational ell-torsion counted directly
                u64 tors = 0;
                for (const auto& P : enumerate_points(*E))
                    if (P.times(long(ell)).is_infinity()) ++tors;
                const unsigned dim = rational_ell_torsion(*E, ell);
                CHECK(tors == (dim == 0 ? 1u : dim == 1 ? ell : ell * ell));
                ++checked;
            }
        }
    }
    CHECK(checked > 40);
}

TEST_CASE("torsion degree agrees with enumeration over small extensions") {
    std::mt19937_64 rng(29);
    int checked = 0;
    for (u64 p : {5ULL, 7ULL, 11ULL}) {
        const auto& F = FiniteField::prime(p);
        for (int t = 0; t < 8; ++t) {
            auto E = random_curve(F, rng, false);
            if (!E) continue;
            const unsigned ell = 3;
            const unsigned k = torsion_degree(*E, ell);
            double size = std::pow(double(p), double(k));
            if (size > 20000) continue;
            for (unsigned j = 1; j <= k; ++j) {
                const auto& L = FiniteField::extension(p, j);
                FqCurve EL = lift_curve(*E, L);
                u64 tors = 0;
                for (const auto& P : enumerate_points(EL))
                    if (P.times(long(ell)).is_infinity()) ++tors;
                if (j == k)
                    CHECK(tors == 9);
                else
                    CHECK(tors < 9);
            }
            ++checked;
        }
    }
    CHECK(checked > 5);
}

TEST_CASE("rational torsion generators") {
    const auto& F = FiniteField::prime(7);
    FqCurve E = fcurve(F, {1, 0, 2, 0, 0});
    auto gens = rational_torsion_generators(E, 3);
    REQUIRE(!gens.empty());
    for (const auto& G : gens) CHECK(has_exact_order(G, 3));
    bool has_origin = false;
    for (const auto& G : gens)
        for (long i = 1; i < 3; ++i)
            if (G.times(i) == E.point(F.zero(), F.zero())) has_origin = true;
    CHECK(has_origin);
}
