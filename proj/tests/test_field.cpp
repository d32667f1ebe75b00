#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "isolab/roots.hpp"

using namespace isolab;

namespace {

FpPoly poly(const FiniteField& F, std::initializer_list<i64> low_to_high) {
    std::vector<FieldElement> cs;
    for (i64 c : low_to_high) cs.push_back(F.from_int(c));
    return FpPoly(std::move(cs));
}

QPoly qpoly(std::initializer_list<Rational> low_to_high) { return QPoly(std::vector<Rational>(low_to_high)); }

std::vector<u64> values(const std::vector<FieldElement>& xs) {
    std::vector<u64> out;
    for (const auto& x : xs) out.push_back(x.value());
    return out;
}

// Test-only: smallest monic quadratic x^2 + b x + c over F_p (ordered by c + b p)
// with no root in F_p, by direct evaluation of every candidate at every point.
std::pair<u64, u64> smallest_rootless_quadratic(u64 p) {
    for (u64 idx = 0; idx < p * p; ++idx) {
        u64 c = idx % p, b = idx / p;
        bool has_root = false;
        for (u64 x = 0; x < p && !has_root; ++x) has_root = (x * x + b * x + c) % p == 0;
        if (!has_root) return {b, c};
    }
    return {0, 0};
}

}  // namespace

TEST_CASE("prime field arithmetic examples") {
    const auto& F7 = FiniteField::prime(7);
    CHECK(F7.from_int(3).inverse().value() == 5);
    for (u64 p : {5ULL, 7ULL, 101ULL}) {
        const auto& F = FiniteField::prime(p);
        auto x = F.from_int(4);
        CHECK((x + F.from_int(static_cast<i64>(p - 1)) * x).is_zero());
    }
    CHECK(F7.from_int(-1).value() == 6);
}

TEST_CASE("extension field reduction by the modulus") {
    const auto& F25 = FiniteField::with_modulus(5, {2, 0, 1});
    auto t = F25.from_coeffs(std::vector<u64>{0, 1});
    CHECK(t * t == F25.from_int(3));
    // the deterministic F_25 uses the same modulus
    CHECK(&FiniteField::extension(5, 2) == &F25);
}

TEST_CASE("field errors") {
    const auto& F7 = FiniteField::prime(7);
    const auto& F11 = FiniteField::prime(11);
    CHECK_THROWS_AS(F7.one() + F11.one(), StructuralError);
    CHECK_THROWS_AS(F7.one() / F7.zero(), ArithmeticError);
    CHECK_THROWS_AS(FiniteField::prime(9), DomainError);
    CHECK_THROWS_AS(FiniteField::with_modulus(5, {1, 0, 1}), DomainError);  // x^2+1 = (x-2)(x-3)
}

TEST_CASE("inverse and Lagrange property on random elements") {
    std::mt19937_64 rng(11);
    std::vector<const FiniteField*> fields{&FiniteField::prime(7), &FiniteField::extension(5, 2),
                                           &FiniteField::extension(3, 5), &FiniteField::extension(101, 3),
                                           &FiniteField::extension(7, 12)};
    for (const auto* F : fields) {
        for (int i = 0; i < 50; ++i) {
            auto a = F->random(rng);
            if (a.is_zero()) continue;
            CHECK((a * a.inverse()).is_one());
            CHECK(a.pow(mpz_class(F->order() - 1)).is_one());
            auto b = F->random(rng), c = F->random(rng);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b) * c == a * (b * c));
            auto sq = a * a;
            auto r = sq.sqrt();
            REQUIRE(r.has_value());
            CHECK(*r * *r == sq);
        }
    }
}

TEST_CASE("poly_roots examples") {
    const auto& F5 = FiniteField::prime(5);
    CHECK(values(poly_roots(poly(F5, {1, 0, 1}))) == std::vector<u64>{2, 3});
    // 3 is a non-square mod 5: the squares are exactly {0,1,4}
    std::set<u64> squares;
    for (u64 x = 0; x < 5; ++x) squares.insert(x * x % 5);
    CHECK(squares.count(3) == 0);
    CHECK(poly_roots(poly(F5, {2, 0, 1})).empty());
    CHECK(values(poly_roots(poly(F5, {0, -1, 0, 1}))) == std::vector<u64>{0, 1, 4});
    CHECK_THROWS_AS(poly_roots(FpPoly(F5.zero())), DomainError);
}

TEST_CASE("poly_roots by splitting agrees with a planted root set") {
    // F_1031^2 is larger than the exhaustive limit, so this takes the splitting path.
    const auto& F = FiniteField::extension(1031, 2);
    REQUIRE(*F.size() > kExhaustiveRootLimit);
    std::mt19937_64 rng(3);
    std::set<u64> planted;
    FpPoly f = FpPoly::constant(F.one());
    for (int i = 0; i < 6; ++i) {
        auto r = F.random(rng);
        planted.insert(r.index());
        f *= FpPoly::x(F.one()) - FpPoly::constant(r);
    }
    // an irreducible quadratic factor contributes no roots: x^2 - z for a nonsquare z
    f *= FpPoly::monomial(F.one(), 2) - FpPoly::constant(F.nonsquare());
    auto roots = poly_roots(f);
    std::set<u64> found;
    for (const auto& r : roots) {
        CHECK(f.eval(r).is_zero());
        found.insert(r.index());
    }
    CHECK(found == planted);
}

TEST_CASE("roots of a prime-field polynomial inside an extension") {
    const auto& F5 = FiniteField::prime(5);
    const auto& F25 = FiniteField::extension(5, 2);
    auto roots = poly_roots(poly(F5, {2, 0, 1}), F25);
    CHECK(roots.size() == 2);
    for (const auto& r : roots) CHECK((r * r + F25.from_int(2)).is_zero());
}

TEST_CASE("find_irreducible examples") {
    CHECK(find_irreducible(5, 1) == FpPoly::x(FiniteField::prime(5).one()));
    for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL}) {
        auto [b, c] = smallest_rootless_quadratic(p);
        CHECK(find_irreducible(p, 2) == poly(FiniteField::prime(p), {static_cast<i64>(c), static_cast<i64>(b), 1}));
    }
    CHECK(find_irreducible(5, 2) == poly(FiniteField::prime(5), {2, 0, 1}));
    CHECK(find_irreducible(7, 2) == poly(FiniteField::prime(7), {1, 0, 1}));
}

TEST_CASE("find_irreducible passes the factor-free gcd test") {
    for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{{3, 3}, {5, 4}, {7, 6}, {11, 5}}) {
        auto f = find_irreducible(p, k);
        CHECK(f.degree() == static_cast<int>(k));
        CHECK(f.is_monic());
        const auto x = FpPoly::x(f.zero());
        // x^(p^j) mod f by repeated p-th powers
        FpPoly xp = x;
        for (unsigned j = 1; j <= k; ++j) {
            xp = powmod(xp, p, f);
            if (j < k) CHECK(poly_gcd(xp - x, f).degree() == 0);
        }
        CHECK(xp == x);
    }
}

TEST_CASE("rational_roots examples") {
    CHECK(rational_roots(qpoly({-1, 0, 1})) == std::vector<Rational>{-1, 1});
    CHECK(rational_roots(qpoly({-3, 2})) == std::vector<Rational>{Rational(3, 2)});
    CHECK(rational_roots(qpoly({-2, 0, 1})).empty());
    CHECK(rational_roots(qpoly({0, 0, -1, 1})) == std::vector<Rational>{0, 1});
    CHECK(rational_roots(qpoly({Rational(1, 3), Rational(-1, 2)})) == std::vector<Rational>{Rational(2, 3)});
    CHECK_THROWS_AS(rational_roots(QPoly(Rational(0))), DomainError);
}

TEST_CASE("rational normalization survives every operation") {
    std::mt19937_64 rng(5);
    Rational acc(1);
    for (int i = 0; i < 500; ++i) {
        Rational r(mpz_class(static_cast<long>(rng() % 2001) - 1000), mpz_class(static_cast<long>(rng() % 97) + 1));
        CHECK(r.normalized());
        switch (rng() % 4) {
            case 0: acc += r; break;
            case 1: acc -= r; break;
            case 2: acc *= r; break;
            default:
                if (!r.is_zero()) acc /= r;
        }
        CHECK(acc.normalized());
        if (acc.num() > mpz_class("1000000000000") || acc.den() > mpz_class("1000000000000")) acc = Rational(1);
    }
    CHECK_THROWS_AS(Rational(1) / Rational(0), ArithmeticError);
    CHECK(Rational(-4, 6) == Rational(-2, 3));
    CHECK(Rational(6, -4).den() == 2);
}

TEST_CASE("nth roots") {
    const auto& F13 = FiniteField::prime(13);
    CHECK(nth_roots(F13.one(), 4).size() == 4);  // 4 | 12
    CHECK(nth_roots(Rational(Rational(4, 9)), 2) == std::vector<Rational>{Rational(-2, 3), Rational(2, 3)});
    CHECK(nth_roots(Rational(-8), 3) == std::vector<Rational>{-2});
    CHECK(nth_roots(Rational(2), 2).empty());
}
