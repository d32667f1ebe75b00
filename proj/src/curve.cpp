#include "isolab/curve.hpp"

namespace isolab {

namespace {

// thread-confined cache of the squares of F_p
const std::vector<char>& square_table(u64 p) {
    thread_local u64 cached_p = 0;
    thread_local std::vector<char> table;
    if (cached_p != p) {
        table.assign(p, 0);
        for (u64 x = 0; x < p; ++x) table[modp::mul(x, x, p)] = 1;
        cached_p = p;
    }
    return table;
}

}  // namespace

FqCurve lift_curve(const FqCurve& E, const FiniteField& field) {
    if (&E.a1().field() == &field) return E;
    std::array<FieldElement, 5> a;
    for (size_t i = 0; i < 5; ++i) a[i] = field.embed(E.coefficients()[i]);
    return FqCurve(a);
}

FqPoint lift_point(const FqPoint& P, const FqCurve& lifted) {
    if (P.is_infinity()) return lifted.infinity();
    const FiniteField& F = lifted.a1().field();
    if (&P.x().field() == &F) return lifted.point(P.x(), P.y());
    return lifted.point(F.embed(P.x()), F.embed(P.y()));
}

FqPoint frobenius_point(const FqPoint& P) {
    if (P.is_infinity()) return P;
    return FqPoint(P.curve(), P.x().frobenius(), P.y().frobenius());
}

u64 curve_order(const FqCurve& E, u64 cap) {
    const FiniteField& F = E.a1().field();
    auto size = F.size();
    if (!size || *size > cap)
        throw CapabilityError("point counting by enumeration is capped at q <= " + std::to_string(cap) + " (got " +
                              F.name() + ")");
    if (F.is_prime_field()) {
        const u64 p = F.characteristic();
        const auto& sq = square_table(p);
        const u64 b2 = E.b2().value(), b4x2 = modp::add(E.b4().value(), E.b4().value(), p), b6 = E.b6().value();
        u64 count = 1;
        for (u64 x = 0; x < p; ++x) {
            u64 v = modp::add(modp::mul(4 % p, x, p), b2, p);
            v = modp::add(modp::mul(v, x, p), b4x2, p);
            v = modp::add(modp::mul(v, x, p), b6, p);
            if (v == 0)
                count += 1;
            else if (sq[v])
                count += 2;
        }
        return count;
    }
    u64 count = 1;
    for (u64 i = 0; i < *size; ++i) {
        const FieldElement d = E.two_torsion_polynomial_at(F.element_at(i));
        if (d.is_zero())
            count += 1;
        else if (d.is_square())
            count += 2;
    }
    return count;
}

FqPoint random_point(const FqCurve& E, std::mt19937_64& rng) {
    const FiniteField& F = E.a1().field();
    for (int attempt = 0; attempt < 100000; ++attempt) {
        auto pts = points_with_x(E, F.random(rng));
        if (pts.empty()) continue;
        return pts[pts.size() > 1 ? uniform_below(rng, 2) : 0];
    }
    throw InternalError("no random point found");
}

std::vector<FqPoint> enumerate_points(const FqCurve& E, u64 cap) {
    const FiniteField& F = E.a1().field();
    auto size = F.size();
    if (!size || *size > cap) throw CapabilityError("point enumeration is capped at q <= " + std::to_string(cap));
    std::vector<FqPoint> out{E.infinity()};
    for (u64 i = 0; i < *size; ++i) {
        for (auto& P : points_with_x(E, F.element_at(i))) out.push_back(std::move(P));
    }
    return out;
}

}  // namespace isolab
