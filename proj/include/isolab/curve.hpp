#pragma once

#include <gmpxx.h>

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isolab/field.hpp"
#include "isolab/polynomial.hpp"
#include "isolab/rational.hpp"

namespace isolab {

inline u64 characteristic_of(const FieldElement& x) { return x.field().characteristic(); }
inline u64 characteristic_of(const Rational&) { return 0; }
inline bool same_field(const FieldElement& a, const FieldElement& b) { return &a.field() == &b.field(); }
inline bool same_field(const Rational&, const Rational&) { return true; }

template <class K>
class CurvePoint;

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a field of characteristic
// 0 or > 3. Cheap to copy: the coefficients live in shared immutable storage.
template <class K>
class WeierstrassCurve {
public:
    using Scalar = K;
    using Point = CurvePoint<K>;

    WeierstrassCurve(const K& a1, const K& a2, const K& a3, const K& a4, const K& a6) {
        auto d = std::make_shared<Data>();
        d->a = {a1, a2, a3, a4, a6};
        const K two = a1.like(2), four = a1.like(4);
        d->b2 = a1 * a1 + four * a2;
        d->b4 = two * a4 + a1 * a3;
        d->b6 = a3 * a3 + four * a6;
        d->b8 = a1 * a1 * a6 + four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        d->c4 = d->b2 * d->b2 - a1.like(24) * d->b4;
        d->c6 = -(d->b2 * d->b2 * d->b2) + a1.like(36) * d->b2 * d->b4 - a1.like(216) * d->b6;
        d->disc = -(d->b2 * d->b2 * d->b8) - a1.like(8) * d->b4 * d->b4 * d->b4 - a1.like(27) * d->b6 * d->b6 +
                  a1.like(9) * d->b2 * d->b4 * d->b6;
        const u64 ch = characteristic_of(a1);
        if (ch == 2 || ch == 3) throw DomainError("curves over characteristic 2 or 3 are not supported");
        if (d->disc.is_zero()) throw DomainError("singular curve: discriminant is zero");
        d_ = std::move(d);
    }
    explicit WeierstrassCurve(const std::array<K, 5>& a) : WeierstrassCurve(a[0], a[1], a[2], a[3], a[4]) {}
    static WeierstrassCurve short_form(const K& a4, const K& a6) {
        const K z = a4.zero_like();
        return WeierstrassCurve(z, z, z, a4, a6);
    }

    const std::array<K, 5>& coefficients() const { return d_->a; }
    const K& a1() const { return d_->a[0]; }
    const K& a2() const { return d_->a[1]; }
    const K& a3() const { return d_->a[2]; }
    const K& a4() const { return d_->a[3]; }
    const K& a6() const { return d_->a[4]; }
    const K& b2() const { return d_->b2; }
    const K& b4() const { return d_->b4; }
    const K& b6() const { return d_->b6; }
    const K& b8() const { return d_->b8; }
    const K& c4() const { return d_->c4; }
    const K& c6() const { return d_->c6; }
    const K& discriminant() const { return d_->disc; }
    K j_invariant() const { return d_->c4 * d_->c4 * d_->c4 / d_->disc; }
    K zero() const { return a1().zero_like(); }

    bool is_short() const { return a1().is_zero() && a2().is_zero() && a3().is_zero(); }

    bool contains(const K& x, const K& y) const {
        const K lhs = y * y + a1() * x * y + a3() * y;
        const K rhs = ((x + a2()) * x + a4()) * x + a6();
        return lhs == rhs;
    }

    Point infinity() const { return Point(*this); }
    // Throws DomainError when (x, y) is not on the curve.
    Point point(const K& x, const K& y) const {
        if (!contains(x, y)) throw DomainError("point (" + x.to_string() + ", " + y.to_string() + ") is not on the curve");
        return Point(*this, x, y);
    }

    // (2y + a1 x + a3)^2 as a cubic in x: 4x^3 + b2 x^2 + 2 b4 x + b6.
    Polynomial<K> two_torsion_polynomial() const {
        return Polynomial<K>(std::vector<K>{b6(), a1().like(2) * b4(), b2(), a1().like(4)});
    }
    K two_torsion_polynomial_at(const K& x) const {
        return ((a1().like(4) * x + b2()) * x + a1().like(2) * b4()) * x + b6();
    }

    friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) {
        return a.d_ == b.d_ || (same_field(a.a1(), b.a1()) && a.d_->a == b.d_->a);
    }

    std::string to_string() const {
        std::string s = "[";
        for (size_t i = 0; i < 5; ++i) s += (i ? "," : "") + d_->a[i].to_string();
        return s + "]";
    }

private:
    struct Data {
        std::array<K, 5> a;
        K b2, b4, b6, b8, c4, c6, disc;
    };
    std::shared_ptr<const Data> d_;
};

template <class K>
class CurvePoint {
public:
    using Curve = WeierstrassCurve<K>;

    explicit CurvePoint(const Curve& E) : E_(E), inf_(true), x_(E.zero()), y_(E.zero()) {}
    CurvePoint(const Curve& E, const K& x, const K& y) : E_(E), inf_(false), x_(x), y_(y) {}

    const Curve& curve() const { return E_; }
    bool is_infinity() const { return inf_; }
    const K& x() const { return x_; }
    const K& y() const { return y_; }

    CurvePoint operator-() const {
        if (inf_) return *this;
        return CurvePoint(E_, x_, -y_ - E_.a1() * x_ - E_.a3());
    }

    friend CurvePoint operator+(const CurvePoint& P, const CurvePoint& Q) {
        if (!(P.E_ == Q.E_)) throw StructuralError("adding points on different curves");
        if (P.inf_) return Q;
        if (Q.inf_) return P;
        const Curve& E = P.E_;
        K lambda = E.zero(), nu = E.zero();
        if (P.x_ == Q.x_) {
            const K s = P.y_ + Q.y_ + E.a1() * Q.x_ + E.a3();
            if (s.is_zero()) return E.infinity();
            const K& x = P.x_;
            const K& y = P.y_;
            const K den = x.like(2) * y + E.a1() * x + E.a3();
            lambda = (x.like(3) * x * x + x.like(2) * E.a2() * x + E.a4() - E.a1() * y) / den;
            nu = (-(x * x * x) + E.a4() * x + x.like(2) * E.a6() - E.a3() * y) / den;
        } else {
            const K dx = Q.x_ - P.x_;
            lambda = (Q.y_ - P.y_) / dx;
            nu = (P.y_ * Q.x_ - Q.y_ * P.x_) / dx;
        }
        const K x3 = lambda * lambda + E.a1() * lambda - E.a2() - P.x_ - Q.x_;
        const K y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
        return CurvePoint(E, x3, y3);
    }
    friend CurvePoint operator-(const CurvePoint& P, const CurvePoint& Q) { return P + (-Q); }
    CurvePoint& operator+=(const CurvePoint& o) { return *this = *this + o; }

    CurvePoint times(const mpz_class& n) const {
        if (n < 0) return (-*this).times(mpz_class(-n));
        CurvePoint acc = E_.infinity();
        const size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            acc = acc + acc;
            if (mpz_tstbit(n.get_mpz_t(), i)) acc = acc + *this;
        }
        return acc;
    }
    CurvePoint times(long n) const { return times(mpz_class(n)); }
    friend CurvePoint operator*(long n, const CurvePoint& P) { return P.times(n); }
    friend CurvePoint operator*(const mpz_class& n, const CurvePoint& P) { return P.times(n); }

    friend bool operator==(const CurvePoint& P, const CurvePoint& Q) {
        if (!(P.E_ == Q.E_)) throw StructuralError("comparing points on different curves");
        if (P.inf_ || Q.inf_) return P.inf_ == Q.inf_;
        return P.x_ == Q.x_ && P.y_ == Q.y_;
    }

    std::string to_string() const {
        if (inf_) return "O";
        return "(" + x_.to_string() + ", " + y_.to_string() + ")";
    }

private:
    Curve E_;
    bool inf_;
    K x_, y_;
};

// Smallest n >= 1 with nP = O, searching up to `limit`; nullopt past the limit.
template <class K>
std::optional<long> point_order(const CurvePoint<K>& P, long limit) {
    CurvePoint<K> acc = P;
    for (long n = 1; n <= limit; ++n) {
        if (acc.is_infinity()) return n;
        acc = acc + P;
    }
    return std::nullopt;
}

template <class K>
bool has_exact_order(const CurvePoint<K>& P, long n) {
    if (P.is_infinity()) return n == 1;
    auto o = point_order(P, n);
    return o && *o == n;
}

// Points with the given x-coordinate (0, 1 or 2 of them).
template <class K>
std::vector<CurvePoint<K>> points_with_x(const WeierstrassCurve<K>& E, const K& x) {
    std::vector<CurvePoint<K>> out;
    const K disc = E.two_torsion_polynomial_at(x);
    auto s = disc.sqrt();
    if (!s) return out;
    const K half = x.like(2).inverse();
    const K base = E.a1() * x + E.a3();
    out.emplace_back(E, x, (*s - base) * half);
    if (!s->is_zero()) out.emplace_back(E, x, (-*s - base) * half);
    return out;
}

using FqCurve = WeierstrassCurve<FieldElement>;
using FqPoint = CurvePoint<FieldElement>;
using QCurve = WeierstrassCurve<Rational>;
using QPoint = CurvePoint<Rational>;

// Base-change a curve over a prime field into an extension of it.
FqCurve lift_curve(const FqCurve& E, const FiniteField& field);
FqPoint lift_point(const FqPoint& P, const FqCurve& lifted);

// Coordinatewise p-power Frobenius of a point (curve coefficients must lie in F_p).
FqPoint frobenius_point(const FqPoint& P);

// Default enumeration cap for point counting.
inline constexpr u64 kPointCountCap = 1'000'000;

// #E(F_q) by enumeration, including the point at infinity.
u64 curve_order(const FqCurve& E, u64 cap = kPointCountCap);

// Uniform random affine point; never returns infinity.
FqPoint random_point(const FqCurve& E, std::mt19937_64& rng);

// All rational points (including infinity), enumerated; small fields only.
std::vector<FqPoint> enumerate_points(const FqCurve& E, u64 cap = kPointCountCap);

}  // namespace isolab
