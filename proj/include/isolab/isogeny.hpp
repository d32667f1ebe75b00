#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "isolab/curve.hpp"
#include "isolab/linalg.hpp"
#include "isolab/roots.hpp"
#include "isolab/torsion.hpp"

namespace isolab {

inline FieldElement lift_scalar(const FieldElement& c, const FieldElement& like) {
    if (&c.field() == &like.field()) return c;
    return like.field().embed(c);
}
inline Rational lift_scalar(const Rational& c, const Rational&) { return c; }

inline FqCurve curve_over(const FqCurve& E, const FieldElement& like) { return lift_curve(E, like.field()); }
inline QCurve curve_over(const QCurve& E, const Rational&) { return E; }

template <class K>
K eval_lifted(const Polynomial<K>& f, const K& x) {
    K acc = x.zero_like();
    for (size_t i = f.coeffs().size(); i-- > 0;) acc = acc * x + lift_scalar(f.coeffs()[i], x);
    return acc;
}

// Coefficients of E transformed by x = u^2 x' + r, y = u^3 y' + u^2 s x' + t.
template <class K>
std::array<K, 5> transform_coefficients(const WeierstrassCurve<K>& E, const K& u, const K& r, const K& s, const K& t) {
    const K &a1 = E.a1(), &a2 = E.a2(), &a3 = E.a3(), &a4 = E.a4(), &a6 = E.a6();
    const K two = u.like(2), three = u.like(3);
    const K ui = u.inverse();
    const K u2 = ui * ui, u3 = u2 * ui, u4 = u2 * u2, u6 = u3 * u3;
    return {(a1 + two * s) * ui,
            (a2 - s * a1 + three * r - s * s) * u2,
            (a3 + r * a1 + two * t) * u3,
            (a4 - s * a3 + two * r * a2 - (t + r * s) * a1 + three * r * r - two * s * t) * u4,
            (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) * u6};
}

// Isomorphism source -> target given by the standard (u, r, s, t) data.
template <class K>
struct CurveIsomorphism {
    WeierstrassCurve<K> source, target;
    K u, r, s, t;

    static CurveIsomorphism identity(const WeierstrassCurve<K>& E) {
        const K z = E.zero();
        return {E, E, z.one_like(), z, z, z};
    }

    K map_x(const K& x) const {
        const K ui = lift_scalar(u, x).inverse();
        return (x - lift_scalar(r, x)) * ui * ui;
    }

    CurvePoint<K> operator()(const CurvePoint<K>& P) const {
        const WeierstrassCurve<K> T = curve_over(target, P.x());
        if (P.is_infinity()) return T.infinity();
        const K& x = P.x();
        const K ui = lift_scalar(u, x).inverse();
        const K xr = x - lift_scalar(r, x);
        const K X = xr * ui * ui;
        const K Y = (P.y() - lift_scalar(s, x) * xr - lift_scalar(t, x)) * ui * ui * ui;
        return CurvePoint<K>(T, X, Y);
    }

    CurveIsomorphism inverse() const {
        const K ui = u.inverse();
        return {target, source, ui, -r * ui * ui, -s * ui, (r * s - t) * ui * ui * ui};
    }

    // this followed by next
    CurveIsomorphism then(const CurveIsomorphism& next) const {
        if (!(target == next.source)) throw StructuralError("composing isomorphisms with mismatched curves");
        return {source, next.target, u * next.u, r + u * u * next.r, s + u * next.s,
                t + u * u * s * next.r + u * u * u * next.t};
    }

    bool valid() const { return !u.is_zero() && transform_coefficients(source, u, r, s, t) == target.coefficients(); }
};

template <class K>
std::optional<CurveIsomorphism<K>> curves_isomorphic(const WeierstrassCurve<K>& E, const WeierstrassCurve<K>& E2) {
    if (characteristic_of(E.a1()) != characteristic_of(E2.a1())) return std::nullopt;
    if (!(E.j_invariant() == E2.j_invariant())) return std::nullopt;
    std::vector<K> us;
    if (E.c4().is_zero()) {
        us = nth_roots(E.c6() / E2.c6(), 6);
    } else if (E.c6().is_zero()) {
        us = nth_roots(E.c4() / E2.c4(), 4);
    } else {
        us = nth_roots((E.c6() * E2.c4()) / (E2.c6() * E.c4()), 2);
    }
    std::stable_partition(us.begin(), us.end(), [](const K& u) { return u.is_one(); });
    const K two = E.zero().like(2), three = E.zero().like(3);
    for (const K& u : us) {
        const K s = (u * E2.a1() - E.a1()) / two;
        const K r = (u * u * E2.a2() - E.a2() + s * E.a1() + s * s) / three;
        const K t = (u * u * u * E2.a3() - E.a3() - r * E.a1()) / two;
        CurveIsomorphism<K> iso{E, E2, u, r, s, t};
        if (iso.valid()) return iso;
    }
    return std::nullopt;
}

// Separable isogeny of prime degree ell with kernel <P>, with explicit maps
//   x -> N(x) / h(x)^2,  y -> (y Ny(x) + N1(x)) / h(x)^3
// where h is the kernel polynomial.
template <class K>
class Isogeny {
public:
    using Curve = WeierstrassCurve<K>;
    using Point = CurvePoint<K>;
    using Poly = Polynomial<K>;

    Isogeny(Curve domain, Curve codomain, Point kernel_point, unsigned degree, Poly h, Poly xn, Poly yn_y, Poly yn_1)
        : domain_(std::move(domain)),
          codomain_(std::move(codomain)),
          kernel_point_(std::move(kernel_point)),
          degree_(degree),
          h_(std::move(h)),
          xn_(std::move(xn)),
          yny_(std::move(yn_y)),
          yn1_(std::move(yn_1)) {}

    const Curve& domain() const { return domain_; }
    const Curve& codomain() const { return codomain_; }
    const Point& kernel_point() const { return kernel_point_; }
    unsigned degree() const { return degree_; }
    // Monic, with roots the x-coordinates of the nonzero kernel points.
    const Poly& kernel_polynomial() const { return h_; }
    const Poly& x_numerator() const { return xn_; }
    Poly x_denominator() const { return h_ * h_; }
    const Poly& y_numerator_y() const { return yny_; }
    const Poly& y_numerator_1() const { return yn1_; }
    Poly y_denominator() const { return h_ * h_ * h_; }

    // x-coordinate of the image; x must not be a kernel abscissa.
    K map_x(const K& x) const {
        const K hx = eval_lifted(h_, x);
        return eval_lifted(xn_, x) / (hx * hx);
    }

    // Accepts points over the base field or (for finite fields) an extension of a prime base field.
    Point operator()(const Point& R) const {
        const Curve target = curve_over(codomain_, R.x());
        if (R.is_infinity()) return target.infinity();
        const K& x = R.x();
        const K hx = eval_lifted(h_, x);
        if (hx.is_zero()) return target.infinity();
        const K hi = hx.inverse();
        const K X = eval_lifted(xn_, x) * hi * hi;
        const K Y = (R.y() * eval_lifted(yny_, x) + eval_lifted(yn1_, x)) * hi * hi * hi;
        return Point(target, X, Y);
    }

private:
    Curve domain_, codomain_;
    Point kernel_point_;
    unsigned degree_;
    Poly h_, xn_, yny_, yn1_;
};

// Order limit when velu_quotient infers the degree from the kernel point.
inline constexpr long kMaxIsogenyDegree = 1000;

template <class K>
Isogeny<K> velu_quotient(const WeierstrassCurve<K>& E, const CurvePoint<K>& P, unsigned ell = 0) {
    using Poly = Polynomial<K>;
    if (P.is_infinity()) throw DomainError("kernel point must not be the point at infinity");
    if (!(P.curve() == E)) throw DomainError("kernel point does not lie on the domain curve");
    if (!E.contains(P.x(), P.y())) throw DomainError("kernel point does not satisfy the curve equation");
    if (ell == 0) {
        auto o = point_order(P, kMaxIsogenyDegree);
        if (!o) throw DomainError("kernel point order exceeds " + std::to_string(kMaxIsogenyDegree));
        ell = static_cast<unsigned>(*o);
    } else if (!has_exact_order(P, static_cast<long>(ell))) {
        throw DomainError("kernel point does not have exact order " + std::to_string(ell));
    }
    if (ell < 2 || !is_prime(ell)) throw DomainError("kernel point order " + std::to_string(ell) + " is not prime");
    if (ell == characteristic_of(E.a1())) throw DomainError("isogeny degree equals the characteristic");

    const K z = E.zero();
    const K one = z.one_like(), two = z.like(2), three = z.like(3);
    const Poly X = Poly::x(one);
    std::vector<K> xs, ys, vs, us, gxs, gys;
    CurvePoint<K> Q = P;
    const unsigned reps = ell == 2 ? 1 : (ell - 1) / 2;
    for (unsigned i = 0; i < reps; ++i, Q += P) {
        const K &x = Q.x(), &y = Q.y();
        const K gx = three * x * x + two * E.a2() * x + E.a4() - E.a1() * y;
        const K gy = -(two * y) - E.a1() * x - E.a3();
        xs.push_back(x);
        ys.push_back(y);
        gxs.push_back(gx);
        gys.push_back(gy);
        if (ell == 2) {
            vs.push_back(gx);
            us.push_back(z);
        } else {
            vs.push_back(two * gx - E.a1() * gy);
            us.push_back(gy * gy);
        }
    }
    Poly h = Poly::constant(one);
    for (const K& x : xs) h *= (X - Poly::constant(x));
    K v = z, w = z;
    for (size_t i = 0; i < xs.size(); ++i) {
        v += vs[i];
        w += us[i] + xs[i] * vs[i];
    }
    const K A4 = E.a4() - z.like(5) * v;
    const K A6 = E.a6() - E.b2() * v - z.like(7) * w;
    std::optional<WeierstrassCurve<K>> codomain;
    try {
        codomain.emplace(E.a1(), E.a2(), E.a3(), A4, A6);
    } catch (const DomainError& e) {
        throw InternalError(std::string("Velu codomain is singular: ") + e.what());
    }

    Poly xn = X * h * h;
    Poly yny = h * h * h;
    Poly yn1(z);
    const Poly lin = Poly::constant(E.a1()) * X + Poly::constant(E.a3());
    for (size_t i = 0; i < xs.size(); ++i) {
        const Poly d = X - Poly::constant(xs[i]);
        const Poly hq = h / d;
        const Poly hq2 = hq * hq;
        const Poly hq3 = hq2 * hq;
        xn += (d * vs[i] + Poly::constant(us[i])) * hq2;
        yny -= (d * vs[i] + Poly::constant(two * us[i])) * hq3;
        const Poly inner = lin * us[i] +
                           d * (d * (vs[i] * E.a1()) + Poly::constant(E.a1() * us[i] - gxs[i] * gys[i] - vs[i] * ys[i]));
        yn1 -= inner * hq3;
    }
    return Isogeny<K>(E, *codomain, P, ell, h, xn, yny, yn1);
}

// Codomain of the isogeny whose kernel polynomial is h (monic, all kernel
// abscissae), from the power sums of its roots.
template <class K>
WeierstrassCurve<K> kohel_codomain(const WeierstrassCurve<K>& E, const Polynomial<K>& h, unsigned ell) {
    const K z = E.zero();
    if (ell == 2) {
        if (h.degree() != 1) throw DomainError("2-isogeny kernel polynomial must be linear");
        const K x0 = -(h[0] / h[1]);
        const K y0 = -(E.a1() * x0 + E.a3()) / z.like(2);
        const K v = z.like(3) * x0 * x0 + z.like(2) * E.a2() * x0 + E.a4() - E.a1() * y0;
        const K w = x0 * v;
        return WeierstrassCurve<K>(E.a1(), E.a2(), E.a3(), E.a4() - z.like(5) * v,
                                   E.a6() - E.b2() * v - z.like(7) * w);
    }
    const int n = static_cast<int>((ell - 1) / 2);
    if (h.degree() != n) throw DomainError("kernel polynomial has the wrong degree");
    const Polynomial<K> m = h.monic();
    const K s1 = -m[n - 1];
    const K s2 = n >= 2 ? m[n - 2] : z;
    const K s3 = n >= 3 ? -m[n - 3] : z;
    const K p1 = s1;
    const K p2 = s1 * p1 - z.like(2) * s2;
    const K p3 = s1 * p2 - s2 * p1 + z.like(3) * s3;
    const K nn = z.like(n);
    const K v = z.like(6) * p2 + E.b2() * p1 + nn * E.b4();
    const K w = z.like(10) * p3 + z.like(2) * E.b2() * p2 + z.like(3) * E.b4() * p1 + nn * E.b6();
    return WeierstrassCurve<K>(E.a1(), E.a2(), E.a3(), E.a4() - z.like(5) * v, E.a6() - E.b2() * v - z.like(7) * w);
}

// The universal 3-isogeny family: E3: y^2 + wxy + vy = x^3 with P = (0,0) of
// order 3, and E3' : y^2 + wxy + vy = x^3 - 5wv x - v(w^3 + 7v).
template <class K>
struct Family3 {
    WeierstrassCurve<K> E3;
    CurvePoint<K> P;
    WeierstrassCurve<K> E3_prime;
};

template <class K>
Family3<K> family_E3(const K& v, const K& w) {
    const K z = v.zero_like();
    WeierstrassCurve<K> E3(w, z, v, z, z);
    WeierstrassCurve<K> E3p(w, z, v, -(z.like(5) * w * v), -(v * (w * w * w + z.like(7) * v)));
    return {E3, E3.point(z, z), E3p};
}

using FqIsogeny = Isogeny<FieldElement>;
using QIsogeny = Isogeny<Rational>;
using FqIsomorphism = CurveIsomorphism<FieldElement>;
using QIsomorphism = CurveIsomorphism<Rational>;

// Kernel polynomial of the dual isogeny, i.e. the monic polynomial whose
// roots are the abscissae of the nonzero points of phi(E[ell]); computed over
// the base field of phi.
// torsion: division_polynomial(domain, ell) when already known.
FpPoly dual_kernel_polynomial(const FqIsogeny& phi, const FpPoly* torsion = nullptr);

// Kernel polynomial after moving its roots along an isomorphism.
FpPoly transport_kernel_polynomial(const FpPoly& h, const FqIsomorphism& iso);

// The line of E[ell] (in basis coordinates) whose nonzero points have
// abscissae among the roots of h.
Subspace line_from_kernel_polynomial(const TorsionBasis& B, const FpPoly& h);

// phi(E_domain[ell]) in coordinates of a basis of the codomain's ell-torsion.
Subspace dual_kernel(const FqIsogeny& phi, const TorsionBasis& codomain_basis);

// Canonical representative of the F_q-isomorphism class of E: the short model
// (l^4 A, l^6 B) minimal over l in F_q^*, where (A, B) = (-27 c4, -54 c6).
FqCurve canonical_short_model(const FqCurve& E);

struct ArmChecks {
    bool homomorphism = false;    // sampled additivity and kernel invariance
    bool kernel_size = false;     // exactly ell points map to O
    bool nonsingular = false;     // codomain discriminant nonzero
    bool dual_quotient = false;   // codomain / dual kernel has j = j(domain)
    bool all() const { return homomorphism && kernel_size && nonsingular && dual_quotient; }
};

struct GraphArm {
    FqCurve source;
    FqPoint kernel_point;
    FqIsogeny isogeny;
    FqIsomorphism to_target;
    FpPoly dual_kernel;  // kernel polynomial of the dual, in target coordinates
    ArmChecks checks;
};

struct PointedGraph {
    unsigned ell = 0;
    FqCurve target;
    std::vector<GraphArm> arms;  // pairwise distinct dual kernels
    size_t raw_arms = 0;         // before deduplication
    std::optional<TorsionBasis> basis;
    std::vector<Subspace> lines;  // dual kernel lines in basis coordinates, aligned with arms
};

struct GraphBuildOptions {
    u64 max_curves = 200000;
    unsigned homomorphism_samples = 4;
    u64 seed = 0;
    unsigned threads = 1;
    bool short_curves = true;
    bool family_curves = true;
    // Torsion bases are computed for targets with at least this many arms.
    size_t basis_min_arms = 2;
};

// Self-checks applied to every constructed arm.
ArmChecks check_isogeny(const FqIsogeny& phi, const FpPoly& dual_kernel, std::mt19937_64& rng, unsigned samples);

struct GraphBuildStats {
    u64 curves_scanned = 0;
    u64 isogenies = 0;
    u64 homomorphism_failures = 0;
    u64 kernel_failures = 0;
    u64 singular_failures = 0;
    u64 dual_failures = 0;
    u64 bases = 0;
    std::vector<GraphArm> failed_arms;  // first few, as witnesses
};

struct GraphBuildResult {
    std::vector<PointedGraph> graphs;
    GraphBuildStats stats;
};

// Every pointed graph over the prime field F_p assembled from rational
// ell-torsion points on enumerated source curves, ordered by target.
GraphBuildResult build_pointed_graphs(const FiniteField& field, unsigned ell, const GraphBuildOptions& opt = {});

// Number of source curves build_pointed_graphs would scan.
u64 source_curve_count(const FiniteField& field, const GraphBuildOptions& opt);

}  // namespace isolab
