#include "isolab/torsion.hpp"

#include <random>

#include "isolab/division.hpp"
#include "isolab/roots.hpp"

namespace isolab {

namespace {

void require_prime_base(const FqCurve& E, unsigned ell) {
    const FiniteField& F = E.a1().field();
    if (!F.is_prime_field()) throw CapabilityError("torsion bases are implemented for curves over prime fields only");
    if (ell < 2 || !is_prime(ell)) throw DomainError("ell must be prime");
    if (ell == F.characteristic()) throw DomainError("ell must differ from the characteristic");
}

// #E(F_{p^k}) from a = p + 1 - #E(F_p) via s_k = a s_{k-1} - p s_{k-2}.
mpz_class extension_order(u64 p, u64 count, unsigned k) {
    const mpz_class a = mpz_class(p) + 1 - mpz_class(count);
    mpz_class s0 = 2, s1 = a;
    for (unsigned i = 1; i < k; ++i) {
        mpz_class s2 = a * s1 - mpz_class(p) * s0;
        s0 = s1;
        s1 = s2;
    }
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    return pk + 1 - s1;
}

// Smallest c with ell^c T = O (T has ell-power order).
unsigned ell_exponent(FqPoint T, unsigned ell, unsigned bound) {
    unsigned c = 0;
    while (!T.is_infinity()) {
        if (c > bound) throw InternalError("point order exceeds the ell-part of the group");
        T = T.times(static_cast<long>(ell));
        ++c;
    }
    return c;
}

mpz_class ell_power(unsigned ell, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), ell, e);
    return r;
}

// m with S = m G where G has order ell^e; nullopt when S is not in <G>.
std::optional<mpz_class> cyclic_log(const FqPoint& G, unsigned e, const FqPoint& S, unsigned ell) {
    if (e == 0) return S.is_infinity() ? std::optional<mpz_class>(0) : std::nullopt;
    const FqPoint top = G.times(ell_power(ell, e - 1));
    mpz_class m = 0;
    for (unsigned i = 0; i < e; ++i) {
        const FqPoint R = (S - G.times(m)).times(ell_power(ell, e - 1 - i));
        FqPoint acc = G.curve().infinity();
        bool found = false;
        for (unsigned d = 0; d < ell; ++d) {
            if (acc == R) {
                m += mpz_class(d) * ell_power(ell, i);
                found = true;
                break;
            }
            acc += top;
        }
        if (!found) return std::nullopt;
    }
    if (!(G.times(m) == S)) return std::nullopt;
    return m;
}

struct LineValue {
    FieldElement value;
    FqPoint sum;
};

// l_{A,B}(X) / v_{A+B}(X), with lines normalised to be monic in y (or x when vertical).
LineValue miller_step(const FqPoint& A, const FqPoint& B, const FqPoint& X) {
    const FqCurve& E = A.curve();
    const FqPoint C = A + B;
    FieldElement num;
    if (C.is_infinity()) {
        num = X.x() - A.x();
    } else {
        FieldElement lambda;
        if (A.x() == B.x()) {
            const FieldElement& x = A.x();
            const FieldElement& y = A.y();
            lambda = (x.like(3) * x * x + x.like(2) * E.a2() * x + E.a4() - E.a1() * y) /
                     (x.like(2) * y + E.a1() * x + E.a3());
        } else {
            lambda = (B.y() - A.y()) / (B.x() - A.x());
        }
        num = X.y() - A.y() - lambda * (X.x() - A.x());
    }
    FieldElement den = C.is_infinity() ? X.x().one_like() : X.x() - C.x();
    if (num.is_zero() || den.is_zero()) throw InternalError("Miller evaluation point hit a zero or pole");
    return {num / den, C};
}

FieldElement miller(const FqPoint& P, const FqPoint& X, unsigned ell) {
    FieldElement f = X.x().one_like();
    FqPoint T = P;
    int top = 31;
    while (!((ell >> top) & 1u)) --top;
    for (int bit = top - 1; bit >= 0; --bit) {
        auto s = miller_step(T, T, X);
        f = f * f * s.value;
        T = s.sum;
        if ((ell >> bit) & 1u) {
            auto t = miller_step(T, P, X);
            f = f * t.value;
            T = t.sum;
        }
    }
    if (!T.is_infinity()) throw DomainError("point is not ell-torsion");
    return f;
}

}  // namespace

unsigned torsion_degree(const FqCurve& E, unsigned ell) {
    require_prime_base(E, ell);
    const FiniteField& F = E.a1().field();
    const u64 p = F.characteristic();
    const unsigned bound = ell * (ell - 1) * (ell + 1);
    DivisionPolynomials<FieldElement> div(E);
    const FpPoly F2 = div.two_torsion();
    const FieldElement one = F.one();
    const FpPoly x = FpPoly::x(one);
    if (ell == 2) {
        const FpPoly g = F2.monic();
        FpPoly X = x % g;
        for (unsigned k = 1; k <= bound; ++k) {
            X = powmod(X, p, g);
            if (X == x % g) return k;
        }
        throw InternalError("2-torsion field degree exceeds the bound");
    }
    const FpPoly g = div.f(static_cast<int>(ell)).monic();
    const FpPoly xg = x % g;
    FpPoly X = xg;
    FpPoly Fk = F2 % g;  // F(x^{p^{k-1}})
    FpPoly norm = FpPoly::constant(one);
    const u64 half = (p - 1) / 2;
    for (unsigned k = 1; k <= bound; ++k) {
        norm = mulmod(norm, Fk, g);
        X = powmod(X, p, g);
        if (X == xg && powmod(norm, half, g) == FpPoly::constant(one)) return k;
        Fk = powmod(Fk, p, g);
    }
    throw InternalError("ell-torsion field degree exceeds the bound");
}

TorsionBasis torsion_basis(const FqCurve& E, unsigned ell, u64 seed) {
    const unsigned k = torsion_degree(E, ell);
    const FiniteField& base = E.a1().field();
    const u64 p = base.characteristic();
    const FiniteField& L = FiniteField::extension(p, k);
    const FqCurve EL = lift_curve(E, L);
    const mpz_class N = extension_order(p, curve_order(E), k);

    unsigned v = 0;
    mpz_class cof = N;
    while (mpz_divisible_ui_p(cof.get_mpz_t(), ell)) {
        cof /= ell;
        ++v;
    }
    if (v < 2) throw InternalError("group order not divisible by ell^2 over the torsion field");

    std::mt19937_64 rng(seed ^ 0x7015'1011'ba5eULL);
    for (int round = 0; round < 64; ++round) {
        // Largest ell-exponent among a few samples is the exponent a of the
        // ell-part Z/ell^a x Z/ell^b, with overwhelming probability.
        FqPoint T1 = EL.infinity();
        unsigned a = 0;
        for (int s = 0; s < 8; ++s) {
            FqPoint T = random_point(EL, rng).times(cof);
            unsigned c = ell_exponent(T, ell, v);
            if (c > a) {
                a = c;
                T1 = T;
            }
        }
        if (2 * a < v) continue;
        const unsigned b = v - a;
        if (b == 0) continue;
        const FqPoint P = T1.times(ell_power(ell, a - 1));
        const FqPoint G = T1.times(ell_power(ell, b));
        for (int attempt = 0; attempt < 32; ++attempt) {
            const FqPoint T2 = random_point(EL, rng).times(cof);
            auto m = cyclic_log(G, a - b, T2.times(ell_power(ell, b)), ell);
            if (!m) break;
            const FqPoint U = (T2 - T1.times(*m)).times(ell_power(ell, b - 1));
            if (U.is_infinity()) continue;
            if (weil_pairing(P, U, ell).is_one()) continue;
            return TorsionBasis{ell, k, E, EL, P, U};
        }
    }
    throw InternalError("failed to find an ell-torsion basis");
}

FieldElement weil_pairing(const FqPoint& P, const FqPoint& Q, unsigned ell) {
    if (!(P.curve() == Q.curve())) throw DomainError("Weil pairing of points on different curves");
    if (!P.times(static_cast<long>(ell)).is_infinity() || !Q.times(static_cast<long>(ell)).is_infinity())
        throw DomainError("Weil pairing arguments must be ell-torsion");
    const FieldElement one = P.curve().a1().one_like();
    if (P.is_infinity() || Q.is_infinity()) return one;
    FqPoint acc = P;
    for (unsigned i = 1; i < ell; ++i) {
        if (acc == Q) return one;
        acc += P;
    }
    FieldElement e = miller(P, Q, ell) / miller(Q, P, ell);
    return (ell % 2 == 1) ? -e : e;
}

FqPoint basis_combination(const TorsionBasis& B, long i, long j) { return B.P.times(i) + B.Q.times(j); }

std::optional<std::pair<unsigned, unsigned>> basis_coordinates(const TorsionBasis& B, const FqPoint& R) {
    FqPoint row = B.curve.infinity();
    for (unsigned i = 0; i < B.ell; ++i) {
        FqPoint acc = row;
        for (unsigned j = 0; j < B.ell; ++j) {
            if (acc == R) return std::make_pair(i, j);
            acc += B.Q;
        }
        row += B.P;
    }
    return std::nullopt;
}

FrobeniusMatrix frobenius_matrix(const TorsionBasis& B) {
    auto fp = basis_coordinates(B, frobenius_point(B.P));
    auto fq = basis_coordinates(B, frobenius_point(B.Q));
    if (!fp || !fq) throw InternalError("Frobenius image is not in the span of the torsion basis");
    FlMatrix m(B.ell, 2, 2);
    m.set(0, 0, fp->first);
    m.set(1, 0, fp->second);
    m.set(0, 1, fq->first);
    m.set(1, 1, fq->second);
    if (!m.invertible()) throw InternalError("Frobenius matrix is singular");
    return {m, B.base_curve.a1().field().characteristic()};
}

FrobeniusMatrix frobenius_matrix(const FqCurve& E, unsigned ell) { return frobenius_matrix(torsion_basis(E, ell)); }

unsigned rational_ell_torsion(const FqCurve& E, unsigned ell) {
    const FlMatrix F = frobenius_matrix(E, ell).matrix;
    return static_cast<unsigned>((F - FlMatrix::identity(ell, 2)).kernel().size());
}

std::vector<FqPoint> rational_torsion_generators(const FqCurve& E, unsigned ell) {
    require_prime_base(E, ell);
    return rational_torsion_generators(E, ell, division_polynomial(E, static_cast<int>(ell)));
}

std::vector<FqPoint> rational_torsion_generators(const FqCurve& E, unsigned ell, const FpPoly& psi) {
    std::vector<FqPoint> gens;
    for (const auto& x : poly_roots(psi)) {
        for (const auto& P : points_with_x(E, x)) {
            if (!has_exact_order(P, ell)) continue;
            bool seen = false;
            for (const auto& G : gens) {
                FqPoint acc = G;
                for (unsigned i = 1; i < ell && !seen; ++i, acc += G) seen = (acc == P);
                if (seen) break;
            }
            if (!seen) gens.push_back(P);
        }
    }
    return gens;
}

}  // namespace isolab
