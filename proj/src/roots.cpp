#include "isolab/roots.hpp"

#include <algorithm>
#include <random>

namespace isolab {

namespace {

std::vector<unsigned> prime_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Splits a product of distinct linear factors over an odd-characteristic field.
void split_linear(const FpPoly& g, std::mt19937_64& rng, std::vector<FieldElement>& out) {
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(-(g[0] / g[1]));
        return;
    }
    const FiniteField& F = g.zero().field();
    const mpz_class e = (F.order() - 1) / 2;
    for (int attempt = 0; attempt < 256; ++attempt) {
        FpPoly h = FpPoly::x(g.zero()) + FpPoly::constant(F.random(rng));
        FpPoly t = powmod(h, e, g) - FpPoly::constant(F.one());
        FpPoly d = poly_gcd(t, g);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear(d, rng, out);
            split_linear(g / d, rng, out);
            return;
        }
    }
    throw InternalError("equal-degree splitting failed to make progress");
}

mpz_class abs_mpz(const mpz_class& v) { return v < 0 ? mpz_class(-v) : v; }

std::vector<mpz_class> positive_divisors(mpz_class n) {
    n = abs_mpz(n);
    if (n == 0) throw InternalError("divisors of zero");
    if (n > mpz_class("1000000000000000000"))
        throw CapabilityError("rational root search: coefficient too large to factor by trial division");
    std::vector<std::pair<mpz_class, unsigned>> fac;
    for (mpz_class d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            fac.emplace_back(d, e);
        }
    }
    if (n > 1) fac.emplace_back(n, 1);
    std::vector<mpz_class> divs{1};
    for (const auto& [prime, exp] : fac) {
        const size_t sz = divs.size();
        mpz_class pk = 1;
        for (unsigned i = 1; i <= exp; ++i) {
            pk *= prime;
            for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pk);
        }
    }
    return divs;
}

}  // namespace

FpPoly lift_poly(const FpPoly& f, const FiniteField& field) {
    const FiniteField& src = f.zero().field();
    if (&src == &field) return f;
    return f.map([&](const FieldElement& c) { return field.embed(c); });
}

FpPoly frobenius_power_of_x(const FpPoly& m, unsigned n) {
    const FiniteField& F = m.zero().field();
    const u64 p = F.characteristic();
    FpPoly r = FpPoly::x(m.zero()) % m;
    const unsigned steps = n * F.degree();
    for (unsigned i = 0; i < steps; ++i) r = powmod(r, p, m);
    return r;
}

std::vector<FieldElement> poly_roots(const FpPoly& f) { return poly_roots(f, f.zero().field()); }

std::vector<FieldElement> poly_roots(const FpPoly& f0, const FiniteField& field) {
    if (f0.is_zero()) throw DomainError("roots of the zero polynomial");
    FpPoly f = lift_poly(f0, field);
    std::vector<FieldElement> out;
    if (f.degree() == 0) return out;
    auto size = field.size();
    if (size && *size <= kExhaustiveRootLimit && field.is_prime_field()) {
        const u64 p = field.characteristic();
        std::vector<u64> c;
        for (const auto& e : f.coeffs()) c.push_back(e.value());
        for (u64 x = 0; x < p; ++x) {
            u64 acc = 0;
            for (size_t i = c.size(); i-- > 0;) acc = modp::add(modp::mul(acc, x, p), c[i], p);
            if (acc == 0) out.push_back(field.from_int(static_cast<i64>(x)));
        }
        return out;
    }
    if (size && *size <= kExhaustiveRootLimit) {
        for (u64 i = 0; i < *size; ++i) {
            FieldElement c = field.element_at(i);
            if (f.eval(c).is_zero()) out.push_back(c);
        }
        return out;
    }
    if (field.characteristic() == 2) throw CapabilityError("root splitting in characteristic 2 beyond exhaustive limit");
    FpPoly g = f.monic();
    FpPoly xq = frobenius_power_of_x(g, 1);
    FpPoly lin = poly_gcd(xq - FpPoly::x(g.zero()), g);
    std::mt19937_64 rng(0x5eed);
    split_linear(lin, rng, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_irreducible(const FpPoly& f) {
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    FpPoly g = f.monic();
    FpPoly x = FpPoly::x(g.zero());
    if (frobenius_power_of_x(g, static_cast<unsigned>(n)) != x % g) return false;
    for (unsigned r : prime_divisors(static_cast<unsigned>(n))) {
        FpPoly h = frobenius_power_of_x(g, static_cast<unsigned>(n) / r) - x;
        if (poly_gcd(h, g).degree() != 0) return false;
    }
    return true;
}

FpPoly find_irreducible(u64 p, unsigned k) {
    if (k == 0) throw DomainError("degree must be >= 1");
    const FiniteField& F = FiniteField::prime(p);
    if (k == 1) return FpPoly::x(F.one());
    for (u64 index = 1;; ++index) {
        std::vector<FieldElement> cs;
        u64 rest = index;
        for (unsigned i = 0; i < k; ++i) {
            cs.push_back(F.from_int(static_cast<i64>(rest % p)));
            rest /= p;
        }
        if (rest != 0) break;
        if (cs[0].is_zero()) continue;
        cs.push_back(F.one());
        FpPoly cand(std::move(cs));
        if (is_irreducible(cand)) return cand;
    }
    throw InternalError("no irreducible polynomial found");
}

std::vector<Rational> rational_roots(const QPoly& f) {
    if (f.is_zero()) throw DomainError("roots of the zero polynomial");
    mpz_class l = 1;
    for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    std::vector<mpz_class> a;
    for (const auto& c : f.coeffs()) a.push_back(c.num() * (l / c.den()));
    std::vector<Rational> out;
    size_t low = 0;
    while (low < a.size() && a[low] == 0) ++low;
    if (low > 0) out.emplace_back(0);
    a.erase(a.begin(), a.begin() + static_cast<long>(low));
    if (a.size() > 1) {
        for (const auto& d : positive_divisors(a.front())) {
            for (const auto& e : positive_divisors(a.back())) {
                for (int sign : {1, -1}) {
                    Rational cand(mpz_class(sign * d), e);
                    if (f.eval(cand).is_zero()) out.push_back(cand);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<FieldElement> nth_roots(const FieldElement& c, unsigned n) {
    std::vector<FieldElement> v(n + 1, c.zero_like());
    v[0] = -c;
    v[n] = c.one_like();
    return poly_roots(FpPoly(std::move(v)));
}

std::vector<Rational> nth_roots(const Rational& c, unsigned n) {
    std::vector<Rational> out;
    auto r = c.root(n);
    if (!r) return out;
    out.push_back(*r);
    if (n % 2 == 0 && !r->is_zero()) out.push_back(-*r);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace isolab
