#pragma once

#include <vector>

#include "isolab/curve.hpp"

namespace isolab {

// The sequence f_n with psi_n = f_n for odd n and psi_n = psi_2 f_n for even n,
// where psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6. Built by the standard
// recurrences and memoised; one instance per thread.
template <class K>
class DivisionPolynomials {
public:
    using Poly = Polynomial<K>;

    explicit DivisionPolynomials(const WeierstrassCurve<K>& E) : E_(E), F_(E.two_torsion_polynomial()) {
        const K z = E.zero();
        const K one = z.one_like();
        f_.push_back(Poly(z));                  // f_0
        f_.push_back(Poly::constant(one));      // f_1
        f_.push_back(Poly::constant(one));      // f_2
        // f_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
        f_.push_back(Poly(std::vector<K>{E.b8(), z.like(3) * E.b6(), z.like(3) * E.b4(), E.b2(), z.like(3)}));
        // f_4 = 2x^6 + b2 x^5 + 5 b4 x^4 + 10 b6 x^3 + 10 b8 x^2 + (b2 b8 - b4 b6) x + (b4 b8 - b6^2)
        f_.push_back(Poly(std::vector<K>{E.b4() * E.b8() - E.b6() * E.b6(), E.b2() * E.b8() - E.b4() * E.b6(),
                                         z.like(10) * E.b8(), z.like(10) * E.b6(), z.like(5) * E.b4(), E.b2(),
                                         z.like(2)}));
    }

    const WeierstrassCurve<K>& curve() const { return E_; }
    // psi_2^2 as a cubic in x.
    const Poly& two_torsion() const { return F_; }

    const Poly& f(int n) {
        if (n < 0) throw DomainError("division polynomial index must be >= 0");
        while (static_cast<int>(f_.size()) <= n) extend();
        return f_[static_cast<size_t>(n)];
    }

    // Polynomial whose roots are exactly the x-coordinates of the nonzero
    // n-torsion points: psi_n for odd n, f_n * psi_2^2 for even n.
    Poly torsion_polynomial(int n) {
        if (n < 1) throw DomainError("division polynomial index must be >= 1");
        if (n % 2 == 1) return f(n);
        return f(n) * F_;
    }

private:
    void extend() {
        const int n = static_cast<int>(f_.size());
        const int m = n / 2;
        if (n % 2 == 1) {
            // f_{2m+1}: psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3, with psi_2^4 = F^2 absorbed by the even terms
            Poly a = f_[m + 2] * f_[m] * f_[m] * f_[m];
            Poly b = f_[m - 1] * f_[m + 1] * f_[m + 1] * f_[m + 1];
            Poly FF = F_ * F_;
            if (m % 2 == 0)
                f_.push_back(FF * a - b);
            else
                f_.push_back(a - FF * b);
        } else {
            // f_{2m} = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2)
            Poly inner = f_[m + 2] * f_[m - 1] * f_[m - 1] - f_[m - 2] * f_[m + 1] * f_[m + 1];
            f_.push_back(f_[m] * inner);
        }
    }

    WeierstrassCurve<K> E_;
    Poly F_;
    std::vector<Poly> f_;
};

template <class K>
Polynomial<K> division_polynomial(const WeierstrassCurve<K>& E, int n) {
    DivisionPolynomials<K> d(E);
    return d.torsion_polynomial(n);
}

}  // namespace isolab
