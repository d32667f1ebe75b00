#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "isolab/errors.hpp"

namespace isolab {

// Dense univariate polynomial over a field K. K provides the usual operators
// plus zero_like/one_like/is_zero/inverse; coefficients are stored low to high
// with trailing zeros trimmed.
template <class K>
class Polynomial {
public:
    static constexpr int kZeroDegree = -1;

    explicit Polynomial(K zero) : zero_(zero.zero_like()) {}
    explicit Polynomial(std::vector<K> coeffs) : zero_(first_zero(coeffs)), c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const K& c) { return Polynomial(std::vector<K>{c}); }
    static Polynomial monomial(const K& c, int degree) {
        std::vector<K> v(static_cast<size_t>(degree) + 1, c.zero_like());
        v.back() = c;
        return Polynomial(std::move(v));
    }
    // The polynomial x over the field of `like`.
    static Polynomial x(const K& like) { return monomial(like.one_like(), 1); }

    int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const K& operator[](int i) const {
        return (i < 0 || static_cast<size_t>(i) >= c_.size()) ? zero_ : c_[static_cast<size_t>(i)];
    }
    const std::vector<K>& coeffs() const { return c_; }
    const K& lead() const { return c_.empty() ? zero_ : c_.back(); }
    const K& zero() const { return zero_; }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    K eval(const K& x) const {
        K acc = zero_;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Polynomial monic() const {
        if (is_zero()) return *this;
        K inv = lead().inverse();
        return *this * inv;
    }

    Polynomial derivative() const {
        std::vector<K> d;
        for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * zero_.like(static_cast<long>(i)));
        return from(std::move(d));
    }

    template <class Fn>
    auto map(Fn fn) const {
        using L = decltype(fn(zero_));
        std::vector<L> v;
        v.reserve(c_.size());
        for (const auto& c : c_) v.push_back(fn(c));
        if (v.empty()) return Polynomial<L>(fn(zero_));
        return Polynomial<L>(std::move(v));
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial(a.zero_);
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(Polynomial a, const K& s) {
        for (auto& c : a.c_) c *= s;
        a.trim();
        return a;
    }
    friend Polynomial operator*(const K& s, Polynomial a) { return std::move(a) * s; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    // Quotient and remainder; throws on division by the zero polynomial.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
        if (a.degree() < b.degree()) return {Polynomial(a.zero_), a};
        std::vector<K> rem = a.c_;
        std::vector<K> q(a.c_.size() - b.c_.size() + 1, a.zero_);
        const K inv = b.lead().inverse();
        const size_t db = b.c_.size() - 1;
        for (size_t i = rem.size(); i-- > db;) {
            if (rem[i].is_zero()) continue;
            K c = rem[i] * inv;
            q[i - db] = c;
            for (size_t j = 0; j <= db; ++j) rem[i - db + j] -= c * b.c_[j];
        }
        rem.resize(db);
        return {Polynomial::from(std::move(q), a.zero_), Polynomial::from(std::move(rem), a.zero_)};
    }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }
    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            std::string c = c_[i].to_string();
            const bool negative = !first && c.front() == '-';
            if (negative) c.erase(0, 1);
            if (!first) os << (negative ? " - " : " + ");
            first = false;
            if (i == 0 || c != "1") os << c;
            if (i > 0) os << (c == "1" ? "" : "*") << var;
            if (i > 1) os << '^' << i;
        }
        return os.str();
    }

    static Polynomial from(std::vector<K> v, const K& zero) {
        if (v.empty()) return Polynomial(zero);
        return Polynomial(std::move(v));
    }

private:
    Polynomial from(std::vector<K> v) const { return from(std::move(v), zero_); }
    static K first_zero(const std::vector<K>& v) {
        if (v.empty()) throw StructuralError("polynomial needs at least one coefficient to fix its field");
        return v.front().zero_like();
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    K zero_;
    std::vector<K> c_;
};

template <class K>
Polynomial<K> poly_gcd(Polynomial<K> a, Polynomial<K> b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <class K>
Polynomial<K> mulmod(const Polynomial<K>& a, const Polynomial<K>& b, const Polynomial<K>& m) {
    return (a * b) % m;
}

template <class K>
Polynomial<K> powmod(Polynomial<K> base, std::uint64_t e, const Polynomial<K>& m) {
    Polynomial<K> r = Polynomial<K>::constant(base.zero().one_like()) % m;
    base = base % m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

template <class K>
Polynomial<K> powmod(const Polynomial<K>& base, const mpz_class& e, const Polynomial<K>& m) {
    Polynomial<K> r = Polynomial<K>::constant(base.zero().one_like()) % m;
    Polynomial<K> b = base % m;
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m);
    }
    return r;
}

// Inverse of a modulo m when gcd(a, m) = 1.
template <class K>
std::optional<Polynomial<K>> inverse_mod(const Polynomial<K>& a, const Polynomial<K>& m) {
    Polynomial<K> r0 = m, r1 = a % m;
    Polynomial<K> s0(m.zero()), s1 = Polynomial<K>::constant(m.zero().one_like());
    while (!r1.is_zero()) {
        auto [q, r] = Polynomial<K>::divmod(r0, r1);
        Polynomial<K> s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != 0) return std::nullopt;
    return (s0 * r0.lead().inverse()) % m;
}

// f(g(x)) by Horner.
template <class K>
Polynomial<K> compose(const Polynomial<K>& f, const Polynomial<K>& g) {
    Polynomial<K> acc(f.zero());
    for (int i = f.degree(); i >= 0; --i) acc = acc * g + Polynomial<K>::constant(f[i]);
    return acc;
}

template <class K>
Polynomial<K> compose_mod(const Polynomial<K>& f, const Polynomial<K>& g, const Polynomial<K>& m) {
    Polynomial<K> acc(f.zero());
    for (int i = f.degree(); i >= 0; --i) acc = (acc * g + Polynomial<K>::constant(f[i])) % m;
    return acc;
}

}  // namespace isolab
