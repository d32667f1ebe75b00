#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>

#include "isolab/errors.hpp"

namespace isolab {

// Exact rational number; always kept in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    static Rational parse(const std::string& s);

    const mpq_class& value() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational zero_like() const { return Rational(0); }
    Rational one_like() const { return Rational(1); }
    Rational like(long v) const { return Rational(v); }

    Rational inverse() const;
    Rational pow(long e) const;
    // Exact n-th root when one exists in Q.
    std::optional<Rational> root(unsigned n) const;
    std::optional<Rational> sqrt() const { return root(2); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) {
        v_ += o.v_;
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        v_ -= o.v_;
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        v_ *= o.v_;
        return *this;
    }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    // True when the stored representation is in lowest terms with den > 0.
    bool normalized() const;
    std::string to_string() const { return v_.get_str(); }

private:
    mpq_class v_;
};

}  // namespace isolab
