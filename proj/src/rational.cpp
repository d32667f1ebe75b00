#include "isolab/rational.hpp"

namespace isolab {

namespace {

std::optional<mpz_class> exact_root(const mpz_class& v, unsigned n) {
    if (v < 0) {
        if (n % 2 == 0) return std::nullopt;
        auto r = exact_root(mpz_class(-v), n);
        if (!r) return std::nullopt;
        return mpz_class(-*r);
    }
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), n) == 0) return std::nullopt;
    return r;
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw ArithmeticError("rational with zero denominator");
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw DomainError("not a rational number: '" + s + "'");
    if (v.get_den() == 0) throw ArithmeticError("rational with zero denominator");
    return Rational(v);
}

Rational Rational::inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero in Q");
    return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw ArithmeticError("division by zero in Q");
    v_ /= o.v_;
    return *this;
}

Rational Rational::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

std::optional<Rational> Rational::root(unsigned n) const {
    if (n == 0) throw DomainError("zeroth root");
    auto a = exact_root(v_.get_num(), n);
    auto b = exact_root(v_.get_den(), n);
    if (!a || !b) return std::nullopt;
    return Rational(*a, *b);
}

bool Rational::normalized() const {
    if (v_.get_den() <= 0) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return g == 1;
}

}  // namespace isolab
