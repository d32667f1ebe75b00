#pragma once

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "isolab/errors.hpp"

namespace isolab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

namespace modp {

inline u64 add(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return (s >= p || s < a) ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }
inline u64 neg(u64 a, u64 p) { return a == 0 ? 0 : p - a; }
inline u64 mul(u64 a, u64 b, u64 p) {
    if (p <= 0xffffffffULL) return a * b % p;
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}
u64 pow(u64 a, u64 e, u64 p);
u64 inv(u64 a, u64 p);
u64 reduce(i64 v, u64 p);

}  // namespace modp

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

// Uniform-ish draw in [0, n) that is reproducible across standard libraries.
inline u64 uniform_below(std::mt19937_64& rng, u64 n) { return n == 0 ? 0 : rng() % n; }

class PrimeField {
public:
    explicit PrimeField(u64 p);

    u64 p() const { return p_; }
    u64 add(u64 a, u64 b) const { return modp::add(a, b, p_); }
    u64 sub(u64 a, u64 b) const { return modp::sub(a, b, p_); }
    u64 neg(u64 a) const { return modp::neg(a, p_); }
    u64 mul(u64 a, u64 b) const { return modp::mul(a, b, p_); }
    u64 inv(u64 a) const { return modp::inv(a, p_); }
    u64 pow(u64 a, u64 e) const { return modp::pow(a, e, p_); }
    u64 from_int(i64 v) const { return modp::reduce(v, p_); }
    bool is_square(u64 a) const;
    std::optional<u64> sqrt(u64 a) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    u64 p_;
};

class FieldElement;

// F_{p^k} = F_p[t]/(modulus). Instances are interned for the lifetime of the
// process, so elements may hold a plain pointer to their field.
class FiniteField {
public:
    FiniteField(const FiniteField&) = delete;
    FiniteField& operator=(const FiniteField&) = delete;

    static const FiniteField& prime(u64 p);
    // Uses the lexicographically smallest monic irreducible of degree k.
    static const FiniteField& extension(u64 p, unsigned k);
    // modulus: monic, coefficients low to high; irreducibility is verified.
    static const FiniteField& with_modulus(u64 p, std::vector<u64> modulus);

    const PrimeField& base() const { return base_; }
    u64 characteristic() const { return base_.p(); }
    unsigned degree() const { return k_; }
    bool is_prime_field() const { return k_ == 1; }
    const std::vector<u64>& modulus() const { return modulus_; }
    const mpz_class& order() const { return order_; }
    // Field size when it fits in 64 bits.
    std::optional<u64> size() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(i64 v) const;
    FieldElement from_coeffs(std::span<const u64> coeffs) const;
    // Inverse of FieldElement::index(): base-p digits become coefficients.
    FieldElement element_at(u64 index) const;
    FieldElement random(std::mt19937_64& rng) const;
    // Constant embedding of an element of the prime subfield.
    FieldElement embed(const FieldElement& x) const;
    FieldElement nonsquare() const;

    std::string name() const;

private:
    FiniteField(u64 p, std::vector<u64> modulus);

    PrimeField base_;
    unsigned k_;
    std::vector<u64> modulus_;
    mpz_class order_;

    friend class FieldElement;
};

class FieldElement {
public:
    using Coeffs = boost::container::small_vector<u64, 1>;

    FieldElement() = default;

    bool valid() const { return f_ != nullptr; }
    const FiniteField& field() const;
    const Coeffs& coeffs() const { return c_; }
    // Canonical residue; prime fields only.
    u64 value() const;
    // Sum of c_i p^i; throws CapabilityError when it does not fit in 64 bits.
    u64 index() const;

    bool is_zero() const;
    bool is_one() const;

    FieldElement zero_like() const { return field().zero(); }
    FieldElement one_like() const { return field().one(); }
    FieldElement like(i64 v) const { return field().from_int(v); }

    FieldElement inverse() const;
    FieldElement pow(u64 e) const;
    FieldElement pow(const mpz_class& e) const;
    // x -> x^p
    FieldElement frobenius() const;
    bool is_square() const;
    std::optional<FieldElement> sqrt() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    // Orders by coefficient tuple, highest degree first (i.e. by index()).
    friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b);

    std::string to_string() const;

private:
    FieldElement(const FiniteField* f, Coeffs c) : f_(f), c_(std::move(c)) {}
    void check_same(const FieldElement& o) const;

    const FiniteField* f_ = nullptr;
    Coeffs c_;

    friend class FiniteField;
};

}  // namespace isolab
