#include "isolab/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "isolab/roots.hpp"

namespace isolab {

namespace modp {

u64 pow(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 inv(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw ArithmeticError("inverse of zero in F_" + std::to_string(p));
    // extended Euclid on signed 128-bit values
    __int128 t = 0, new_t = 1;
    __int128 r = p, new_r = a;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += p;
    return static_cast<u64>(t);
}

u64 reduce(i64 v, u64 p) {
    __int128 r = static_cast<__int128>(v) % static_cast<__int128>(p);
    if (r < 0) r += p;
    return static_cast<u64>(r);
}

}  // namespace modp

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = modp::pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = modp::mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(u64 p) : p_(p) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

bool PrimeField::is_square(u64 a) const {
    a %= p_;
    if (a == 0 || p_ == 2) return true;
    return pow(a, (p_ - 1) / 2) == 1;
}

std::optional<u64> PrimeField::sqrt(u64 a) const {
    a %= p_;
    if (a == 0 || p_ == 2) return a;
    if (!is_square(a)) return std::nullopt;
    if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);
    u64 t = p_ - 1;
    int s = 0;
    while ((t & 1) == 0) {
        t >>= 1;
        ++s;
    }
    u64 z = 2;
    while (is_square(z)) ++z;
    u64 c = pow(z, t);
    u64 x = pow(a, (t + 1) / 2);
    u64 b = pow(a, t);
    int m = s;
    while (b != 1) {
        int i = 0;
        u64 b2 = b;
        while (b2 != 1) {
            b2 = mul(b2, b2);
            ++i;
        }
        u64 g = c;
        for (int j = 0; j < m - i - 1; ++j) g = mul(g, g);
        x = mul(x, g);
        c = mul(g, g);
        b = mul(b, c);
        m = i;
    }
    return x;
}

// ---------------------------------------------------------------------------

namespace {

struct Registry {
    std::mutex mu;
    std::map<std::pair<u64, std::vector<u64>>, std::unique_ptr<FiniteField>> fields;
    std::map<std::pair<u64, unsigned>, const FiniteField*> smallest;
    std::map<const FiniteField*, FieldElement> nonsquares;
};

Registry& registry() {
    static Registry r;
    return r;
}

using Coeffs = FieldElement::Coeffs;

void trim(std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// Inverse of a (degree < k) modulo the monic modulus, by extended Euclid over F_p.
std::vector<u64> poly_inverse_mod(const std::vector<u64>& a, const std::vector<u64>& m, u64 p) {
    std::vector<u64> r0 = m, r1 = a;
    std::vector<u64> s0{}, s1{1};
    trim(r1);
    auto sub_scaled_shift = [p](std::vector<u64>& x, const std::vector<u64>& y, u64 c, size_t shift) {
        if (x.size() < y.size() + shift) x.resize(y.size() + shift, 0);
        for (size_t i = 0; i < y.size(); ++i) x[i + shift] = modp::sub(x[i + shift], modp::mul(c, y[i], p), p);
    };
    while (!r1.empty()) {
        std::vector<u64> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
        u64 lead_inv = modp::inv(r1.back(), p);
        std::vector<u64> rem = r0;
        while (rem.size() >= r1.size() && !rem.empty()) {
            size_t shift = rem.size() - r1.size();
            u64 c = modp::mul(rem.back(), lead_inv, p);
            q[shift] = c;
            sub_scaled_shift(rem, r1, c, shift);
            trim(rem);
        }
        // s_new = s0 - q*s1
        std::vector<u64> qs(q.size() + s1.size(), 0);
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) qs[i + j] = modp::add(qs[i + j], modp::mul(q[i], s1[j], p), p);
        std::vector<u64> s_new = s0;
        if (s_new.size() < qs.size()) s_new.resize(qs.size(), 0);
        for (size_t i = 0; i < qs.size(); ++i) s_new[i] = modp::sub(s_new[i], qs[i], p);
        trim(s_new);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s_new);
    }
    // r0 is a nonzero constant when gcd = 1
    if (r0.size() != 1) throw InternalError("modulus is not irreducible");
    u64 c = modp::inv(r0[0], p);
    for (auto& v : s0) v = modp::mul(v, c, p);
    return s0;
}

}  // namespace

FiniteField::FiniteField(u64 p, std::vector<u64> modulus)
    : base_(p), k_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
    mpz_ui_pow_ui(order_.get_mpz_t(), p, k_);
}

const FiniteField& FiniteField::prime(u64 p) { return with_modulus(p, {0, 1}); }

const FiniteField& FiniteField::with_modulus(u64 p, std::vector<u64> modulus) {
    PrimeField base(p);
    if (modulus.size() < 2 || modulus.back() != 1)
        throw DomainError("extension modulus must be monic of degree >= 1");
    for (auto& c : modulus) c %= p;
    auto& reg = registry();
    {
        std::lock_guard lock(reg.mu);
        auto it = reg.fields.find({p, modulus});
        if (it != reg.fields.end()) return *it->second;
    }
    if (modulus.size() > 2) {
        const auto& fp = prime(p);
        std::vector<FieldElement> cs;
        for (u64 c : modulus) cs.push_back(fp.from_int(static_cast<i64>(c)));
        if (!is_irreducible(Polynomial<FieldElement>(std::move(cs))))
            throw DomainError("extension modulus is reducible over F_" + std::to_string(p));
    }
    std::lock_guard lock(reg.mu);
    auto& slot = reg.fields[{p, modulus}];
    if (!slot) slot.reset(new FiniteField(p, modulus));
    return *slot;
}

const FiniteField& FiniteField::extension(u64 p, unsigned k) {
    if (k == 0) throw DomainError("extension degree must be >= 1");
    if (k == 1) return prime(p);
    auto& reg = registry();
    {
        std::lock_guard lock(reg.mu);
        auto it = reg.smallest.find({p, k});
        if (it != reg.smallest.end()) return *it->second;
    }
    auto f = find_irreducible(p, k);
    std::vector<u64> m;
    for (int i = 0; i <= f.degree(); ++i) m.push_back(f[i].value());
    const FiniteField& field = with_modulus(p, std::move(m));
    std::lock_guard lock(reg.mu);
    reg.smallest[{p, k}] = &field;
    return field;
}

std::optional<u64> FiniteField::size() const {
    if (!order_.fits_ulong_p()) return std::nullopt;
    return order_.get_ui();
}

FieldElement FiniteField::zero() const { return FieldElement(this, Coeffs(k_, 0)); }

FieldElement FiniteField::one() const {
    Coeffs c(k_, 0);
    c[0] = 1 % base_.p();
    return FieldElement(this, std::move(c));
}

FieldElement FiniteField::from_int(i64 v) const {
    Coeffs c(k_, 0);
    c[0] = base_.from_int(v);
    return FieldElement(this, std::move(c));
}

FieldElement FiniteField::from_coeffs(std::span<const u64> coeffs) const {
    if (coeffs.size() > k_) throw StructuralError("too many coefficients for " + name());
    Coeffs c(k_, 0);
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i] % base_.p();
    return FieldElement(this, std::move(c));
}

FieldElement FiniteField::element_at(u64 index) const {
    Coeffs c(k_, 0);
    for (unsigned i = 0; i < k_; ++i) {
        c[i] = index % base_.p();
        index /= base_.p();
    }
    return FieldElement(this, std::move(c));
}

FieldElement FiniteField::random(std::mt19937_64& rng) const {
    Coeffs c(k_, 0);
    for (unsigned i = 0; i < k_; ++i) c[i] = uniform_below(rng, base_.p());
    return FieldElement(this, std::move(c));
}

FieldElement FiniteField::embed(const FieldElement& x) const {
    if (!x.field().is_prime_field() || x.field().characteristic() != characteristic())
        throw StructuralError("cannot embed " + x.field().name() + " into " + name());
    return from_int(static_cast<i64>(x.value()));
}

FieldElement FiniteField::nonsquare() const {
    auto& reg = registry();
    {
        std::lock_guard lock(reg.mu);
        auto it = reg.nonsquares.find(this);
        if (it != reg.nonsquares.end()) return it->second;
    }
    if (characteristic() == 2) throw DomainError("every element of " + name() + " is a square");
    FieldElement z;
    for (u64 i = 2;; ++i) {
        z = element_at(i);
        if (!z.is_zero() && !z.is_square()) break;
    }
    std::lock_guard lock(reg.mu);
    reg.nonsquares.emplace(this, z);
    return z;
}

std::string FiniteField::name() const {
    if (k_ == 1) return "F_" + std::to_string(base_.p());
    return "F_" + std::to_string(base_.p()) + "^" + std::to_string(k_);
}

// ---------------------------------------------------------------------------

const FiniteField& FieldElement::field() const {
    if (!f_) throw StructuralError("uninitialised field element");
    return *f_;
}

void FieldElement::check_same(const FieldElement& o) const {
    if (f_ != o.f_) {
        if (!f_ || !o.f_) throw StructuralError("uninitialised field element");
        throw StructuralError("mixed-field operands: " + f_->name() + " and " + o.f_->name());
    }
}

u64 FieldElement::value() const {
    if (!field().is_prime_field()) throw StructuralError("value() on a non-prime field element");
    return c_[0];
}

u64 FieldElement::index() const {
    unsigned __int128 acc = 0;
    const u64 p = field().characteristic();
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * p + c_[i];
        if (acc >> 64) throw CapabilityError("element index exceeds 64 bits in " + f_->name());
    }
    return static_cast<u64>(acc);
}

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

bool FieldElement::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](u64 v) { return v == 0; });
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    const u64 p = field().characteristic();
    for (auto& v : r.c_) v = modp::neg(v, p);
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(o);
    const u64 p = f_->characteristic();
    for (size_t i = 0; i < c_.size(); ++i) c_[i] = modp::add(c_[i], o.c_[i], p);
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(o);
    const u64 p = f_->characteristic();
    for (size_t i = 0; i < c_.size(); ++i) c_[i] = modp::sub(c_[i], o.c_[i], p);
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(o);
    const u64 p = f_->characteristic();
    const size_t k = c_.size();
    if (k == 1) {
        c_[0] = modp::mul(c_[0], o.c_[0], p);
        return *this;
    }
    std::vector<u64> prod(2 * k - 1, 0);
    if (p < (1ULL << 32)) {
        for (size_t s = 0; s < 2 * k - 1; ++s) {
            unsigned __int128 acc = 0;
            size_t lo = s >= k ? s - k + 1 : 0;
            size_t hi = std::min(s, k - 1);
            for (size_t i = lo; i <= hi; ++i) acc += static_cast<unsigned __int128>(c_[i] * o.c_[s - i]);
            prod[s] = static_cast<u64>(acc % p);
        }
    } else {
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) prod[i + j] = modp::add(prod[i + j], modp::mul(c_[i], o.c_[j], p), p);
    }
    const auto& m = f_->modulus_;
    for (size_t i = 2 * k - 2; i >= k; --i) {
        u64 c = prod[i];
        if (c == 0) continue;
        for (size_t j = 0; j < k; ++j) prod[i - k + j] = modp::sub(prod[i - k + j], modp::mul(c, m[j], p), p);
    }
    for (size_t i = 0; i < k; ++i) c_[i] = prod[i];
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero in " + field().name());
    const u64 p = f_->characteristic();
    if (c_.size() == 1) return FieldElement(f_, Coeffs{modp::inv(c_[0], p)});
    std::vector<u64> a(c_.begin(), c_.end());
    trim(a);
    auto inv = poly_inverse_mod(a, f_->modulus_, p);
    Coeffs c(c_.size(), 0);
    for (size_t i = 0; i < inv.size(); ++i) c[i] = inv[i];
    return FieldElement(f_, std::move(c));
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    check_same(o);
    return *this *= o.inverse();
}

FieldElement FieldElement::pow(u64 e) const {
    FieldElement base = *this, r = field().one();
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(mpz_class(-e));
    FieldElement r = field().one();
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r *= r;
        if (mpz_tstbit(e.get_mpz_t(), i)) r *= *this;
    }
    return r;
}

FieldElement FieldElement::frobenius() const {
    if (field().is_prime_field()) return *this;
    return pow(f_->characteristic());
}

bool FieldElement::is_square() const {
    if (is_zero() || field().characteristic() == 2) return true;
    mpz_class e = (f_->order_ - 1) / 2;
    return pow(e).is_one();
}

std::optional<FieldElement> FieldElement::sqrt() const {
    if (is_zero()) return *this;
    const FiniteField& F = field();
    if (F.is_prime_field()) {
        auto r = F.base().sqrt(c_[0]);
        if (!r) return std::nullopt;
        return F.from_int(static_cast<i64>(*r));
    }
    if (!is_square()) return std::nullopt;
    // Tonelli-Shanks over F_q
    mpz_class t = F.order_ - 1;
    unsigned s = 0;
    while (mpz_even_p(t.get_mpz_t())) {
        t /= 2;
        ++s;
    }
    FieldElement c = F.nonsquare().pow(t);
    FieldElement x = pow(mpz_class((t + 1) / 2));
    FieldElement b = pow(t);
    unsigned m = s;
    while (!b.is_one()) {
        unsigned i = 0;
        FieldElement b2 = b;
        while (!b2.is_one()) {
            b2 *= b2;
            ++i;
        }
        FieldElement g = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) g *= g;
        x *= g;
        c = g * g;
        b *= c;
        m = i;
    }
    return x;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return a.c_ == b.c_;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    for (size_t i = a.c_.size(); i-- > 0;) {
        if (auto cmp = a.c_[i] <=> b.c_[i]; cmp != 0) return cmp;
    }
    return std::strong_ordering::equal;
}

std::string FieldElement::to_string() const {
    if (!f_) return "<null>";
    if (f_->is_prime_field()) return std::to_string(c_[0]);
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << ']';
    return os.str();
}

}  // namespace isolab
