#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace fqgeom {

// Residue arithmetic on raw values. Callers guarantee a, b < p.
inline std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint32_t mod_neg(std::uint32_t a, std::uint32_t p) {
    return a == 0 ? 0 : p - a;
}

inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

inline std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
    std::uint64_t base = a % p;
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
    if (a == 0) throw std::domain_error("no inverse of zero");
    return mod_pow(a, p - 2, p);
}

// Canonicalize an arbitrary signed value into [0, p).
inline std::uint32_t mod_canon(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

// Legendre symbol by Euler's criterion: a^((p-1)/2) mod p.
inline int legendre_symbol(std::uint32_t a, std::uint32_t p) {
    a %= p;
    if (a == 0) return 0;
    return mod_pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

bool is_odd_prime(std::uint32_t n);

class FieldElement;

// An odd prime modulus, 3 <= p < 2^31. Validated once at construction;
// copies are trivial.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const { return p_; }

    FieldElement element(std::int64_t v) const;
    FieldElement zero() const;
    FieldElement one() const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

// A canonical residue tied to its modulus. Every operation re-canonicalizes;
// mixing moduli throws.
class FieldElement {
public:
    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }
    PrimeField field() const { return PrimeField(p_); }
    bool is_zero() const { return v_ == 0; }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        require_same_field(a, b);
        return FieldElement(mod_add(a.v_, b.v_, a.p_), a.p_);
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        require_same_field(a, b);
        return FieldElement(mod_sub(a.v_, b.v_, a.p_), a.p_);
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        require_same_field(a, b);
        return FieldElement(mod_mul(a.v_, b.v_, a.p_), a.p_);
    }
    FieldElement operator-() const { return FieldElement(mod_neg(v_, p_), p_); }

    FieldElement inverse() const { return FieldElement(mod_inv(v_, p_), p_); }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

private:
    friend class PrimeField;
    FieldElement(std::uint32_t v, std::uint32_t p) : v_(v), p_(p) {}

    static void require_same_field(const FieldElement& a, const FieldElement& b) {
        if (a.p_ != b.p_) throw std::invalid_argument("field elements have mismatched moduli");
    }

    std::uint32_t v_;
    std::uint32_t p_;
};

inline FieldElement PrimeField::element(std::int64_t v) const {
    return FieldElement(mod_canon(v, p_), p_);
}
inline FieldElement PrimeField::zero() const { return FieldElement(0, p_); }
inline FieldElement PrimeField::one() const { return FieldElement(1, p_); }

// Quadratic character eta: 0 at zero, +1 on nonzero squares, -1 otherwise.
inline int legendre(FieldElement a) {
    return legendre_symbol(a.value(), a.modulus());
}

// The fixed additive character x -> exp(2 pi i x / p).
inline std::complex<double> additive_char(FieldElement a) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(a.value()) / static_cast<double>(a.modulus());
    return {std::cos(angle), std::sin(angle)};
}

} // namespace fqgeom
