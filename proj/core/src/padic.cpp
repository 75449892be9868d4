#include "amice/padic.hpp"

#include <algorithm>

namespace amice {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t pow_u64(std::uint32_t p, int k) {
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (r > kResidueLimit / p)
            throw domain_error("precision capacity overflow: p^" + std::to_string(k) +
                               " exceeds the 62-bit residue limit");
        r *= p;
    }
    return r;
}

int vp_factorial(std::uint32_t p, long long n) {
    int v = 0;
    while (n > 0) {
        n /= p;
        v += static_cast<int>(n);
    }
    return v;
}

namespace {

int vp_u64(std::uint32_t p, std::uint64_t r, int max_v) {
    int v = 0;
    while (v < max_v && r % p == 0) {
        r /= p;
        ++v;
    }
    return v;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

} // namespace

PValuation PadicScalar::valuation() const {
    if (r_ == 0) return PValuation{eff_, true};
    return PValuation{vp_u64(p_, r_, eff_), false};
}

void PadicScalar::check_compatible(const PadicScalar& o) const {
    if (p_ != o.p_) throw domain_error("mixed primes in scalar arithmetic");
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    check_compatible(o);
    int cap = std::min(cap_, o.cap_);
    int eff = std::min({eff_, o.eff_, cap});
    std::uint64_t m = pow_u64(p_, eff);
    return PadicScalar(p_, cap, eff, m == 1 ? 0 : (r_ % m + o.r_ % m) % m);
}

PadicScalar PadicScalar::operator-() const {
    std::uint64_t m = pow_u64(p_, eff_);
    return PadicScalar(p_, cap_, eff_, r_ == 0 ? 0 : m - r_);
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    check_compatible(o);
    int cap = std::min(cap_, o.cap_);
    // The unknown digits of one factor are scaled by the valuation of the
    // other, so the product can be good past min(eff, eff).
    PValuation va = valuation(), vb = o.valuation();
    int eff = std::min({eff_ + vb.v, o.eff_ + va.v, cap});
    eff = std::max(eff, 0);
    std::uint64_t m = pow_u64(p_, eff);
    return PadicScalar(p_, cap, eff, m == 1 ? 0 : mulmod(r_ % m, o.r_ % m, m));
}

PadicScalar PadicScalar::mul_int(long long n) const {
    return *this * PadicScalar::from_int(p_, cap_, n);
}

PadicScalar PadicScalar::unit_inverse() const {
    if (eff_ < 1) throw precision_error("unit_inverse: no effective digits");
    if (r_ % p_ == 0) throw domain_error("unit_inverse: element is not a unit");
    // Extended Euclid on (r, p^eff); the gcd is 1 since r is a unit.
    std::int64_t m = static_cast<std::int64_t>(pow_u64(p_, eff_));
    std::int64_t a = static_cast<std::int64_t>(r_), b = m;
    __int128 x0 = 1, x1 = 0;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        __int128 xt = x0 - static_cast<__int128>(q) * x1;
        x0 = x1;
        x1 = xt;
    }
    __int128 inv = x0 % m;
    if (inv < 0) inv += m;
    return PadicScalar(p_, cap_, eff_, static_cast<std::uint64_t>(inv));
}

PadicScalar PadicScalar::div_pow_p(int k) const {
    if (k == 0) return *this;
    if (k < 0) return mul_pow_p(-k);
    std::uint64_t q = pow_u64(p_, k);
    if (r_ % q != 0)
        throw domain_error("div_pow_p: residue not divisible by p^" + std::to_string(k));
    int eff = std::max(eff_ - k, 0);
    std::uint64_t m = pow_u64(p_, eff);
    return PadicScalar(p_, cap_, eff, m == 1 ? 0 : (r_ / q) % m);
}

PadicScalar PadicScalar::mul_pow_p(int k) const {
    if (k == 0) return *this;
    if (k < 0) return div_pow_p(-k);
    // p^k * (r + O(p^eff)) is known mod p^(eff+k).
    int eff = std::min(eff_ + k, cap_);
    std::uint64_t m = pow_u64(p_, eff);
    return PadicScalar(p_, cap_, eff, mulmod(r_ % m, pow_u64(p_, k) % m, m));
}

PadicScalar PadicScalar::pow(unsigned __int128 e) const {
    PadicScalar acc = PadicScalar::one(p_, cap_);
    acc = acc.reduced(eff_);
    PadicScalar base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

PadicScalar PadicScalar::reduced(int new_eff) const {
    new_eff = std::min(new_eff, eff_);
    new_eff = std::max(new_eff, 0);
    std::uint64_t m = pow_u64(p_, new_eff);
    return PadicScalar(p_, cap_, new_eff, m == 1 ? 0 : r_ % m);
}

PadicScalar PadicScalar::with_capacity(int new_cap) const {
    PadicScalar s = reduced(std::min(eff_, new_cap));
    s.cap_ = new_cap;
    return s;
}

bool PadicScalar::congruent(const PadicScalar& o) const {
    check_compatible(o);
    int eff = std::min(eff_, o.eff_);
    std::uint64_t m = pow_u64(p_, eff);
    return m == 1 || (r_ % m) == (o.r_ % m);
}

PadicScalar PadicScalar::from_int(std::uint32_t p, int capacity, long long n) {
    std::uint64_t m = pow_u64(p, capacity);
    long long r = n % static_cast<long long>(m);
    if (r < 0) r += static_cast<long long>(m);
    return PadicScalar(p, capacity, capacity, static_cast<std::uint64_t>(r));
}

PadicScalar PadicScalar::from_residue(std::uint32_t p, int capacity, std::uint64_t r, int eff) {
    eff = std::min(eff, capacity);
    std::uint64_t m = pow_u64(p, eff);
    return PadicScalar(p, capacity, eff, m == 1 ? 0 : r % m);
}

PadicScalar PadicScalar::zero(std::uint32_t p, int capacity) {
    return PadicScalar(p, capacity, capacity, 0);
}

PadicScalar PadicScalar::one(std::uint32_t p, int capacity) {
    return PadicScalar(p, capacity, capacity, capacity > 0 ? 1u : 0u);
}

PadicScalar make_scalar(std::uint32_t p, int capacity, long long n) {
    if (!is_prime_u32(p)) throw domain_error("make_scalar: p = " + std::to_string(p) + " is not prime");
    if (capacity < 1) throw domain_error("make_scalar: precision must be >= 1");
    pow_u64(p, capacity); // capacity bound check
    return PadicScalar::from_int(p, capacity, n);
}

OffsetScalar OffsetScalar::normalized() const {
    PValuation v = unit.valuation();
    if (v.lower_bound || v.v == 0) return *this;
    return OffsetScalar{voff + v.v, unit.div_pow_p(v.v)};
}

OffsetScalar OffsetScalar::operator*(const OffsetScalar& o) const {
    return OffsetScalar{voff + o.voff, unit * o.unit}.normalized();
}

} // namespace amice
