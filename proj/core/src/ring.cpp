#include "amice/ring.hpp"

#include <algorithm>

namespace amice {

RingSpec RingSpec::plain(std::uint32_t p, int capacity) {
    if (!is_prime_u32(p)) throw domain_error("ring: p = " + std::to_string(p) + " is not prime");
    if (capacity < 1) throw domain_error("ring: precision must be >= 1");
    pow_u64(p, capacity);
    return RingSpec{p, capacity, RingTag::plain, 0};
}

RingSpec RingSpec::polyq(std::uint32_t p, int capacity, int qbound) {
    RingSpec s = plain(p, capacity);
    if (qbound < 0) throw domain_error("ring: q-degree bound must be >= 0");
    s.tag = RingTag::polyq;
    s.qbound = qbound;
    return s;
}

RingElement::RingElement(RingSpec spec) : spec_(spec) {
    c_.assign(static_cast<std::size_t>(spec.width()), PadicScalar::zero(spec.p, spec.capacity));
}

const PadicScalar& RingElement::scalar() const {
    for (int j = 1; j < width(); ++j)
        if (!c_[static_cast<std::size_t>(j)].is_zero())
            throw domain_error("ring element has q-content where a scalar is required");
    return c_[0];
}

bool RingElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const PadicScalar& s) { return s.is_zero(); });
}

int RingElement::min_eff() const {
    int e = spec_.capacity;
    for (const auto& s : c_) e = std::min(e, s.eff());
    return e;
}

PValuation RingElement::valuation() const {
    PValuation best{min_eff(), true};
    for (const auto& s : c_) {
        PValuation v = s.valuation();
        if (!v.lower_bound && (best.lower_bound || v.v < best.v)) best = v;
        if (v.lower_bound && best.lower_bound) best.v = std::min(best.v, v.v);
    }
    return best;
}

RingElement RingElement::operator+(const RingElement& o) const {
    RingElement r(spec_);
    for (int j = 0; j < width(); ++j) r.c_[j] = c_[j] + o.c_[j];
    return r;
}

RingElement RingElement::operator-(const RingElement& o) const {
    RingElement r(spec_);
    for (int j = 0; j < width(); ++j) r.c_[j] = c_[j] - o.c_[j];
    return r;
}

RingElement RingElement::operator-() const {
    RingElement r(spec_);
    for (int j = 0; j < width(); ++j) r.c_[j] = -c_[j];
    return r;
}

RingElement RingElement::operator*(const RingElement& o) const {
    if (spec_.tag == RingTag::plain) {
        RingElement r(spec_);
        r.c_[0] = c_[0] * o.c_[0];
        return r;
    }
    RingElement r(spec_);
    for (int a = 0; a < width(); ++a) {
        if (c_[a].is_zero()) continue;
        for (int b = 0; a + b <= spec_.qbound && b < o.width(); ++b)
            r.c_[a + b] += c_[a] * o.c_[b];
    }
    return r;
}

RingElement RingElement::scaled(const PadicScalar& s) const {
    RingElement r(spec_);
    for (int j = 0; j < width(); ++j) r.c_[j] = c_[j] * s;
    return r;
}

RingElement RingElement::mul_int(long long n) const {
    return scaled(PadicScalar::from_int(spec_.p, spec_.capacity, n));
}

RingElement RingElement::mul_pow_p(int k) const {
    RingElement r(spec_);
    for (int j = 0; j < width(); ++j) r.c_[j] = c_[j].mul_pow_p(k);
    return r;
}

RingElement RingElement::div_pow_p(int k) const {
    RingElement r(spec_);
    for (int j = 0; j < width(); ++j) r.c_[j] = c_[j].div_pow_p(k);
    return r;
}

RingElement RingElement::div_exact_int(long long n) const {
    if (n == 0) throw domain_error("division by zero");
    bool neg = n < 0;
    unsigned long long u = neg ? -static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
    int v = 0;
    while (u % spec_.p == 0) {
        u /= spec_.p;
        ++v;
    }
    PadicScalar unit = PadicScalar::from_int(spec_.p, spec_.capacity, static_cast<long long>(u));
    RingElement r = scaled(unit.unit_inverse()).div_pow_p(v);
    return neg ? -r : r;
}

RingElement RingElement::frobenius() const {
    if (spec_.tag == RingTag::plain) return *this;
    RingElement r(spec_);
    for (int j = 0; j * static_cast<int>(spec_.p) <= spec_.qbound && j < width(); ++j)
        r.c_[j * spec_.p] = c_[j];
    return r;
}

RingElement RingElement::reduced(int new_eff) const {
    RingElement r(spec_);
    for (int j = 0; j < width(); ++j) r.c_[j] = c_[j].reduced(new_eff);
    return r;
}

RingElement RingElement::with_capacity(int new_cap) const {
    RingElement r(spec_.with_capacity(new_cap));
    for (int j = 0; j < width(); ++j) r.c_[j] = c_[j].with_capacity(new_cap);
    return r;
}

bool RingElement::congruent(const RingElement& o) const {
    for (int j = 0; j < width(); ++j)
        if (!c_[j].congruent(o.c_[j])) return false;
    return true;
}

std::string RingElement::str() const {
    if (spec_.tag == RingTag::plain) return c_[0].str();
    std::string s;
    for (int j = 0; j < width(); ++j) {
        if (j) s += ',';
        s += c_[j].str();
    }
    return s;
}

RingElement RingElement::zero(RingSpec spec) { return RingElement(spec); }

RingElement RingElement::one(RingSpec spec) {
    RingElement r(spec);
    r.c_[0] = PadicScalar::one(spec.p, spec.capacity);
    return r;
}

RingElement RingElement::from_int(RingSpec spec, long long n) {
    RingElement r(spec);
    r.c_[0] = PadicScalar::from_int(spec.p, spec.capacity, n);
    return r;
}

RingElement RingElement::from_scalar(RingSpec spec, const PadicScalar& s) {
    RingElement r(spec);
    r.c_[0] = s;
    return r;
}

RingElement RingElement::q_power(RingSpec spec, int deg, long long c) {
    if (spec.tag != RingTag::polyq) throw domain_error("q_power: ring has no q variable");
    RingElement r(spec);
    if (deg < 0 || deg > spec.qbound) throw domain_error("q_power: degree out of range");
    r.qc(deg) = PadicScalar::from_int(spec.p, spec.capacity, c);
    return r;
}

} // namespace amice
