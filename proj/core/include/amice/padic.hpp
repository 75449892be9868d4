#pragma once

#include <cstdint>
#include <string>

#include "amice/errors.hpp"

namespace amice {

// Largest modulus we track: p^capacity must stay below 2^62 so that sums of
// two residues fit in a signed 64-bit word and products in a 128-bit word.
inline constexpr std::uint64_t kResidueLimit = std::uint64_t{1} << 62;

bool is_prime_u32(std::uint32_t n);

// p^k as a uint64_t; throws domain_error past kResidueLimit.
std::uint64_t pow_u64(std::uint32_t p, int k);

// v_p(n!) by Legendre's formula.
int vp_factorial(std::uint32_t p, long long n);

// Valuation answer: `v` exact digits, or a lower bound when the residue is
// zero at the available precision.
struct PValuation {
    int v = 0;
    bool lower_bound = false;

    bool operator==(const PValuation&) const = default;
};

// Residue of an integer modulo p^M with tracked effective precision.
//
// The residue is kept canonical in [0, p^eff): digits past the effective
// precision are meaningless and never stored. capacity() is the working
// precision the value was created with, eff() <= capacity() the number of
// digits guaranteed correct. Arithmetic is exact at the effective precision
// it reports.
class PadicScalar {
  public:
    PadicScalar() = default;

    std::uint32_t prime() const { return p_; }
    int capacity() const { return cap_; }
    int eff() const { return eff_; }
    std::uint64_t residue() const { return r_; }

    bool is_zero() const { return r_ == 0; }

    // Known lower bound on the valuation: exact for a nonzero residue,
    // ">= eff" otherwise.
    PValuation valuation() const;

    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar operator-() const;
    PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
    PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
    PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }

    PadicScalar mul_int(long long n) const;

    // a * unit_inverse(a) == 1 mod p^eff. Throws domain_error on non-units.
    PadicScalar unit_inverse() const;

    // Exact division by p^k. The true value must be divisible by p^k;
    // costs k effective digits.
    PadicScalar div_pow_p(int k) const;

    PadicScalar mul_pow_p(int k) const;

    PadicScalar pow(unsigned __int128 e) const;

    // View at a lower effective precision.
    PadicScalar reduced(int new_eff) const;

    // Re-interpret at a lower capacity (reduces eff along with it).
    PadicScalar with_capacity(int new_cap) const;

    // Equal as residues at the shared effective precision.
    bool congruent(const PadicScalar& o) const;

    std::string str() const { return std::to_string(r_); }

    static PadicScalar from_int(std::uint32_t p, int capacity, long long n);
    static PadicScalar from_residue(std::uint32_t p, int capacity, std::uint64_t r, int eff);
    static PadicScalar zero(std::uint32_t p, int capacity);
    static PadicScalar one(std::uint32_t p, int capacity);

  private:
    PadicScalar(std::uint32_t p, int cap, int eff, std::uint64_t r)
        : p_(p), cap_(cap), eff_(eff), r_(r) {}

    void check_compatible(const PadicScalar& o) const;

    std::uint32_t p_ = 0;
    int cap_ = 0;
    int eff_ = 0;
    std::uint64_t r_ = 0;
};

// Canonical residue n mod p^M at full effective precision. Rejects
// composite p and M < 1.
PadicScalar make_scalar(std::uint32_t p, int capacity, long long n);

// p^voff * unit: the representation for scalars of negative valuation.
// Integral code paths never construct voff < 0; it appears only where a
// Frobenius structure divides by a power of p.
struct OffsetScalar {
    long long voff = 0;
    PadicScalar unit;

    // Fold the unit part's visible p-content into the offset.
    OffsetScalar normalized() const;
    OffsetScalar operator*(const OffsetScalar& o) const;

    static OffsetScalar from_scalar(const PadicScalar& s) { return OffsetScalar{0, s}; }
};

} // namespace amice
