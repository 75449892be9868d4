#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amice/padic.hpp"

namespace amice {

// Coefficient rings the engine computes over. `plain` is Z/p^M with the
// identity Frobenius; `polyq` is (Z/p^M)[q]/(q^(qbound+1)) with the
// endomorphism sigma fixing scalars and sending q^j to q^(pj), degrees past
// the bound truncated.
enum class RingTag { plain, polyq };

struct RingSpec {
    std::uint32_t p = 0;
    int capacity = 0;
    RingTag tag = RingTag::plain;
    int qbound = 0;

    bool operator==(const RingSpec&) const = default;

    int width() const { return tag == RingTag::plain ? 1 : qbound + 1; }
    RingSpec with_capacity(int cap) const { return RingSpec{p, cap, tag, qbound}; }

    static RingSpec plain(std::uint32_t p, int capacity);
    static RingSpec polyq(std::uint32_t p, int capacity, int qbound);
};

// Element of a RingSpec ring: a dense coefficient list indexed by q-degree
// (length 1 for the plain ring).
class RingElement {
  public:
    RingElement() = default;
    explicit RingElement(RingSpec spec);

    const RingSpec& spec() const { return spec_; }
    const PadicScalar& qc(int j) const { return c_[static_cast<std::size_t>(j)]; }
    PadicScalar& qc(int j) { return c_[static_cast<std::size_t>(j)]; }
    int width() const { return static_cast<int>(c_.size()); }

    // The plain-scalar payload; throws for a polyq element with q-content.
    const PadicScalar& scalar() const;

    bool is_zero() const;
    int min_eff() const;

    // Exact valuation of the visible residues, "lower_bound" when all zero.
    PValuation valuation() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
    RingElement& operator-=(const RingElement& o) { return *this = *this - o; }

    RingElement scaled(const PadicScalar& s) const;
    RingElement mul_int(long long n) const;
    RingElement mul_pow_p(int k) const;
    RingElement div_pow_p(int k) const;

    // Exact division by a nonzero integer: unit part by modular inverse,
    // p-part by exact digit shift (costs v_p(n) effective digits).
    RingElement div_exact_int(long long n) const;

    // The ring endomorphism sigma.
    RingElement frobenius() const;

    RingElement reduced(int new_eff) const;
    RingElement with_capacity(int new_cap) const;
    bool congruent(const RingElement& o) const;

    std::string str() const;

    static RingElement zero(RingSpec spec);
    static RingElement one(RingSpec spec);
    static RingElement from_int(RingSpec spec, long long n);
    static RingElement from_scalar(RingSpec spec, const PadicScalar& s);
    // c * q^deg (polyq rings only).
    static RingElement q_power(RingSpec spec, int deg, long long c = 1);

  private:
    RingSpec spec_;
    std::vector<PadicScalar> c_;
};

} // namespace amice
