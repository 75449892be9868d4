#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amice/series.hpp"

namespace amice {

// A point of Z_p: either an exact integer (binomial series computed with no
// guard digits) or a residue carried at extended precision.
struct DiracPoint {
    bool exact = true;
    long long n = 0;
    PadicScalar r;

    static DiracPoint integer(long long n) { return DiracPoint{true, n, PadicScalar{}}; }
    static DiracPoint residue(const PadicScalar& r) { return DiracPoint{false, 0, r}; }

    bool is_unit(std::uint32_t p) const;
    PadicScalar as_scalar(std::uint32_t p, int capacity) const;
};

struct DiracTerm {
    DiracPoint x;
    DiracPoint y; // ignored when the combination is one-variable
    RingElement c;
};

// Finite weighted sum of Dirac measures at p-adic points. Integration of a
// polynomial against it is the literal weighted sum, which is what makes it
// the brute-force oracle for everything else in this module.
class DiracCombination {
  public:
    DiracCombination(RingSpec ring, int arity, std::string label = {});

    const RingSpec& ring() const { return ring_; }
    int arity() const { return arity_; }
    const std::string& label() const { return label_; }
    const std::vector<DiracTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add(DiracPoint x, RingElement c);
    void add(DiracPoint x, DiracPoint y, RingElement c);
    void add_int(long long x, long long c);
    void add_int(long long x, long long y, long long c);

    // Merge duplicate points and drop vanished coefficients.
    void canonicalize();

    bool all_x_units() const;

    // sum c_i x_i^k y_i^l, reduced to the ring capacity.
    RingElement moment_brute(int k, int l = 0) const;

  private:
    RingSpec ring_;
    int arity_;
    std::string label_;
    std::vector<DiracTerm> terms_;
};

enum class Provenance { from_diracs, restricted, stabilized, synthetic, raw };

// A truncated power series regarded as the transform of a measure.
struct MeasureSeries {
    Series series;
    Provenance provenance = Provenance::raw;
    std::string label;

    int arity() const { return series.arity(); }
    const RingSpec& ring() const { return series.ring(); }
};

// Transform of a Dirac combination: sum c_i (1+S)^(x_i) (1+T)^(y_i),
// truncated at the given orders. Residue points need v_p(order!) guard
// digits; exact-integer points need none.
MeasureSeries amice_transform(const DiracCombination& d, int order_s, int order_t = 0);

// Wrap a raw series as a measure.
MeasureSeries measure_from_series(Series f, Provenance prov = Provenance::raw,
                                  std::string label = {});

// Iterated invariant derivative at 0: the (k, l) moment.
RingElement moment(const MeasureSeries& m, int k, int l = 0);

// Projection onto measures supported on the units: f - phi(psi(f)), where
// phi is [p]-substitution in S. Idempotent; its image is ker psi.
MeasureSeries restrict_units(const MeasureSeries& m);

// theta(S,T) - sigma(theta)([p](S), T): the Frobenius-twisted restriction
// formula. Agrees with restrict_units exactly on measures with the
// twisted-pushforward structure produced by eisenstein_like; for a generic
// measure the two operators differ.
MeasureSeries stabilize(const MeasureSeries& m);

// psi(f) = 0 at effective precision (checked per S-slice).
bool is_unit_supported(const MeasureSeries& m);

// Transform of x^(-times) . m for a unit-supported m. Multiplication by x is
// the derivation, so x^(-1) is realized division-free as the Euler power
// d^(phi(p^M) - 1) via matrix exponentiation.
MeasureSeries divide_by_x(const MeasureSeries& m, int times = 1);

// Same measure by the independent route: solve d F = f coefficient-wise
// (divides by m+1, so callers supply guard digits) and pin the integration
// constant with psi(F) = 0.
MeasureSeries divide_by_x_ode(const MeasureSeries& m, int times = 1);

// Antiderivative with trace-zero normalization: the unique F with
// d F = f and psi(F) = 0. Shared by divide_by_x_ode and the ODE grid solver.
Series antiderive_trace_zero(const Series& f);

// Synthetic measure with the twisted-pushforward structure:
//   sum_{j>=0} sigma^j(theta)([p]^{o j}(S), T)
// summed until the term vanishes at working precision (at most
// M + ceil(log_p(order_s + 1)) + 1 terms contribute). For seeds whose
// y-marginal is zero the partial sum telescopes exactly:
// stabilize(result) = amice_transform(seed) = restrict_units(result).
MeasureSeries eisenstein_like(const DiracCombination& seed, int order_s, int order_t = 0);

// Residues mod the p-th cyclotomic polynomial: elements of Z_p[z]/Phi_p(z)
// as coefficient vectors of length p-1.
class CyclotomicElement {
  public:
    CyclotomicElement(std::uint32_t p, int capacity);

    std::uint32_t prime() const { return p_; }
    const PadicScalar& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    bool is_zero() const;
    int min_eff() const;

    CyclotomicElement operator+(const CyclotomicElement& o) const;
    CyclotomicElement operator*(const CyclotomicElement& o) const;
    CyclotomicElement scaled(const PadicScalar& s) const;

    std::string str() const;

    static CyclotomicElement from_scalar(std::uint32_t p, int capacity, const PadicScalar& s);
    // z^t reduced mod Phi_p.
    static CyclotomicElement zeta_power(std::uint32_t p, int capacity, int t);

  private:
    std::uint32_t p_;
    int cap_;
    std::vector<PadicScalar> c_;
};

// sum over zeta^p = 1 of f(zeta (1+s0) - 1), evaluated term-by-term in
// Z_p[z]/Phi_p. Vanishes at effective precision exactly when psi(f) = 0.
// Requires a plain-ring one-variable f with valid order >= M (p-1) so the
// truncation error at points of valuation 1/(p-1) sits below p^M, and a
// point s0 of valuation >= 1.
CyclotomicElement cyclotomic_trace(const Series& f, const PadicScalar& s0);

} // namespace amice
