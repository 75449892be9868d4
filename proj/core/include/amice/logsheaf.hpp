#pragma once

#include "amice/polylog.hpp"

namespace amice {

// What happens to a coefficient the connection pushes past the level bound:
// `sheaf` kills it (the transition maps quotient it away, which is what the
// compatibility of the basis with transitions means); `strict` raises
// clip_error when it is nonzero, to catch misuse on general sections.
enum class ClipPolicy { sheaf, strict };

// Section of the level-n divided-power coefficient algebra: one-variable
// series e_(k,l)(s) over the basis w^[k,l], k+l <= n, each cell carrying a
// power-of-p offset (zero on every integral code path; negative offsets only
// arise through the Frobenius structure). A raised form flag marks sections
// of the one-dimensional relative 1-form module, generated by w.
class LogSection {
  public:
    LogSection(RingSpec ring, int level, int order_s, bool one_form = false);

    const RingSpec& ring() const { return ring_; }
    int level() const { return level_; }
    int order_s() const { return order_s_; }
    bool one_form() const { return one_form_; }

    const Series& at(int k, int l) const;
    int offset(int k, int l) const;
    void set(int k, int l, Series s, int poff = 0);

    bool is_zero() const;

    LogSection operator+(const LogSection& o) const;
    LogSection operator-(const LogSection& o) const;
    LogSection operator-() const;
    LogSection scaled(const RingElement& c) const;
    LogSection mul_int(long long n) const;

    // Fold nonnegative offsets back into the coefficients.
    LogSection normalized() const;

  private:
    std::size_t idx(int k, int l) const;

    RingSpec ring_;
    int level_;
    int order_s_;
    bool one_form_;
    std::vector<Series> c_;
    std::vector<int> poff_;
};

// 1 * w^[k,l] at the given level.
LogSection basis_section(RingSpec ring, int order_s, int level, int k, int l);

// nabla: coefficient of w^[k,l] (x) w in the output is d(e_(k,l)) + l e_(k,l-1),
// combining the derivation on functions with nabla(w^[k,l]) = (l+1) w^[k,l+1] (x) w.
LogSection connection(const LogSection& sec, ClipPolicy policy = ClipPolicy::sheaf);

// Frobenius structure: e_(k,l)(s) w^[k,l] maps to
// p^(-l) sigma(e_(k,l))([p](s)) w^[k,l]; the p^(-l) goes into the cell offset
// when the coefficient is not divisible.
LogSection frobenius_section(const LogSection& sec);

// p^l w^[k,l]: the stated inverse of the Frobenius structure on basis
// elements (composing with frobenius_section gives the identity).
LogSection frobenius_inverse_basis(RingSpec ring, int order_s, int level, int k, int l);

// sum_k g_k(s) w^[k,0] (x) w: the expansion of (1 - Phi) applied to the
// canonical 1-form system; only l = 0 components, denominator-free.
LogSection rhs_one_minus_phi(const MeasureSeries& theta, int level, RestrictionMode mode);

// The level-n section assembled from the closed-form moment grid.
LogSection rho_section(const MeasureSeries& theta, int level, RestrictionMode mode,
                       int workers = 1);

// Drop the k+l = level coefficients; level decreases by one.
LogSection transition(const LogSection& sec);

// Divided-power product: w^[a,b] w^[c,d] = C(a+c,a) C(b+d,b) w^[a+c,b+d],
// extended bilinearly. Levels add; max_level bounds the output.
LogSection dp_multiply(const LogSection& a, const LogSection& b, int max_level = 16);

struct VerifyCell {
    int k = 0, l = 0;
    int discrepancy_valuation = 0;
    bool lower_bound = false;
    int eff = 0;
    bool ok = false;
};

struct VerifyReport {
    bool pass = false;
    int level = 0;
    std::vector<VerifyCell> cells;
};

// Entrywise comparison of two sections of the same shape.
VerifyReport compare_sections(const LogSection& lhs, const LogSection& rhs);

// The defining check: connection(rho_section) against rhs_one_minus_phi,
// entrywise discrepancy valuations, passing iff each reaches the effective
// precision.
VerifyReport verify_polylog(const MeasureSeries& theta, int level, RestrictionMode mode,
                            int workers = 1);

} // namespace amice
