#pragma once

#include <cstdint>
#include <vector>

#include "amice/ring.hpp"

namespace amice {

enum class Var { S, T };

// Truncated power series in one variable (S) or two (S, T) over a coefficient
// ring. Results are correct modulo (S^(order_s+1), T^(order_t+1), p^eff) up to
// the tracked valid orders: the invariant derivation consumes one order per
// application, and coefficients past the valid order are kept at zero.
class Series {
  public:
    Series() = default;

    static Series zero(RingSpec ring, int arity, int order_s, int order_t = 0);
    static Series constant(RingSpec ring, int arity, int order_s, int order_t,
                           const RingElement& c);

    const RingSpec& ring() const { return ring_; }
    int arity() const { return arity_; }
    int order(Var v) const { return v == Var::S ? ns_ : nt_; }
    int valid(Var v) const { return v == Var::S ? valid_s_ : valid_t_; }
    void set_valid(Var v, int k);

    const RingElement& at(int i) const;
    const RingElement& at(int i, int j) const;
    void set(int i, const RingElement& c);
    void set(int i, int j, const RingElement& c);

    bool is_zero() const;
    int min_eff() const;

    // Smallest coefficient valuation over the valid range; lower_bound when
    // the series is zero at effective precision.
    PValuation valuation() const;

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator-() const;
    Series operator*(const Series& o) const;
    Series scaled(const RingElement& c) const;
    Series scaled(const PadicScalar& c) const;
    Series mul_int(long long n) const;
    Series div_exact_int(long long n) const;

    // sigma applied to every coefficient.
    Series frobenius_coefficients() const;

    Series reduced(int new_eff) const;
    // Re-interpret over the same ring at a lower capacity.
    Series with_capacity(int new_cap) const;
    bool congruent(const Series& o) const;

    // Drop the T variable at T = 0 (arity 2 -> arity 1).
    Series eval_t_zero() const;
    // Constant coefficient of a one-variable series.
    RingElement constant_term() const;

    Series truncated(int order_s, int order_t = 0) const;

  private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(nt_ + 1) +
               static_cast<std::size_t>(j);
    }
    void clear_past_valid();

    RingSpec ring_;
    int arity_ = 1;
    int ns_ = 0, nt_ = 0;
    int valid_s_ = 0, valid_t_ = 0;
    std::vector<RingElement> c_;

    friend Series inv_derive(const Series&, Var);
    friend Series substitute_p(const Series&, Var, int);
};

// [p](S) = (1+S)^p - 1 truncated at `order`.
Series p_series(RingSpec ring, int order);

// (1+var) d/dvar; the top coefficient is consumed (valid order drops by one).
Series inv_derive(const Series& f, Var var);

// var := [p](var), truncated at out_order (default: the input's order).
// Exact because [p] has zero constant term.
Series substitute_p(const Series& f, Var var, int out_order = -1);

// g_0 of the decomposition f(S) = sum_i (1+S)^i g_i([p](S)) over the index
// set p*j + i <= valid order, solved exactly by mod-p digit extraction and
// Hensel lifting (the system is unimodular mod p since [p](S) = S^p mod p).
// Output truncated at floor(valid/p); no precision loss. On a two-variable
// series psi acts per T-slice in the S variable.
Series psi(const Series& f);

// All p components g_0..g_(p-1) (one-variable input), each as a series in
// the new variable X = [p](S).
std::vector<Series> psi_decompose(const Series& f);

// (1+S)^x = sum C(x,m) S^m for a scalar exponent supplied with
// v_p(order!) guard digits beyond the target capacity; each coefficient of
// the result is correct mod p^target_capacity.
Series binomial_exp(const PadicScalar& x, int order, int target_capacity);

// (1+S)^x for an integer exponent: Pascal recurrence mod p^capacity, exact
// with no guard digits.
Series binomial_exp_int(RingSpec ring, long long x, int order);

// e-fold inv_derive in the truncated-polynomial model, via binary
// exponentiation of the (order+1) x (order+1) matrix of the derivation.
// Coefficients past the valid order are zeroed first; the valid order is
// preserved.
Series inv_derive_power(const Series& f, unsigned __int128 e);

// k-fold inv_derive in `var` followed by var = 0; two-variable input,
// result in the remaining variable.
Series moment_extract(const Series& f, Var var, int k);

// One-variable version returning the ring element (d^k f)(0).
RingElement moment_extract_scalar(const Series& f, int k);

// C(n, m) for m <= order as exact residues mod p^capacity (Pascal rows;
// n may be negative via the reflection C(-a,m) = (-1)^m C(a+m-1,m)).
std::vector<PadicScalar> binomial_row_mod(std::uint32_t p, int capacity, long long n, int order);

// How far apart two series are: the valuation of their difference over the
// shared valid range, against the precision both sides actually carry.
struct SeriesDiff {
    bool zero_at_eff = false;
    int valuation = 0;    // exact, or the precision floor when lower_bound
    bool lower_bound = false;
    int eff = 0;
};

SeriesDiff series_discrepancy(const Series& a, const Series& b);

// Exact small binomial as a machine integer (arguments within 64-bit range).
std::uint64_t binom_u64(unsigned n, unsigned k);

} // namespace amice
