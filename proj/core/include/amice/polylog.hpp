#pragma once

#include <functional>

#include "amice/measures.hpp"

namespace amice {

// How a two-variable measure is restricted to units in the x variable:
// `units` is the generic projection f - phi(psi(f)); `stabilized` is the
// Frobenius-twisted formula theta - sigma(theta)([p](S), T), valid for
// measures with the twisted-pushforward structure.
enum class RestrictionMode { units, stabilized };

MeasureSeries apply_restriction(const MeasureSeries& theta, RestrictionMode mode);

// Triangular table of moment functions e_(k,l)(s), k+l <= level.
class MomentGrid {
  public:
    MomentGrid(RingSpec ring, int level, int order_s);

    const RingSpec& ring() const { return ring_; }
    int level() const { return level_; }
    int order_s() const { return order_s_; }
    const std::string& source() const { return source_; }
    void set_source(std::string s) { source_ = std::move(s); }

    const Series& at(int k, int l) const;
    void set(int k, int l, Series s);

    // Drop the k+l = level entries; the level-(n-1) grid.
    MomentGrid transition() const;

    static std::size_t tri_size(int level);

  private:
    std::size_t idx(int k, int l) const;

    RingSpec ring_;
    int level_;
    int order_s_;
    std::string source_;
    std::vector<Series> cells_;
};

// g_k(S) = k-th T-moment of the restricted transform: the y^k-weighted
// unit-restricted measure.
Series g_series(const MeasureSeries& theta, int k, RestrictionMode mode);

// e_(k,l)(s) = (-1)^l l! x^(-(l+1))-division of g_k: the closed form, exact.
Series moment_closed(const MeasureSeries& theta, int k, int l, RestrictionMode mode);

// Closed-form grid for all k+l <= level. Distinct k-columns are independent;
// `workers` > 1 computes them concurrently with deterministic assembly.
MomentGrid moment_grid_closed(const MeasureSeries& theta, int level, RestrictionMode mode,
                              int workers = 1);

// The same grid through the differential system
//   d e_(k,0) = g_k,   d e_(k,l) = -l e_(k,l-1),
// each solve normalized by psi = 0. The coefficient recursion divides by
// m+1, so inputs must carry guard digits; exists to cross-check the closed
// form.
MomentGrid moment_grid_ode(const MeasureSeries& theta, int level, RestrictionMode mode,
                           int workers = 1);

struct GridCellReport {
    int k = 0, l = 0;
    int discrepancy_valuation = 0;
    bool lower_bound = false; // discrepancy is zero at the shared precision
    int eff = 0;
    bool ok = false;
};

struct CrossCheckReport {
    bool pass = false;
    bool solver_agreement = false; // closed == ode entrywise
    bool ode_identities = false;   // d e_(k,0) = g_k and d e_(k,l) = -l e_(k,l-1)
    bool trace_zero = false;       // psi(e_(k,l)) = 0 on every entry
    int level = 0;
    int worst_valuation = 0;
    bool worst_lower_bound = true;
    std::vector<GridCellReport> cells;
};

// Compare the two solvers entrywise and re-verify the defining identities on
// the closed-form grid. Passing means every discrepancy valuation reaches
// the effective precision.
CrossCheckReport cross_check(const MeasureSeries& theta, int level, RestrictionMode mode,
                             int workers = 1);

// Deterministic worker pool over [0, count); exceptions propagate.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

} // namespace amice
