#include "amice/polylog.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace amice {

MeasureSeries apply_restriction(const MeasureSeries& theta, RestrictionMode mode) {
    return mode == RestrictionMode::units ? restrict_units(theta) : stabilize(theta);
}

MomentGrid::MomentGrid(RingSpec ring, int level, int order_s)
    : ring_(ring), level_(level), order_s_(order_s) {
    if (level < 0) throw domain_error("grid level must be >= 0");
    cells_.assign(tri_size(level), Series::zero(ring, 1, order_s));
}

std::size_t MomentGrid::tri_size(int level) {
    return static_cast<std::size_t>(level + 1) * static_cast<std::size_t>(level + 2) / 2;
}

std::size_t MomentGrid::idx(int k, int l) const {
    if (k < 0 || l < 0 || k + l > level_) throw domain_error("grid index out of range");
    // row k holds level - k + 1 entries
    std::size_t off = static_cast<std::size_t>(k) * static_cast<std::size_t>(level_ + 1) -
                      static_cast<std::size_t>(k) * static_cast<std::size_t>(k - 1) / 2;
    return off + static_cast<std::size_t>(l);
}

const Series& MomentGrid::at(int k, int l) const { return cells_[idx(k, l)]; }

void MomentGrid::set(int k, int l, Series s) { cells_[idx(k, l)] = std::move(s); }

MomentGrid MomentGrid::transition() const {
    if (level_ == 0) throw domain_error("transition: level is already 0");
    MomentGrid g(ring_, level_ - 1, order_s_);
    g.set_source(source_);
    for (int k = 0; k < level_; ++k)
        for (int l = 0; k + l < level_; ++l) g.set(k, l, at(k, l));
    return g;
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int n = std::min(workers, count);
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

Series g_series(const MeasureSeries& theta, int k, RestrictionMode mode) {
    if (theta.arity() != 2) throw domain_error("g_series: two-variable measure required");
    MeasureSeries restricted = apply_restriction(theta, mode);
    return moment_extract(restricted.series, Var::T, k);
}

namespace {

long long factorial_ll(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Series closed_cell(const Series& gk, int l, Provenance prov) {
    MeasureSeries gm{gk, prov, {}};
    Series cell = divide_by_x(gm, l + 1).series;
    long long scale = factorial_ll(l);
    if (l % 2 != 0) scale = -scale;
    return cell.mul_int(scale);
}

} // namespace

Series moment_closed(const MeasureSeries& theta, int k, int l, RestrictionMode mode) {
    return closed_cell(g_series(theta, k, mode), l, theta.provenance);
}

MomentGrid moment_grid_closed(const MeasureSeries& theta, int level, RestrictionMode mode,
                              int workers) {
    if (theta.arity() != 2) throw domain_error("moment grid: two-variable measure required");
    MeasureSeries restricted = apply_restriction(theta, mode);
    MomentGrid grid(theta.ring(), level, theta.series.order(Var::S));
    grid.set_source("closed-form");
    std::vector<std::vector<Series>> columns(static_cast<std::size_t>(level) + 1);
    parallel_for(level + 1, workers, [&](int k) {
        Series gk = moment_extract(restricted.series, Var::T, k);
        std::vector<Series> col;
        for (int l = 0; k + l <= level; ++l)
            col.push_back(closed_cell(gk, l, theta.provenance));
        columns[static_cast<std::size_t>(k)] = std::move(col);
    });
    for (int k = 0; k <= level; ++k)
        for (int l = 0; k + l <= level; ++l)
            grid.set(k, l, std::move(columns[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]));
    return grid;
}

MomentGrid moment_grid_ode(const MeasureSeries& theta, int level, RestrictionMode mode,
                           int workers) {
    if (theta.arity() != 2) throw domain_error("moment grid: two-variable measure required");
    MeasureSeries restricted = apply_restriction(theta, mode);
    MomentGrid grid(theta.ring(), level, theta.series.order(Var::S));
    grid.set_source("ode");
    std::vector<std::vector<Series>> columns(static_cast<std::size_t>(level) + 1);
    parallel_for(level + 1, workers, [&](int k) {
        Series gk = moment_extract(restricted.series, Var::T, k);
        std::vector<Series> col;
        Series cur = antiderive_trace_zero(gk);
        col.push_back(cur);
        for (int l = 1; k + l <= level; ++l) {
            cur = antiderive_trace_zero(cur.mul_int(-l));
            col.push_back(cur);
        }
        columns[static_cast<std::size_t>(k)] = std::move(col);
    });
    for (int k = 0; k <= level; ++k)
        for (int l = 0; k + l <= level; ++l)
            grid.set(k, l, std::move(columns[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]));
    return grid;
}

CrossCheckReport cross_check(const MeasureSeries& theta, int level, RestrictionMode mode,
                             int workers) {
    CrossCheckReport rep;
    rep.level = level;
    MomentGrid closed = moment_grid_closed(theta, level, mode, workers);
    MomentGrid ode = moment_grid_ode(theta, level, mode, workers);

    rep.solver_agreement = true;
    rep.worst_lower_bound = true;
    rep.worst_valuation = theta.ring().capacity;
    for (int k = 0; k <= level; ++k)
        for (int l = 0; k + l <= level; ++l) {
            SeriesDiff d = series_discrepancy(closed.at(k, l), ode.at(k, l));
            GridCellReport cell{k, l, d.valuation, d.lower_bound, d.eff, d.zero_at_eff};
            if (!d.zero_at_eff) {
                rep.solver_agreement = false;
                if (rep.worst_lower_bound || d.valuation < rep.worst_valuation) {
                    rep.worst_valuation = d.valuation;
                    rep.worst_lower_bound = false;
                }
            } else {
                rep.worst_valuation = std::min(rep.worst_valuation, d.valuation);
            }
            rep.cells.push_back(cell);
        }

    // Re-verify the defining identities on the closed-form grid.
    MeasureSeries restricted = apply_restriction(theta, mode);
    rep.ode_identities = true;
    rep.trace_zero = true;
    for (int k = 0; k <= level; ++k) {
        Series gk = moment_extract(restricted.series, Var::T, k);
        for (int l = 0; k + l <= level; ++l) {
            const Series& cell = closed.at(k, l);
            Series lhs = inv_derive(cell, Var::S);
            Series rhs = l == 0 ? gk : closed.at(k, l - 1).mul_int(-l);
            rhs.set_valid(Var::S, lhs.valid(Var::S));
            if (!series_discrepancy(lhs, rhs).zero_at_eff) rep.ode_identities = false;
            if (!psi(cell).is_zero()) rep.trace_zero = false;
        }
    }
    rep.pass = rep.solver_agreement && rep.ode_identities && rep.trace_zero;
    return rep;
}

} // namespace amice
