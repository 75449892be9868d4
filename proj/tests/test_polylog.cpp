#include <doctest.h>

#include <random>

#include "amice/polylog.hpp"

using namespace amice;

namespace {

MeasureSeries theta_at(RingSpec ring, long long x, long long y, int ns, int nt) {
    DiracCombination d(ring, 2);
    d.add_int(x, y, 1);
    return amice_transform(d, ns, nt);
}

long long fact(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

TEST_CASE("g_series") {
    RingSpec r3 = RingSpec::plain(3, 3);
    MeasureSeries theta = theta_at(r3, 1, 2, 8, 4);
    Series g1 = g_series(theta, 1, RestrictionMode::units);
    CHECK(series_discrepancy(g1, binomial_exp_int(r3, 1, 8).mul_int(2)).zero_at_eff);
    Series g0 = g_series(theta, 0, RestrictionMode::units);
    CHECK(series_discrepancy(g0, binomial_exp_int(r3, 1, 8)).zero_at_eff);

    MeasureSeries dead = theta_at(r3, 3, 1, 8, 4);
    for (int k = 0; k <= 3; ++k)
        CHECK(g_series(dead, k, RestrictionMode::units).is_zero());
}

TEST_CASE("moment_closed on Dirac data") {
    RingSpec r3 = RingSpec::plain(3, 3);
    MeasureSeries unit = theta_at(r3, 1, 1, 8, 4);
    for (int k = 0; k <= 2; ++k)
        for (int l = 0; k + l <= 2; ++l) {
            Series cell = moment_closed(unit, k, l, RestrictionMode::units);
            long long scale = (l % 2 ? -1 : 1) * fact(l);
            Series expect = binomial_exp_int(r3, 1, 8).mul_int(scale);
            CHECK(series_discrepancy(cell, expect).zero_at_eff);
        }

    RingSpec r5 = RingSpec::plain(5, 2);
    Series cell = moment_closed(theta_at(r5, 2, 3, 8, 4), 1, 1, RestrictionMode::units);
    // -1 * 1! * 3 * 2^-2 = 18 mod 25
    CHECK(series_discrepancy(cell, binomial_exp_int(r5, 2, 8).mul_int(18)).zero_at_eff);

    Series cell2 = moment_closed(theta_at(r5, 1, 2, 8, 4), 1, 2, RestrictionMode::units);
    CHECK(series_discrepancy(cell2, binomial_exp_int(r5, 1, 8).mul_int(4)).zero_at_eff);
}

TEST_CASE("ode grid matches the closed form on a Dirac") {
    // run at guard capacity so the m+1 divisions keep three digits at the end
    int target = 3, level = 2, N = 6;
    int guard = (level + 1) * vp_factorial(3, N);
    RingSpec ring = RingSpec::plain(3, target + guard);
    MeasureSeries theta = theta_at(ring, 1, 1, N, level + 1);
    MomentGrid ode = moment_grid_ode(theta, level, RestrictionMode::units);
    for (int k = 0; k <= level; ++k)
        for (int l = 0; k + l <= level; ++l) {
            CHECK(ode.at(k, l).min_eff() >= target);
            long long scale = (l % 2 ? -1 : 1) * fact(l);
            Series expect = binomial_exp_int(ring, 1, N).mul_int(scale);
            CHECK(series_discrepancy(ode.at(k, l), expect).zero_at_eff);
        }

    MeasureSeries zero{Series::zero(ring, 2, N, level + 1), Provenance::raw, {}};
    MomentGrid zg = moment_grid_ode(zero, level, RestrictionMode::units);
    for (int k = 0; k <= level; ++k)
        for (int l = 0; k + l <= level; ++l) CHECK(zg.at(k, l).is_zero());
}

TEST_CASE("cross_check passes on unit Dirac data and flags perturbations") {
    int target = 2, level = 3, N = 8;
    int guard = (level + 1) * vp_factorial(2, N);
    RingSpec ring = RingSpec::plain(2, target + guard);
    DiracCombination d(ring, 2);
    d.add_int(1, 2, 1);
    d.add_int(3, 1, 2);
    MeasureSeries theta = amice_transform(d, N, level + 1);
    CrossCheckReport rep = cross_check(theta, level, RestrictionMode::units);
    CHECK(rep.pass);
    CHECK(rep.solver_agreement);
    CHECK(rep.ode_identities);
    CHECK(rep.trace_zero);

    // adding a constant to a cell breaks exactly the trace-zero condition
    Series cell = moment_closed(theta, 0, 0, RestrictionMode::units);
    Series bumped = cell;
    bumped.set(0, bumped.at(0) + RingElement::one(ring));
    Series w = psi(bumped);
    CHECK(!w.is_zero());
    CHECK(w.at(0).scalar().residue() == 1);
    CHECK(psi(cell).is_zero());

    // and the level-0 check degenerates to the single equation + trace zero
    CrossCheckReport rep0 = cross_check(theta, 0, RestrictionMode::units);
    CHECK(rep0.pass);
}

TEST_CASE("grid transition drops the top antidiagonal") {
    RingSpec ring = RingSpec::plain(5, 2);
    MeasureSeries theta = theta_at(ring, 2, 3, 8, 5);
    MomentGrid g4 = moment_grid_closed(theta, 4, RestrictionMode::units);
    MomentGrid g3 = moment_grid_closed(theta, 3, RestrictionMode::units);
    MomentGrid t = g4.transition();
    CHECK(t.level() == 3);
    for (int k = 0; k <= 3; ++k)
        for (int l = 0; k + l <= 3; ++l)
            CHECK(series_discrepancy(t.at(k, l), g3.at(k, l)).zero_at_eff);
}

TEST_CASE("worker count does not change the grid") {
    RingSpec ring = RingSpec::plain(3, 3);
    DiracCombination d(ring, 2);
    d.add_int(1, 1, 1);
    d.add_int(2, 3, -4);
    MeasureSeries theta = amice_transform(d, 9, 5);
    MomentGrid serial = moment_grid_closed(theta, 4, RestrictionMode::units, 1);
    MomentGrid pooled = moment_grid_closed(theta, 4, RestrictionMode::units, 4);
    for (int k = 0; k <= 4; ++k)
        for (int l = 0; k + l <= 4; ++l) {
            CHECK(series_discrepancy(serial.at(k, l), pooled.at(k, l)).zero_at_eff);
            CHECK(serial.at(k, l).min_eff() == pooled.at(k, l).min_eff());
        }
}
