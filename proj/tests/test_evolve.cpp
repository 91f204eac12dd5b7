#include <cmath>

#include "doctest.h"
#include "wavemaplab/evolve.hpp"
#include "wavemaplab/kernels.hpp"

using namespace wml;

namespace {

EvolutionState constant_state(const RadialGrid& grid, Real a, Real b) {
    EvolutionState st;
    st.s = 0.0;
    st.q1 = Vector::Constant(grid.nodes.size(), a);
    st.q2 = Vector::Constant(grid.nodes.size(), b);
    return st;
}

}  // namespace

TEST_CASE("rhs: exact eigenvectors of the free generator and the fixed point") {
    for (int d : {5, 7}) {
        const ModelParams params(d);
        const RadialGrid grid(16, d);
        RadialField dq1, dq2;

        // (1,0) constants: eigenvalue -(d-2)
        auto st = constant_state(grid, 1.0, 0.0);
        rhs(grid, params, st, false, false, dq1, dq2);
        CHECK((dq1 + Real(d - 2) * st.q1).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(dq2.cwiseAbs().maxCoeff() < 1e-12);

        // (1,-1) constants: eigenvalue -(d-1)
        st = constant_state(grid, 1.0, -1.0);
        rhs(grid, params, st, false, false, dq1, dq2);
        CHECK((dq1 + Real(d - 1) * st.q1).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((dq2 + Real(d - 1) * st.q2).cwiseAbs().maxCoeff() < 1e-12);

        // the origin is a fixed point of the full flow
        st = constant_state(grid, 0.0, 0.0);
        rhs(grid, params, st, true, true, dq1, dq2);
        CHECK(dq1.cwiseAbs().maxCoeff() == 0.0);
        CHECK(dq2.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("rhs: linearity with the nonlinearity off") {
    // scale by a power of two so input rounding does not pollute the check
    const ModelParams params(5);
    const RadialGrid grid(24, 5);
    auto st = profile_state(grid, 0.37, -0.12, 2);
    auto st2 = st;
    st2.q1 *= 2.0;
    st2.q2 *= 2.0;
    RadialField a1, a2, b1, b2;
    rhs(grid, params, st, true, false, a1, a2);
    rhs(grid, params, st2, true, false, b1, b2);
    CHECK((b1 - 2.0 * a1).cwiseAbs().maxCoeff() < 1e-12 * a1.cwiseAbs().maxCoeff());
    CHECK((b2 - 2.0 * a2).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, a2.cwiseAbs().maxCoeff()));
}

TEST_CASE("rk4: eigenpair integration and convergence order") {
    const ModelParams params(5);
    const RadialGrid grid(16, 5);

    auto run = [&](Real ds, Real s_end) {
        auto st = constant_state(grid, 1.0, 0.0);
        const long n = std::lround(s_end / ds);
        for (long i = 0; i < n; ++i)
            st = rk4_step(grid, params, st, ds, false, false);
        return st;
    };

    const Real exact = std::exp(-3.0 * 0.5);
    const Real err1 = std::abs(run(1e-2, 0.5).q1(0) - exact);
    const Real err2 = std::abs(run(5e-3, 0.5).q1(0) - exact);
    CHECK(err1 / err2 == doctest::Approx(16.0).epsilon(0.25));

    // zero state stays zero
    auto z = constant_state(grid, 0.0, 0.0);
    z = rk4_step(grid, params, z, 1e-2, true, true);
    CHECK(z.q1.cwiseAbs().maxCoeff() == 0.0);

    // free flow from (1,0) reaches e^{-3} uniformly
    const RadialGrid g32(32, 5);
    auto st = constant_state(g32, 1.0, 0.0);
    const Real ds = 0.5 / (32.0 * 32.0);
    const long n = std::lround(1.0 / ds);
    for (long i = 0; i < n; ++i)
        st = rk4_step(g32, params, st, ds, false, false);
    Real worst = 0.0;
    for (int j = 0; j < st.q1.size(); ++j)
        worst = std::max(worst, std::abs(st.q1(j) - std::exp(-3.0 * Real(n) * ds)));
    CHECK(worst < 1e-8);
    CHECK(st.q2.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("evolve: zero data, recording, and free sharp decay") {
    ModelParams params(5);
    EvolutionConfig cfg(params);
    cfg.N = 32;
    cfg.s_max = 2.0;
    cfg.record_every = 64;
    cfg.include_potential = false;
    cfg.include_nonlinearity = false;
    const RadialGrid grid(cfg.N, 5);

    auto series = evolve(grid, cfg, constant_state(grid, 0.0, 0.0));
    CHECK(series.verdict == "completed");
    for (const auto& row : series.rows) {
        CHECK(row.norm_q1 == 0.0);
        CHECK(row.norm_q2 == 0.0);
    }
    for (size_t i = 1; i < series.rows.size(); ++i)
        CHECK(series.rows[i].s > series.rows[i - 1].s);

    auto free_series = evolve(grid, cfg, constant_state(grid, 1.0, 0.0));
    const Real norm0 = free_series.rows.front().norm_q1;
    Real worst = 0.0;
    for (const auto& row : free_series.rows)
        worst = std::max(worst, std::abs(row.norm_q1 / norm0 - std::exp(-3.0 * row.s)));
    CHECK(worst < 1e-8);
    CHECK(free_series.rows.back().s == doctest::Approx(2.0));

    const Real slope = fit_decay_rate(free_series, 0.0, 2.0, SeriesColumn::norm_q1);
    CHECK(slope == doctest::Approx(-3.0).epsilon(1e-6));
}

TEST_CASE("evolve: step and grid robustness for small smooth data") {
    const ModelParams params(5);
    auto run = [&](int N, Real ds) {
        EvolutionConfig cfg(params);
        cfg.N = N;
        cfg.ds = ds;
        cfg.s_max = 5.0;
        cfg.record_every = 1 << 20;  // only endpoints
        const RadialGrid grid(N, 5);
        return evolve(grid, cfg, profile_state(grid, 1e-3, 0.0, 2));
    };

    const Real base = run(48, 0.5 / (48.0 * 48.0)).rows.back().norm_q1;
    const Real half = run(48, 0.25 / (48.0 * 48.0)).rows.back().norm_q1;
    const Real fine = run(64, 0.5 / (64.0 * 64.0)).rows.back().norm_q1;
    CHECK(std::abs(half - base) / base < 1e-6);
    CHECK(std::abs(fine - base) / base < 1e-6);
}

TEST_CASE("center amplitude and physical field at zero perturbation") {
    const RadialGrid grid(16, 5);
    auto st = constant_state(grid, 0.0, 0.0);
    CHECK(center_amplitude(ModelParams(5), st) == doctest::Approx(2.0));
    CHECK(center_amplitude(ModelParams(9), st) == doctest::Approx(2.0 / std::sqrt(5.0)));

    st.s = 0.3;
    auto field = physical_field(ModelParams(5), grid, st);
    for (size_t j = 0; j < field.size(); ++j) {
        const Real y = grid.nodes(j);
        if (y == 1.0) {
            CHECK(field[j].u == 0.0);
            CHECK(std::isinf(field[j].t));
            continue;
        }
        CHECK(field[j].u == doctest::Approx(u_star(field[j].t, field[j].x_norm, 5)).epsilon(1e-12));
    }
    // s = 0, y = 0 maps to (t,x,u) = (1,0,2)
    st.s = 0.0;
    field = physical_field(ModelParams(5), grid, st);
    CHECK(field.back().t == doctest::Approx(1.0));
    CHECK(field.back().u == doctest::Approx(2.0));
}

TEST_CASE("local energy") {
    const ModelParams params(5);
    const RadialGrid grid(24, 5);
    const Real inf = std::numeric_limits<Real>::infinity();

    auto zero = constant_state(grid, 0.0, 0.0);
    CHECK(local_energy(grid, params, zero, 10.0) == 0.0);

    auto st = constant_state(grid, 1.0, 0.0);
    CHECK(local_energy(grid, params, st, inf) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK_THROWS_AS(local_energy(grid, params, st, -1.0), std::domain_error);

    // the cutoff energy is monotone in the domain radius
    const Real e_small = local_energy(grid, params, st, 0.5);
    const Real e_large = local_energy(grid, params, st, 5.0);
    CHECK(e_small < e_large);
    CHECK(e_large < 0.2 + 1e-12);
}

TEST_CASE("fit_decay_rate on synthetic columns") {
    TimeSeries series;
    for (int i = 0; i <= 40; ++i) {
        TimeSeriesRow row{};
        row.s = 0.1 * i;
        row.norm_q1 = std::exp(-2.0 * row.s);
        row.norm_q2 = 1.0;
        row.center_amp = 2.0;
        row.local_energy = 0.0;
        series.rows.push_back(row);
    }
    CHECK(fit_decay_rate(series, 0.0, 4.0, SeriesColumn::norm_q1) ==
          doctest::Approx(-2.0).epsilon(1e-8));
    CHECK(std::abs(fit_decay_rate(series, 0.0, 4.0, SeriesColumn::norm_q2)) < 1e-12);
    CHECK_THROWS_AS(fit_decay_rate(series, 0.0, 0.3, SeriesColumn::norm_q1), std::domain_error);
    CHECK_THROWS_AS(fit_decay_rate(series, 0.0, 4.0, SeriesColumn::local_energy), std::domain_error);
}

TEST_CASE("continuous dependence for one pair of nearby small data") {
    const ModelParams params(5);
    const RadialGrid grid(32, 5);
    EvolutionConfig cfg(params);
    cfg.N = 32;
    cfg.s_max = 5.0;
    cfg.record_every = 128;

    const auto f = profile_state(grid, 1e-3, 0.0, 2);
    const auto g = profile_state(grid, 1e-3 + 5e-5, 2e-5, 2);

    // evolve the difference by evolving both and subtracting at records
    EvolutionState sf = f, sg = g;
    const Real h = cfg.step();
    const long n = std::lround(cfg.s_max / h);
    Real dist0 = std::sqrt(std::pow(sobolev_norm(grid, f.q1 - g.q1, 3), 2) +
                           std::pow(sobolev_norm(grid, f.q2 - g.q2, 2), 2));
    Real worst = 1.0;
    for (long i = 0; i < n; ++i) {
        sf = rk4_step(grid, params, sf, h, true, true);
        sg = rk4_step(grid, params, sg, h, true, true);
        if (i % 128 == 0 || i == n - 1) {
            const Real dist = std::sqrt(std::pow(sobolev_norm(grid, sf.q1 - sg.q1, 3), 2) +
                                        std::pow(sobolev_norm(grid, sf.q2 - sg.q2, 2), 2));
            worst = std::max(worst, dist / dist0);
        }
    }
    CHECK(worst <= 10.0);
}

TEST_CASE("full nonlinear flow tracks the time-translated explicit solution") {
    // The time translate u(t,x) = u*(t+T,x) is an exact solution whose
    // perturbation against u* has admissible data for d = 5:
    //   q1(s,y) = -2 T arctanc(y T/D) / (e^s (1+y^2) + T (1-y^2)),
    // with D = t + T + t y^2, t = e^s/(1-y^2), and
    //   ds q1 = 2 t T / ((1-y^2) ((t+T)^2 + t^2 y^2)).
    const int d = 5;
    const Real T = 1.0;
    const ModelParams params(d);
    const RadialGrid grid(48, d);
    const int n = int(grid.nodes.size());

    auto q1_exact = [&](Real s, Real y) {
        const Real es = std::exp(s);
        const Real u = 1.0 - y * y;
        const Real den = es * (1.0 + y * y) + T * u;
        return -2.0 * T * arctan_over_id(y * T * u / den) / den;
    };
    auto ds_q1_exact = [&](Real s, Real y) {
        const Real es = std::exp(s);
        const Real u = 1.0 - y * y;
        const Real a = es + T * u;
        return 2.0 * es * T / (a * a + es * es * y * y);
    };

    Vector q1(n), dq1(n);
    for (int j = 0; j < n; ++j) {
        q1(j) = q1_exact(0.0, grid.nodes(j));
        dq1(j) = ds_q1_exact(0.0, grid.nodes(j));
    }
    EvolutionState st = state_from_q1_and_rate(grid, params, q1, dq1);

    const Real s_end = 1.0;
    const Real h = 0.5 / (48.0 * 48.0);
    const long steps = std::lround(s_end / h);
    for (long i = 0; i < steps; ++i)
        st = rk4_step(grid, params, st, h, true, true);

    Real worst = 0.0;
    for (int j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(st.q1(j) - q1_exact(s_end, grid.nodes(j))));
    CHECK(worst < 1e-6);
}

TEST_CASE("higher dimensions evolve and decay (capped monitoring order)") {
    // d = 7 uses order 4; d = 9 requires k = 5 but the monitor caps at 4.
    for (int d : {7, 9}) {
        const ModelParams params(d);
        EvolutionConfig cfg(params);
        cfg.N = 24;
        cfg.s_max = 2.0;
        cfg.record_every = 128;
        const RadialGrid grid(cfg.N, d);
        const auto series = evolve(grid, cfg, profile_state(grid, 1e-3, 0.0, 2));
        CHECK(series.verdict == "completed");
        CHECK(series.rows.back().norm_q1 < series.rows.front().norm_q1);
        CHECK(std::abs(series.rows.back().center_amp - 2.0 / std::sqrt(Real(d - 4))) < 1e-3);
    }
}

TEST_CASE("large data terminates with a blowup verdict instead of a NaN crash") {
    const ModelParams params(5);
    EvolutionConfig cfg(params);
    cfg.N = 24;
    cfg.s_max = 20.0;
    cfg.record_every = 16;
    const RadialGrid grid(cfg.N, 5);

    const auto series = evolve(grid, cfg, profile_state(grid, 10.0, 0.0, 2));
    CHECK(series.verdict == "blowup");
    for (const auto& row : series.rows) {
        if (row.blowup) break;
        CHECK(std::isfinite(row.norm_q1));
    }
}
