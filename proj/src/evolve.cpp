#include "wavemaplab/evolve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wml {

namespace {

Real ipow(Real base, int n) {
    Real acc = 1.0;
    for (int e = n; e > 0; --e) acc *= base;
    return acc;
}

int monitor_order(const ModelParams& params) { return std::min(params.k, 4); }

}  // namespace

EvolutionState profile_state(const RadialGrid& grid, Real a, Real b, int p) {
    if (p < 0)
        throw std::invalid_argument("profile_state: p must be >= 0");
    const int n = int(grid.nodes.size());
    EvolutionState st;
    st.s = 0.0;
    st.q1.resize(n);
    st.q2.resize(n);
    for (int j = 0; j < n; ++j) {
        const Real shape = ipow(1.0 - grid.nodes(j) * grid.nodes(j), p);
        st.q1(j) = a * shape;
        st.q2(j) = b * shape;
    }
    return st;
}

EvolutionState state_from_q1_and_rate(const RadialGrid& grid, const ModelParams& params,
                                      const RadialField& q1, const RadialField& ds_q1) {
    EvolutionState st;
    st.s = 0.0;
    st.q1 = q1;
    st.q2 = ds_q1 + lambda_op(grid, q1) + Real(params.d - 2) * q1;
    return st;
}

void rhs(const RadialGrid& grid, const ModelParams& params, const EvolutionState& state,
         bool include_potential, bool include_nonlinearity,
         RadialField& dq1, RadialField& dq2) {
    if (grid.d != params.d)
        throw std::invalid_argument("rhs: grid dimension mismatch");
    const int d = params.d;
    dq1 = state.q2 - lambda_op(grid, state.q1) - Real(d - 2) * state.q1;
    dq2 = radial_laplacian(grid, state.q1) - lambda_op(grid, state.q2) - Real(d - 1) * state.q2;
    if (include_potential) {
        for (int j = 0; j < state.q1.size(); ++j)
            dq2(j) -= potential_v(grid.nodes(j), d) * state.q1(j);
    }
    if (include_nonlinearity) {
        for (int j = 0; j < state.q1.size(); ++j)
            dq2(j) -= weighted_remainder(grid.nodes(j), state.q1(j), d);
    }
}

EvolutionState rk4_step(const RadialGrid& grid, const ModelParams& params,
                        const EvolutionState& state, Real ds,
                        bool include_potential, bool include_nonlinearity) {
    if (ds <= 0.0)
        throw std::invalid_argument("rk4_step: ds must be positive");
    RadialField k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
    EvolutionState tmp;
    rhs(grid, params, state, include_potential, include_nonlinearity, k1a, k1b);
    tmp.s = state.s + 0.5 * ds;
    tmp.q1 = state.q1 + 0.5 * ds * k1a;
    tmp.q2 = state.q2 + 0.5 * ds * k1b;
    rhs(grid, params, tmp, include_potential, include_nonlinearity, k2a, k2b);
    tmp.q1 = state.q1 + 0.5 * ds * k2a;
    tmp.q2 = state.q2 + 0.5 * ds * k2b;
    rhs(grid, params, tmp, include_potential, include_nonlinearity, k3a, k3b);
    tmp.s = state.s + ds;
    tmp.q1 = state.q1 + ds * k3a;
    tmp.q2 = state.q2 + ds * k3b;
    rhs(grid, params, tmp, include_potential, include_nonlinearity, k4a, k4b);
    EvolutionState next;
    next.s = state.s + ds;
    next.q1 = state.q1 + (ds / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    next.q2 = state.q2 + (ds / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    return next;
}

Real monitor_norm(const RadialGrid& grid, const ModelParams& params, const EvolutionState& state) {
    const int k = monitor_order(params);
    const Real n1 = sobolev_norm(grid, state.q1, k);
    const Real n2 = sobolev_norm(grid, state.q2, k - 1);
    return std::sqrt(n1 * n1 + n2 * n2);
}

namespace {

TimeSeriesRow make_row(const RadialGrid& grid, const ModelParams& params,
                       const EvolutionState& state, Real s0_energy) {
    const int k = monitor_order(params);
    TimeSeriesRow row;
    row.s = state.s;
    row.norm_q1 = sobolev_norm(grid, state.q1, k);
    row.norm_q2 = sobolev_norm(grid, state.q2, k - 1);
    row.center_amp = center_amplitude(params, state);
    row.local_energy = local_energy(grid, params, state, s0_energy);
    return row;
}

bool row_bad(const TimeSeriesRow& row, Real threshold) {
    const bool finite = std::isfinite(row.norm_q1) && std::isfinite(row.norm_q2);
    return !finite || row.norm_q1 > threshold || row.norm_q2 > threshold;
}

}  // namespace

TimeSeries evolve(const RadialGrid& grid, const EvolutionConfig& config,
                  const EvolutionState& initial) {
    if (config.s_max <= 0.0)
        throw std::invalid_argument("evolve: s_max must be positive");
    if (initial.q1.size() != grid.nodes.size() || initial.q2.size() != grid.nodes.size())
        throw std::invalid_argument("evolve: initial data not on the configured grid");

    // Land exactly on s_max with a step as close as possible to the configured one.
    const long n_steps = std::max(1L, std::lround(config.s_max / config.step()));
    const Real h = config.s_max / Real(n_steps);
    const int stride = config.record_stride();
    const Real s0_energy = config.s_max + 1.0;

    TimeSeries out;
    out.d = config.params.d;
    out.k = config.params.k;
    out.N = config.N;
    out.ds = h;
    out.verdict = "completed";

    EvolutionState state = initial;
    out.rows.push_back(make_row(grid, config.params, state, s0_energy));
    if (row_bad(out.rows.back(), config.blowup_threshold)) {
        out.rows.back().blowup = true;
        out.verdict = "blowup";
        out.final_state = state;
        return out;
    }

    for (long step = 1; step <= n_steps; ++step) {
        state = rk4_step(grid, config.params, state, h,
                         config.include_potential, config.include_nonlinearity);
        state.s = Real(step) * h;  // avoid accumulated drift in the slice label
        if (step % stride == 0 || step == n_steps) {
            out.rows.push_back(make_row(grid, config.params, state, s0_energy));
            if (row_bad(out.rows.back(), config.blowup_threshold)) {
                out.rows.back().blowup = true;
                out.verdict = "blowup";
                break;
            }
        }
    }
    out.final_state = state;
    return out;
}

TimeSeries evolve(const EvolutionConfig& config, const EvolutionState& initial) {
    const RadialGrid grid(config.N, config.params.d);
    return evolve(grid, config, initial);
}

Real center_amplitude(const ModelParams& params, const EvolutionState& state) {
    return 2.0 / std::sqrt(Real(params.d - 4)) + state.q1(state.q1.size() - 1);
}

std::vector<PhysicalSample> physical_field(const ModelParams& params, const RadialGrid& grid,
                                           const EvolutionState& state) {
    const int n = int(grid.nodes.size());
    const Real es = std::exp(state.s);
    std::vector<PhysicalSample> out(n);
    for (int j = 0; j < n; ++j) {
        const Real y = grid.nodes(j);
        const Real u2 = 1.0 - y * y;
        if (u2 == 0.0) {
            const Real inf = std::numeric_limits<Real>::infinity();
            out[j] = {inf, inf, 0.0};
            continue;
        }
        Real wrec = 1.0;
        for (int e = (params.d - 3) / 2; e > 0; --e) wrec *= u2;
        const Real u = u2 / es * (w_star_fhsc(y, params.d) + wrec * state.q1(j));
        out[j] = {es / u2, es / u2 * y, u};
    }
    return out;
}

Real local_energy(const RadialGrid& grid, const ModelParams& params,
                  const EvolutionState& state, Real s0) {
    if (state.s >= s0)
        throw std::domain_error("local_energy: requires s < s0");
    const Real R = 1.0 - std::exp(state.s - s0);
    const Vector d1 = derivative(grid, state.q1, 1);
    const int n = int(grid.nodes.size());

    Real cell = 0.0;  // cutoff width: two grid cells at R
    if (R < 1.0) {
        int idx = 0;
        while (idx < n && grid.nodes(idx) > R) ++idx;
        const Real above = (idx > 0) ? grid.nodes(idx - 1) : 1.0;
        const Real below = (idx < n) ? grid.nodes(idx) : 0.0;
        cell = 2.0 * std::max(above - below, 1e-12);
    }

    Real acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const Real r = grid.nodes(j);
        Real c = 1.0;
        if (R < 1.0) {
            if (r >= R)
                c = 0.0;
            else if (r > R - cell) {
                const Real x = (R - r) / cell;
                c = x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
            }
        }
        const Real g = d1(j) * d1(j) + state.q1(j) * state.q1(j) + state.q2(j) * state.q2(j);
        acc += grid.quad_weights(j) * c * g;
    }
    const Real scale = std::exp(Real(params.d - 2) * state.s);
    return scale * scale * acc;
}

Real fit_decay_rate(const TimeSeries& series, Real s_lo, Real s_hi, SeriesColumn column) {
    auto pick = [column](const TimeSeriesRow& row) {
        switch (column) {
            case SeriesColumn::norm_q1: return row.norm_q1;
            case SeriesColumn::norm_q2: return row.norm_q2;
            case SeriesColumn::center_amp: return row.center_amp;
            default: return row.local_energy;
        }
    };
    std::vector<Real> ss, ll;
    for (const auto& row : series.rows) {
        if (row.s < s_lo || row.s > s_hi) continue;
        const Real v = pick(row);
        if (!(v > 0.0))
            throw std::domain_error("fit_decay_rate: nonpositive value in window");
        ss.push_back(row.s);
        ll.push_back(std::log(v));
    }
    if (ss.size() < 10)
        throw std::domain_error("fit_decay_rate: fewer than 10 samples in window");
    Real sm = 0.0, lm = 0.0;
    for (size_t i = 0; i < ss.size(); ++i) {
        sm += ss[i];
        lm += ll[i];
    }
    sm /= Real(ss.size());
    lm /= Real(ss.size());
    Real num = 0.0, den = 0.0;
    for (size_t i = 0; i < ss.size(); ++i) {
        num += (ss[i] - sm) * (ll[i] - lm);
        den += (ss[i] - sm) * (ss[i] - sm);
    }
    return num / den;
}

}  // namespace wml
