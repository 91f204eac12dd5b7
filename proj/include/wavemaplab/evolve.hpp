#pragma once

#include <string>
#include <vector>

#include "wavemaplab/grid.hpp"
#include "wavemaplab/model.hpp"

// Nonlinear flow in the boundary-weighted variable pair (q1,q2). In these
// variables every coefficient of the first-order system is smooth on the
// closed ball and the weighted norm is a plain discrete Sobolev norm:
//   q1' = q2 - Lambda q1 - (d-2) q1
//   q2' = Lap q1 - Lambda q2 - (d-1) q2 - V q1 - W N(W^{-1} q1)
// with the potential and nonlinear terms switchable.

namespace wml {

struct EvolutionState {
    Real s = 0.0;
    RadialField q1;
    RadialField q2;
};

struct EvolutionConfig {
    ModelParams params;
    int N = 48;
    Real ds = 0.0;         // <= 0 selects the default 0.5/N^2
    Real s_max = 20.0;
    int record_every = 0;  // <= 0 selects the default 50
    bool include_potential = true;
    bool include_nonlinearity = true;
    Real blowup_threshold = 1e6;

    explicit EvolutionConfig(ModelParams p) : params(p) {}
    Real step() const { return ds > 0.0 ? ds : 0.5 / (Real(N) * Real(N)); }
    int record_stride() const { return record_every > 0 ? record_every : 50; }
};

struct TimeSeriesRow {
    Real s;
    Real norm_q1;       // order-k monitoring norm of q1
    Real norm_q2;       // order-(k-1) monitoring norm of q2
    Real center_amp;    // t u(t,0) on the slice
    Real local_energy;
    bool blowup = false;
};

struct TimeSeries {
    std::vector<TimeSeriesRow> rows;
    std::string verdict;  // "completed" or "blowup"
    int d = 0, k = 0, N = 0;
    Real ds = 0.0;
    EvolutionState final_state;

    bool blew_up() const { return verdict == "blowup"; }
};

enum class SeriesColumn { norm_q1, norm_q2, center_amp, local_energy };

// Initial data family q1 = a (1-r^2)^p, q2 = b (1-r^2)^p, s = 0.
EvolutionState profile_state(const RadialGrid& grid, Real a, Real b, int p);

// Data conversion for callers supplying (q1, d/ds q1): q2 = ds_q1 + Lambda q1 + (d-2) q1.
EvolutionState state_from_q1_and_rate(const RadialGrid& grid, const ModelParams& params,
                                      const RadialField& q1, const RadialField& ds_q1);

// Right-hand side of the first-order system.
void rhs(const RadialGrid& grid, const ModelParams& params, const EvolutionState& state,
         bool include_potential, bool include_nonlinearity,
         RadialField& dq1, RadialField& dq2);

EvolutionState rk4_step(const RadialGrid& grid, const ModelParams& params,
                        const EvolutionState& state, Real ds,
                        bool include_potential, bool include_nonlinearity);

// sqrt(|q1|_{H^k}^2 + |q2|_{H^{k-1}}^2) with derivative order capped at 4.
Real monitor_norm(const RadialGrid& grid, const ModelParams& params, const EvolutionState& state);

// Steps to s_max recording observables; aborts with a blowup verdict (data,
// not an exception) when a norm exceeds the threshold or turns non-finite.
TimeSeries evolve(const RadialGrid& grid, const EvolutionConfig& config,
                  const EvolutionState& initial);
TimeSeries evolve(const EvolutionConfig& config, const EvolutionState& initial);

// t u(t,0) on the slice: 2/sqrt(d-4) + q1(r=0).
Real center_amplitude(const ModelParams& params, const EvolutionState& state);

struct PhysicalSample {
    Real t;
    Real x_norm;
    Real u;
};

// u = (1-y^2) e^{-s} (w*(y) + W^{-1}(y) q1(y)) paired with the Cartesian
// image of each node; the boundary node maps to t = x = infinity with u = 0.
std::vector<PhysicalSample> physical_field(const ModelParams& params, const RadialGrid& grid,
                                           const EvolutionState& state);

// Energy of (f1,f2) = e^{(d-2)s}(q1,q2) over the shrinking ball of radius
// R(s) = 1 - e^{s-s0}, with a quintic cutoff over the last two grid cells.
// Requires state.s < s0; s0 = infinity integrates over the whole ball.
Real local_energy(const RadialGrid& grid, const ModelParams& params,
                  const EvolutionState& state, Real s0);

// Least-squares slope of log(column) over recorded s in [s_lo, s_hi].
// Requires at least 10 samples in the window, all positive.
Real fit_decay_rate(const TimeSeries& series, Real s_lo, Real s_hi, SeriesColumn column);

}  // namespace wml
