#pragma once

#include <string>
#include <vector>

#include "wavemaplab/types.hpp"

// Command-line orchestration: `wavemaplab <verify|evolve|spectrum|modes|sweep>`
// with flags overriding config-file values overriding defaults.

namespace wml {

struct RunConfig {
    std::string command;
    int d = 5;
    int k = 0;       // 0 selects (d+1)/2
    int N = 48;
    Real ds = 0.0;   // 0 selects 0.5/N^2
    Real s_max = 20.0;
    std::vector<Real> amplitudes{1e-3};
    int p = 2;
    std::string out = "wavemaplab";
    unsigned long long seed = 12345;
    int record_every = 0;  // 0 selects 50
    Real mu_min = -50.0;
    int mu_samples = 200;
    Real tolerance_scale = 1.0;  // verify test hook

    int effective_k() const { return k > 0 ? k : (d + 1) / 2; }
};

// Parses argv-style arguments (without the program name). Throws
// std::invalid_argument with a message naming the violated constraint.
RunConfig parse_config(const std::vector<std::string>& args);

int cmd_verify(const RunConfig& config);
int cmd_evolve(const RunConfig& config);
int cmd_spectrum(const RunConfig& config);
int cmd_modes(const RunConfig& config);
int cmd_sweep(const RunConfig& config);

// Full entry point: parse + dispatch; maps usage errors to exit code 2.
int run_cli(int argc, char** argv);

struct SweepRow {
    Real amplitude;
    std::string verdict;  // "decay" or "growth-or-blowup"
    Real delta_hat;       // NaN when undefined (no positive window)
    Real center_amp;
};

std::vector<SweepRow> run_sweep(const RunConfig& config);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace wml
