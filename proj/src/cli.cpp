#include "wavemaplab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "CLI11.hpp"
#include "wavemaplab/evolve.hpp"
#include "wavemaplab/io.hpp"
#include "wavemaplab/modes.hpp"
#include "wavemaplab/verify.hpp"

namespace wml {

namespace {

void add_common_options(CLI::App& app, RunConfig& cfg) {
    app.add_option("--d", cfg.d, "spatial dimension (odd)");
    app.add_option("--k", cfg.k, "norm order (default (d+1)/2)");
    app.add_option("--n", cfg.N, "grid resolution N");
    app.add_option("--ds", cfg.ds, "time step (default 0.5/N^2)");
    app.add_option("--smax", cfg.s_max, "final slice time");
    app.add_option("--amp", cfg.amplitudes, "initial amplitude(s)")->delimiter(',');
    app.add_option("--p", cfg.p, "profile exponent of (1-r^2)^p data");
    app.add_option("--out", cfg.out, "output path prefix");
    app.add_option("--seed", cfg.seed, "seed for randomized checks");
    app.add_option("--record-every", cfg.record_every, "record stride in steps");
    app.add_option("--mu-min", cfg.mu_min, "left end of the mu scan");
    app.add_option("--mu-samples", cfg.mu_samples, "number of mu samples");
    app.add_option("--tolerance-scale", cfg.tolerance_scale, "verify tolerance rescale (test hook)")
        ->group("");  // hidden
    app.set_config("--config", "", "config file (key = value lines)");
}

void validate(const RunConfig& cfg) {
    if (cfg.d % 2 == 0)
        throw std::invalid_argument("d must be odd");
    const int d_min = (cfg.command == "verify") ? 3 : 5;
    if (cfg.d < d_min)
        throw std::invalid_argument("d must be >= " + std::to_string(d_min) +
                                    (d_min == 3 ? " for verify" : ""));
    if (cfg.k > 0 && 2 * cfg.k <= cfg.d)
        throw std::invalid_argument("k must exceed d/2");
    if (cfg.N < 8)
        throw std::invalid_argument("N must be >= 8");
    if (cfg.ds < 0.0)
        throw std::invalid_argument("ds must be positive");
    if (cfg.s_max <= 0.0)
        throw std::invalid_argument("smax must be positive");
    if (cfg.p < 0)
        throw std::invalid_argument("p must be >= 0");
    if (cfg.amplitudes.empty())
        throw std::invalid_argument("at least one amplitude is required");
}

std::unique_ptr<CLI::App> build_app(RunConfig& cfg) {
    auto app = std::make_unique<CLI::App>("slow-decay wave map laboratory", "wavemaplab");
    app->require_subcommand(1);
    add_common_options(*app, cfg);
    for (const char* name : {"verify", "evolve", "spectrum", "modes", "sweep"}) {
        CLI::App* sub = app->add_subcommand(name);
        sub->fallthrough(true);
        sub->callback([&cfg, name]() { cfg.command = name; });
    }
    return app;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;
    auto app = build_app(cfg);
    // CLI11 parses right-to-left
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app->parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw std::invalid_argument(e.what());
    }
    validate(cfg);
    return cfg;
}

int cmd_verify(const RunConfig& config) {
    const auto items = run_verify(config.d, config.effective_k(), config.seed,
                                  config.tolerance_scale);
    bool all_pass = true;
    for (const auto& item : items) {
        std::printf("ITEM %s %s %s %s\n", item.name.c_str(), item.pass ? "PASS" : "FAIL",
                    format_double(item.measured).c_str(), format_double(item.tolerance).c_str());
        all_pass = all_pass && item.pass;
    }
    return all_pass ? 0 : 1;
}

int cmd_evolve(const RunConfig& config) {
    const ModelParams params(config.d, config.effective_k());
    EvolutionConfig ecfg(params);
    ecfg.N = config.N;
    ecfg.ds = config.ds;
    ecfg.s_max = config.s_max;
    ecfg.record_every = config.record_every;
    const RadialGrid grid(config.N, config.d);

    EvolutionState state = profile_state(grid, config.amplitudes.front(), 0.0, config.p);
    const TimeSeries series = evolve(grid, ecfg, state);

    std::ostringstream series_os, snap_os;
    write_time_series_csv(series_os, series);
    write_snapshot_csv(snap_os, grid, series.final_state, params, series.ds);
    write_text_file(config.out + ".series.csv", series_os.str());
    write_text_file(config.out + ".snapshot.csv", snap_os.str());

    Real delta_hat = std::numeric_limits<Real>::quiet_NaN();
    try {
        delta_hat = fit_decay_rate(series, config.s_max / 4.0, config.s_max,
                                   SeriesColumn::norm_q1);
    } catch (const std::domain_error&) {
    }
    std::printf("verdict=%s final_norm_q1=%s delta_hat=%s center_amp=%s\n",
                series.verdict.c_str(), format_double(series.rows.back().norm_q1).c_str(),
                format_double(delta_hat).c_str(),
                format_double(series.rows.back().center_amp).c_str());
    return 0;
}

int cmd_spectrum(const RunConfig& config) {
    const ModelParams params(config.d, config.effective_k());
    const SpectrumReport report = generator_spectrum(params, config.N, 2 * config.N, 1e-6, true);
    write_text_file(config.out + ".spectrum.json",
                    spectral_json(nullptr, &report, config.d, config.effective_k()));
    std::printf("abscissa=%s free_growth_bound=%s eigenvalues=%zu\n",
                format_double(report.abscissa).c_str(),
                format_double(report.free_growth_bound).c_str(), report.eigenvalues.size());
    return 0;
}

int cmd_modes(const RunConfig& config) {
    const OscillationCertificate cert =
        oscillation_certificate(config.d, config.mu_min, config.mu_samples);
    write_text_file(config.out + ".modes.json",
                    spectral_json(&cert, nullptr, config.d, config.effective_k()));
    std::printf("verdict=%s samples=%zu\n", cert.verdict.c_str(), cert.samples.size());
    return cert.verdict == "PASS" ? 0 : 1;
}

std::vector<SweepRow> run_sweep(const RunConfig& config) {
    const ModelParams params(config.d, config.effective_k());
    const RadialGrid grid(config.N, config.d);

    auto one_row = [&](Real amplitude) {
        EvolutionConfig ecfg(params);
        ecfg.N = config.N;
        ecfg.ds = config.ds;
        ecfg.s_max = config.s_max;
        ecfg.record_every = config.record_every;
        const TimeSeries series = evolve(grid, ecfg, profile_state(grid, amplitude, 0.0, config.p));

        SweepRow row;
        row.amplitude = amplitude;
        const Real initial_norm = series.rows.front().norm_q1;
        const Real final_norm = series.rows.back().norm_q1;
        row.verdict =
            (series.blew_up() || final_norm > initial_norm) ? "growth-or-blowup" : "decay";
        row.delta_hat = std::numeric_limits<Real>::quiet_NaN();
        try {
            row.delta_hat = fit_decay_rate(series, config.s_max / 4.0, config.s_max,
                                           SeriesColumn::norm_q1);
        } catch (const std::domain_error&) {
        }
        row.center_amp = series.rows.back().center_amp;
        return row;
    };

    std::vector<std::future<SweepRow>> futures;
    for (Real amp : config.amplitudes)
        futures.push_back(std::async(std::launch::async, one_row, amp));
    std::vector<SweepRow> rows;
    for (auto& f : futures)
        rows.push_back(f.get());
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "amplitude,verdict,delta_hat,center_amp\n";
    for (const auto& row : rows) {
        os << format_double(row.amplitude) << ',' << row.verdict << ','
           << format_double(row.delta_hat) << ',' << format_double(row.center_amp) << '\n';
    }
    return os.str();
}

int cmd_sweep(const RunConfig& config) {
    const auto rows = run_sweep(config);
    write_text_file(config.out + ".sweep.csv", sweep_csv(rows));
    for (const auto& row : rows)
        std::printf("amp=%s verdict=%s delta_hat=%s center_amp=%s\n",
                    format_double(row.amplitude).c_str(), row.verdict.c_str(),
                    format_double(row.delta_hat).c_str(), format_double(row.center_amp).c_str());
    return 0;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    RunConfig cfg;
    try {
        cfg = parse_config(args);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    try {
        if (cfg.command == "verify") return cmd_verify(cfg);
        if (cfg.command == "evolve") return cmd_evolve(cfg);
        if (cfg.command == "spectrum") return cmd_spectrum(cfg);
        if (cfg.command == "modes") return cmd_modes(cfg);
        if (cfg.command == "sweep") return cmd_sweep(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    std::fprintf(stderr, "error: no command\n");
    return 2;
}

}  // namespace wml
