#include "wavemaplab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace wml {

std::string format_double(Real v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_time_series_csv(std::ostream& os, const TimeSeries& series) {
    os << "s,norm_q1,norm_q2,center_amp,local_energy,verdict\n";
    for (const auto& row : series.rows) {
        os << format_double(row.s) << ',' << format_double(row.norm_q1) << ','
           << format_double(row.norm_q2) << ',' << format_double(row.center_amp) << ','
           << format_double(row.local_energy) << ',' << (row.blowup ? "blowup" : "ok") << '\n';
    }
}

void write_snapshot_csv(std::ostream& os, const RadialGrid& grid, const EvolutionState& state,
                        const ModelParams& params, Real ds) {
    os << "# d=" << params.d << "\n# k=" << params.k << "\n# N=" << grid.n_modes
       << "\n# s=" << format_double(state.s) << "\n# ds=" << format_double(ds) << "\n";
    os << "r,q1,q2\n";
    for (int j = 0; j < grid.nodes.size(); ++j) {
        os << format_double(grid.nodes(j)) << ',' << format_double(state.q1(j)) << ','
           << format_double(state.q2(j)) << '\n';
    }
}

std::string spectral_json(const OscillationCertificate* cert, const SpectrumReport* report,
                          int d, int k) {
    nlohmann::ordered_json j;
    j["d"] = d;
    j["k"] = k;
    if (cert != nullptr) {
        auto samples = nlohmann::ordered_json::array();
        for (const auto& s : cert->samples)
            samples.push_back({{"mu", s.mu}, {"zero_count", s.zero_count}});
        j["mu_samples"] = samples;
        j["verdict"] = cert->verdict;
        if (cert->verdict == "INCONCLUSIVE")
            j["failing_mu"] = cert->failing_mu;
    }
    if (report != nullptr) {
        auto evs = nlohmann::ordered_json::array();
        for (const auto& e : report->eigenvalues)
            evs.push_back({{"re", e.value.real()}, {"im", e.value.imag()}, {"resolved", e.resolved}});
        j["eigenvalues"] = evs;
        j["abscissa"] = report->abscissa;
        j["free_growth_bound"] = report->free_growth_bound;
    }
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    if (!os)
        throw std::runtime_error("write failed: " + path);
}

}  // namespace wml
