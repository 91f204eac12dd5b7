#pragma once

#include <iosfwd>
#include <string>

#include "wavemaplab/evolve.hpp"
#include "wavemaplab/modes.hpp"

// Serialization of run artifacts. All numbers are written with %.17g so a
// fixed configuration reproduces byte-identical files on one platform.

namespace wml {

std::string format_double(Real v);

// Header "s,norm_q1,norm_q2,center_amp,local_energy,verdict"; the verdict
// column is a per-row flag ("ok" until a "blowup" row aborts the run).
void write_time_series_csv(std::ostream& os, const TimeSeries& series);

// "# key=value" preamble (d, k, N, s, ds) followed by "r,q1,q2" rows.
void write_snapshot_csv(std::ostream& os, const RadialGrid& grid, const EvolutionState& state,
                        const ModelParams& params, Real ds);

// {d, k, mu_samples, verdict, eigenvalues, abscissa, free_growth_bound};
// either part may be absent.
std::string spectral_json(const OscillationCertificate* cert, const SpectrumReport* report,
                          int d, int k);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace wml
