#pragma once

#include "dunkel/app/config.hpp"
#include "dunkel/error.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace dunkel::app {

/// A detection combination failed while running; exit status 2.
class RunFailure : public Error {
public:
    using Error::Error;
};

/// Series materialised from a config's inputs, portfolios and residual-load specs.
struct LoadedSeries {
    std::map<std::string, AvailabilitySeries> availability; ///< inputs and portfolios, by id
    std::map<std::string, TimeSeries> loads;                 ///< load inputs, by id
    std::map<std::string, ResidualLoadSeries> residual_loads; ///< residual-load inputs and specs, by id
    std::vector<std::string> log;
};

/// Ingests every input and builds portfolios and residual loads.
LoadedSeries load_series(const RunConfig& config);

struct RunSummary {
    std::filesystem::path manifest;
    std::vector<std::filesystem::path> files; ///< every artefact written, manifest excluded
    std::size_t combinations = 0;
    std::vector<std::string> log;
};

/// Expands the config into (series, threshold, method, parameters) combinations,
/// validates all of them, then runs them on `config.parallelism` workers.
/// Each combination writes an event export, a frequency-duration distribution
/// and yearly extremes; a manifest lists every file with its parameters.
///
/// Invalid combinations throw InputError before anything is written. A
/// failure while running throws RunFailure naming the combination, after
/// removing every file this run wrote.
RunSummary run_config(const RunConfig& config);

} // namespace dunkel::app
