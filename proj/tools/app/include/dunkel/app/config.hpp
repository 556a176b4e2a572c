#pragma once

#include "dunkel/droughts.hpp"
#include "dunkel/events.hpp"
#include "dunkel/ingest.hpp"
#include "dunkel/portfolio.hpp"
#include "dunkel/prl.hpp"
#include "dunkel/thresholds.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dunkel::app {

/// What an input file holds.
enum class InputRole { availability, load, residual_load };

struct InputSpec {
    std::filesystem::path path;
    InputRole role = InputRole::availability;
    CsvMapping mapping;
};

/// load_t - sum cap * avail over the listed capacities.
struct ResidualLoadSpec {
    std::string name;
    SeriesKey load;
    CapacityMap capacities;
};

struct DroughtMethodSpec {
    Method method = Method::cbt;
    std::vector<std::size_t> intdurs;   // FMBT
    std::vector<std::size_t> window_lengths; // WINDOW
    DeficitBasis deficit_basis = DeficitBasis::moving_average;
    VariableIntervalOptions variable;   // VMBT
};

struct PrlMethodSpec {
    Method method = Method::caz;        // CAZ, FMAZ, VMAZ or SPA_PRL
    std::vector<std::size_t> intdurs;   // FMAZ
    VariableIntervalOptions variable;   // VMAZ
    std::vector<double> efficiencies{1.0}; // SPA
    SurplusAdjustment adjustment = SurplusAdjustment::discount;
};

struct OutputFormats {
    bool csv = true;
    bool json = false;
};

/// Declarative description of one analysis run.
struct RunConfig {
    std::vector<InputSpec> inputs;
    std::vector<PortfolioSpec> portfolios;
    std::vector<ResidualLoadSpec> residual_loads;

    /// Series ids analysed for droughts; all availability series and portfolios when unset.
    std::optional<std::vector<std::string>> drought_series;
    std::vector<ThresholdSpec> thresholds;
    std::vector<DroughtMethodSpec> drought_methods;

    /// Residual-load series analysed for PRL events; all of them when unset.
    std::optional<std::vector<std::string>> prl_series;
    std::vector<PrlMethodSpec> prl_methods;

    std::filesystem::path output_dir = "dunkel-out";
    OutputFormats formats;
    std::size_t parallelism = 1;
};

/// Parses JSON text. Relative input and output paths resolve against `base_dir`.
/// Throws InputError describing the offending key.
RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir);

/// Reads and parses a config file.
RunConfig load_run_config(const std::filesystem::path& path);

InputRole parse_input_role(const std::string& name);

/// Parses "technology/region" (region optional).
SeriesKey parse_series_key(const std::string& id);

} // namespace dunkel::app
