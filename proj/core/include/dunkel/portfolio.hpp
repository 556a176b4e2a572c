#pragma once

#include "dunkel/prl.hpp"
#include "dunkel/time_series.hpp"

#include <map>
#include <string>
#include <vector>

namespace dunkel {

using AvailabilitySet = std::map<SeriesKey, AvailabilitySeries>;

/// Installed capacity per (technology, region), in power units.
using CapacityMap = std::map<SeriesKey, double>;

struct PortfolioEntry {
    SeriesKey key;
    double weight = 0.0;
};

/// Capacity-share weights of a technology portfolio, possibly spanning regions.
/// Weights are normalised to sum to one.
struct PortfolioSpec {
    std::string name = "portfolio";
    std::vector<PortfolioEntry> entries;
};

/// Weighted average of the member series. Throws ParameterError for an empty
/// spec, negative weights or a zero total; LookupError for a missing series;
/// AlignmentError when members do not share start, step and length.
AvailabilitySeries compose_weighted(const AvailabilitySet& series_set, const PortfolioSpec& spec);

/// rl_t = load_t - sum_i cap_i * avail_i,t over every capacity entry.
ResidualLoadSeries residual_load_from_profiles(const TimeSeries& load, const AvailabilitySet& series_set,
                                               const CapacityMap& caps, std::string name = "residual_load");

} // namespace dunkel
