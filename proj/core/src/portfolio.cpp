#include "dunkel/portfolio.hpp"

#include "dunkel/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace dunkel {

namespace {

const AvailabilitySeries& find_series(const AvailabilitySet& set, const SeriesKey& key) {
    const auto it = set.find(key);
    if (it == set.end()) {
        throw LookupError(fmt::format("no availability series for '{}'", key.id()));
    }
    return it->second;
}

void require_aligned(const TimeSeries& reference, const std::string& reference_id, const TimeSeries& other,
                     const std::string& other_id) {
    if (!reference.aligned_with(other)) {
        throw AlignmentError(fmt::format(
            "series '{}' ({} samples from {}, step {} s) is not aligned with '{}' ({} samples from {}, step {} s)",
            other_id, other.size(), format_iso8601(other.start()), other.step().count(), reference_id,
            reference.size(), format_iso8601(reference.start()), reference.step().count()));
    }
}

std::string composite_region(const PortfolioSpec& spec) {
    const std::string& first = spec.entries.front().key.region;
    const bool single = std::all_of(spec.entries.begin(), spec.entries.end(),
                                    [&](const PortfolioEntry& e) { return e.key.region == first; });
    return single ? first : "multi";
}

} // namespace

AvailabilitySeries compose_weighted(const AvailabilitySet& series_set, const PortfolioSpec& spec) {
    if (spec.entries.empty()) {
        throw ParameterError(fmt::format("portfolio '{}' has no entries", spec.name));
    }
    double total = 0.0;
    for (const auto& entry : spec.entries) {
        if (!std::isfinite(entry.weight) || entry.weight < 0.0) {
            throw ParameterError(
                fmt::format("portfolio '{}': weight {} for '{}' is negative", spec.name, entry.weight, entry.key.id()));
        }
        total += entry.weight;
    }
    if (!(total > 0.0)) {
        throw ParameterError(fmt::format("portfolio '{}': weights sum to zero", spec.name));
    }

    const AvailabilitySeries& reference = find_series(series_set, spec.entries.front().key);
    std::vector<double> out(reference.size(), 0.0);
    for (const auto& entry : spec.entries) {
        const AvailabilitySeries& member = find_series(series_set, entry.key);
        require_aligned(reference.series(), reference.id(), member.series(), member.id());
        const double w = entry.weight / total;
        const auto values = member.values();
        for (std::size_t t = 0; t < out.size(); ++t) {
            out[t] += w * values[t];
        }
    }
    // A convex combination of values in [0, 1] may exceed 1 by one rounding.
    for (double& v : out) {
        v = std::clamp(v, 0.0, 1.0);
    }
    return AvailabilitySeries(reference.series().with_values(std::move(out)), spec.name, composite_region(spec));
}

ResidualLoadSeries residual_load_from_profiles(const TimeSeries& load, const AvailabilitySet& series_set,
                                               const CapacityMap& caps, std::string name) {
    std::vector<double> out(load.values().begin(), load.values().end());
    for (const auto& [key, capacity] : caps) {
        if (!std::isfinite(capacity) || capacity < 0.0) {
            throw ParameterError(fmt::format("capacity {} for '{}' is negative", capacity, key.id()));
        }
        const AvailabilitySeries& member = find_series(series_set, key);
        require_aligned(load, "load", member.series(), member.id());
        const auto values = member.values();
        for (std::size_t t = 0; t < out.size(); ++t) {
            out[t] -= capacity * values[t];
        }
    }
    return ResidualLoadSeries(load.with_values(std::move(out)), std::move(name));
}

} // namespace dunkel
