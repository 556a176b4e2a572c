#pragma once

#include "dunkel/time_series.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dunkel {

enum class ThresholdKind {
    absolute,      ///< value used as given, in [0, 1]
    mean_fraction, ///< frac * mean(series), frac in (0, 1]
    percentile,    ///< p-th percentile of the series, p in (0, 100)
    max_fraction,  ///< f * max(series), f in (0, 1]
    zero_line,     ///< residual-load events: fixed at 0
};

std::string_view to_string(ThresholdKind kind);

/// Throws ParameterError for unknown names.
ThresholdKind parse_threshold_kind(std::string_view name);

/// How a drought qualification threshold is derived from a series.
class ThresholdSpec {
public:
    /// The recommended default: half the series mean.
    ThresholdSpec() : ThresholdSpec(ThresholdKind::mean_fraction, 0.5) {}

    static ThresholdSpec absolute(double value) { return {ThresholdKind::absolute, value}; }
    static ThresholdSpec mean_fraction(double frac) { return {ThresholdKind::mean_fraction, frac}; }
    static ThresholdSpec percentile(double p) { return {ThresholdKind::percentile, p}; }
    static ThresholdSpec max_fraction(double f) { return {ThresholdKind::max_fraction, f}; }
    static ThresholdSpec zero_line() { return {ThresholdKind::zero_line, 0.0}; }

    /// Tagged construction as used in config files (kind=mean_fraction, value=0.5).
    static ThresholdSpec from_tagged(std::string_view kind, double value) {
        return {parse_threshold_kind(kind), value};
    }

    ThresholdKind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return parameter_; }

    bool operator==(const ThresholdSpec&) const = default;

private:
    /// Throws ParameterError when the parameter is outside the interval of its kind.
    ThresholdSpec(ThresholdKind kind, double parameter);

    ThresholdKind kind_;
    double parameter_;
};

/// frac in {0.1, 0.2, ..., 0.9}.
std::vector<ThresholdSpec> default_mean_fraction_sweep();

/// A threshold evaluated against one series; recorded on every event it produces.
struct ResolvedThreshold {
    ThresholdSpec spec;
    double value = 0.0;
    std::string series_id;
};

/// Resolves against an availability series; the result lies in [0, 1].
ResolvedThreshold resolve_threshold(const ThresholdSpec& spec, const AvailabilitySeries& series);

/// Resolves against an arbitrary scalar series without the [0, 1] representability check.
ResolvedThreshold resolve_threshold(const ThresholdSpec& spec, const TimeSeries& series, std::string series_id = {});

struct YearlyThreshold {
    int year = 0;
    ResolvedThreshold threshold;
};

/// One threshold per calendar year, each resolved on that year's samples only.
std::vector<YearlyThreshold> resolve_threshold_per_year(const ThresholdSpec& spec, const AvailabilitySeries& series);

} // namespace dunkel
