#include "dunkel/thresholds.hpp"

#include "dunkel/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>

namespace dunkel {

namespace {

constexpr std::array<std::pair<ThresholdKind, std::string_view>, 5> kKindNames{{
    {ThresholdKind::absolute, "absolute"},
    {ThresholdKind::mean_fraction, "mean_fraction"},
    {ThresholdKind::percentile, "percentile"},
    {ThresholdKind::max_fraction, "max_fraction"},
    {ThresholdKind::zero_line, "zero_line"},
}};

} // namespace

std::string_view to_string(ThresholdKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

ThresholdKind parse_threshold_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) {
            return k;
        }
    }
    throw ParameterError(fmt::format("unknown threshold kind '{}'", name));
}

ThresholdSpec::ThresholdSpec(ThresholdKind kind, double parameter) : kind_(kind), parameter_(parameter) {
    const bool ok = [&] {
        if (!std::isfinite(parameter)) {
            return false;
        }
        switch (kind) {
        case ThresholdKind::absolute:
            return parameter >= 0.0 && parameter <= 1.0;
        case ThresholdKind::mean_fraction:
        case ThresholdKind::max_fraction:
            return parameter > 0.0 && parameter <= 1.0;
        case ThresholdKind::percentile:
            return parameter > 0.0 && parameter < 100.0;
        case ThresholdKind::zero_line:
            return parameter == 0.0;
        }
        return false;
    }();
    if (!ok) {
        constexpr std::array<std::string_view, 5> kRanges{"[0, 1]", "(0, 1]", "(0, 100)", "(0, 1]", "{0}"};
        throw ParameterError(fmt::format("{} threshold parameter {} is outside {}", to_string(kind), parameter,
                                         kRanges[static_cast<std::size_t>(kind)]));
    }
}

std::vector<ThresholdSpec> default_mean_fraction_sweep() {
    std::vector<ThresholdSpec> out;
    for (int i = 1; i <= 9; ++i) {
        out.push_back(ThresholdSpec::mean_fraction(i / 10.0));
    }
    return out;
}

ResolvedThreshold resolve_threshold(const ThresholdSpec& spec, const TimeSeries& series, std::string series_id) {
    const auto values = series.values();
    double value = 0.0;
    switch (spec.kind()) {
    case ThresholdKind::absolute:
        value = spec.parameter();
        break;
    case ThresholdKind::mean_fraction:
        value = spec.parameter() * summary_stats(series).mean;
        break;
    case ThresholdKind::percentile:
        value = percentile(values, spec.parameter());
        break;
    case ThresholdKind::max_fraction:
        value = spec.parameter() * *std::max_element(values.begin(), values.end());
        break;
    case ThresholdKind::zero_line:
        value = 0.0;
        break;
    }
    return {spec, value, std::move(series_id)};
}

ResolvedThreshold resolve_threshold(const ThresholdSpec& spec, const AvailabilitySeries& series) {
    auto resolved = resolve_threshold(spec, series.series(), series.id());
    if (resolved.value < 0.0 || resolved.value > 1.0) {
        throw ParameterError(
            fmt::format("threshold {} resolved on '{}' is outside [0, 1]", resolved.value, series.id()));
    }
    return resolved;
}

std::vector<YearlyThreshold> resolve_threshold_per_year(const ThresholdSpec& spec, const AvailabilitySeries& series) {
    const auto cal = series.series().calendar();
    std::vector<YearlyThreshold> out;
    for (int year = cal.first_year(); year <= cal.last_year(); ++year) {
        AvailabilitySeries slice(series.series().year_slice(year), series.technology(), series.region());
        out.push_back({year, resolve_threshold(spec, slice)});
    }
    return out;
}

} // namespace dunkel
