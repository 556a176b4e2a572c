#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

// Method-agnostic scans shared by drought and residual-load detection.
// Every scan is phrased as "value below level"; callers negate inputs to
// express "above zero".
namespace dunkel::detail {

struct Run {
    std::size_t first = 0;
    std::size_t last = 0; // inclusive
};

/// Maximal runs with values[i] < level, strictly.
std::vector<Run> runs_below(std::span<const double> values, double level);

struct Window {
    std::size_t first = 0;
    std::size_t length = 0;
    double mean = 0.0;
};

/// Variable-duration moving-average scan. Lengths are visited from
/// `start_length` down to 1 in decrements of `step` (1 is always visited
/// last). At each length the qualifying window (mean < level) with the
/// lowest mean is accepted, ties within `tie_tolerance` going to the earliest
/// start, and its samples are excluded from all later scans; this repeats
/// until no window of the current length qualifies.
///
/// When start_length is shorter than the series, no window of that length
/// may qualify; otherwise ParameterError reports the lowest window mean.
/// Result is sorted by first.
std::vector<Window> variable_window_scan(std::span<const double> values, double level, std::size_t start_length,
                                         std::size_t step);

/// Tie tolerance used by variable_window_scan for a given input.
double window_tie_tolerance(std::span<const double> values);

/// Cumulative deficit with reset at zero: d_t = max(0, d_{t-1} + increments[t]).
std::vector<double> clamped_cumulative(std::span<const double> increments);

struct DeficitSpan {
    std::size_t first = 0;
    std::size_t last = 0; // last index with a positive deficit
    std::size_t peak = 0; // last attainment of the span's maximum
    double peak_value = 0.0;
    std::optional<std::size_t> zero; // first index after `first` where the deficit is back at 0
};

/// Splits a clamped cumulative trace into its positive spans.
std::vector<DeficitSpan> deficit_spans(std::span<const double> trace);

} // namespace dunkel::detail
