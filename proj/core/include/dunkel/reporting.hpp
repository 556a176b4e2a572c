#pragma once

#include "dunkel/events.hpp"
#include "dunkel/time_series.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dunkel {

struct DurationCount {
    std::size_t duration = 0;         ///< in steps
    std::size_t cumulative_count = 0; ///< events lasting at least `duration`

    bool operator==(const DurationCount&) const = default;
};

struct FrequencyDurationDistribution {
    std::vector<DurationCount> points; ///< ascending duration, one point per distinct duration

    std::size_t total_events() const noexcept { return points.empty() ? 0 : points.front().cumulative_count; }
};

/// Throws ParameterError if the events stem from more than one method.
FrequencyDurationDistribution frequency_duration_distribution(std::span<const ShortageEvent> events);

struct YearSummary {
    int year = 0;
    std::size_t max_duration = 0;
    std::size_t event_count = 0;
    double max_energy_deficit = 0.0;

    bool operator==(const YearSummary&) const = default;
};

/// Every calendar year the series touches, in ascending order. Each event
/// counts towards the year in which it starts.
std::vector<YearSummary> yearly_extremes(std::span<const ShortageEvent> events, const Calendar& calendar);

enum class ExportFormat { csv, json };

/// Column order of the event CSV.
inline constexpr std::string_view kEventCsvHeader =
    "method,threshold_kind,threshold_param,threshold_value,intdur,start_time,end_time,duration_steps,"
    "energy_deficit,recovery_steps,truncated";

void write_events_csv(std::ostream& out, std::span<const ShortageEvent> events, const Calendar& calendar);
std::vector<ShortageEvent> read_events_csv(std::istream& in, const Calendar& calendar);

void write_events_json(std::ostream& out, std::span<const ShortageEvent> events, const Calendar& calendar);
std::vector<ShortageEvent> read_events_json(std::istream& in, const Calendar& calendar);

/// Writes atomically (temporary file, then rename). Throws IoError with the path on failure.
void export_events(std::span<const ShortageEvent> events, const Calendar& calendar,
                   const std::filesystem::path& destination, ExportFormat format);
std::vector<ShortageEvent> import_events(const std::filesystem::path& source, const Calendar& calendar,
                                         ExportFormat format);

void write_distribution_csv(std::ostream& out, const FrequencyDurationDistribution& fdd);
void write_yearly_csv(std::ostream& out, std::span<const YearSummary> years);

/// Writes `content` to `destination` via a sibling temporary and a rename.
void write_file_atomic(const std::filesystem::path& destination, const std::string& content);

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

} // namespace dunkel
