#pragma once

#include "dunkel/portfolio.hpp"
#include "dunkel/time_series.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dunkel {

enum class ValueKind {
    availability, ///< values must lie in [0, 1]
    power,        ///< any finite value (load, residual load)
};

/// Column mapping for long-format CSV: one row per (timestamp, technology, region, value).
/// An empty technology or region column name means the file has no such
/// column; the corresponding default is used for every row instead.
struct CsvMapping {
    std::string timestamp_column = "timestamp";
    std::string value_column = "value";
    std::string technology_column = "technology";
    std::string region_column = "region";
    std::string default_technology;
    std::string default_region;
    Step step = kHourly;
    ValueKind kind = ValueKind::availability;
    /// Longest run of missing steps that is forward-filled; longer gaps are errors.
    std::size_t max_gap_fill = 0;
};

struct IngestResult {
    std::map<SeriesKey, TimeSeries> series;
    /// Human-readable notes, e.g. forward-filled gaps.
    std::vector<std::string> log;
};

/// Throws InputError (with line numbers) on malformed rows, duplicate or
/// off-grid timestamps, gaps beyond the fill limit and out-of-range values.
IngestResult ingest_csv(std::istream& in, const CsvMapping& mapping, const std::string& source_name = "<stream>");
IngestResult ingest_csv(const std::filesystem::path& path, const CsvMapping& mapping);

/// Wraps each ingested series as availability. Throws InputError on values outside [0, 1].
AvailabilitySet as_availability(const IngestResult& ingested);

/// Writes series in the long format read by ingest_csv (timestamp,technology,region,value).
void write_long_csv(std::ostream& out, const std::map<SeriesKey, TimeSeries>& series);

/// Converts a wide CSV (timestamp column followed by one column per series,
/// named "<technology><separator><region>" or just "<technology>") to long format.
void wide_to_long(std::istream& in, std::ostream& out, char separator = '/');

} // namespace dunkel
