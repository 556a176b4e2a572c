#include "dunkel/ingest.hpp"

#include "csv.hpp"
#include "dunkel/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

namespace dunkel {

namespace {

struct Row {
    TimePoint time;
    std::optional<double> value; // nullopt: blank or NaN cell
    std::size_t line;
};

std::size_t require_column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (detail::trim(header[i]) == name) {
            return i;
        }
    }
    throw InputError(fmt::format("header has no column named '{}'", name), 1);
}

std::optional<double> parse_value(std::string_view text, std::size_t line) {
    const auto t = detail::trim(text);
    if (t.empty() || t == "NaN" || t == "nan" || t == "NA") {
        return std::nullopt;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw InputError(fmt::format("cannot parse value '{}'", text), line);
    }
    if (std::isnan(v)) {
        return std::nullopt;
    }
    if (!std::isfinite(v)) {
        throw InputError(fmt::format("value '{}' is not finite", text), line);
    }
    return v;
}

TimeSeries assemble(const SeriesKey& key, std::vector<Row>& rows, const CsvMapping& mapping,
                    std::vector<std::string>& log) {
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.time < b.time; });
    const auto step = mapping.step.count();
    std::vector<double> values;
    values.reserve(rows.size());
    std::size_t pending_fill = 0; // consecutive missing samples so far
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        if (i > 0) {
            const Row& prev = rows[i - 1];
            const auto delta = (r.time - prev.time).count();
            if (delta == 0) {
                throw InputError(fmt::format("duplicate timestamp {} for series '{}' (also on line {})",
                                             format_iso8601(r.time), key.id(), prev.line),
                                 r.line);
            }
            if (delta % step != 0) {
                throw InputError(fmt::format("timestamp {} of series '{}' is off the {} s grid",
                                             format_iso8601(r.time), key.id(), step),
                                 r.line);
            }
            const auto missing = static_cast<std::size_t>(delta / step - 1);
            if (missing > 0) {
                pending_fill += missing;
                if (pending_fill > mapping.max_gap_fill) {
                    throw InputError(fmt::format("series '{}' is missing {} step(s) before {}; fill limit is {}",
                                                 key.id(), pending_fill, format_iso8601(r.time),
                                                 mapping.max_gap_fill),
                                     r.line);
                }
                values.insert(values.end(), missing, values.back());
                log.push_back(fmt::format("series '{}': forward-filled {} missing step(s) after {} (line {})",
                                          key.id(), missing, format_iso8601(prev.time), prev.line));
            }
        }
        if (r.value) {
            pending_fill = 0;
            values.push_back(*r.value);
        } else {
            if (values.empty()) {
                throw InputError(fmt::format("series '{}' starts with a missing value", key.id()), r.line);
            }
            if (++pending_fill > mapping.max_gap_fill) {
                throw InputError(fmt::format("missing value for series '{}' at {}; fill limit is {}", key.id(),
                                             format_iso8601(r.time), mapping.max_gap_fill),
                                 r.line);
            }
            values.push_back(values.back());
            log.push_back(fmt::format("series '{}': forward-filled missing value at {} (line {})", key.id(),
                                      format_iso8601(r.time), r.line));
        }
    }
    return TimeSeries(rows.front().time, mapping.step, std::move(values));
}

} // namespace

IngestResult ingest_csv(std::istream& in, const CsvMapping& mapping, const std::string& source_name) {
    if (mapping.step.count() <= 0) {
        throw ParameterError("ingest step must be positive");
    }
    std::string line;
    std::vector<std::string> fields;
    if (!std::getline(in, line) || !detail::split_csv_record(line, fields)) {
        throw InputError(fmt::format("{}: missing or malformed header", source_name), 1);
    }
    const std::size_t ts_col = require_column(fields, mapping.timestamp_column);
    const std::size_t value_col = require_column(fields, mapping.value_column);
    const std::optional<std::size_t> tech_col =
        mapping.technology_column.empty() ? std::nullopt
                                          : std::optional<std::size_t>(require_column(fields, mapping.technology_column));
    const std::optional<std::size_t> region_col =
        mapping.region_column.empty() ? std::nullopt
                                      : std::optional<std::size_t>(require_column(fields, mapping.region_column));
    const std::size_t width = fields.size();

    std::map<SeriesKey, std::vector<Row>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty() || detail::trim(line) == "\r") {
            continue;
        }
        if (!detail::split_csv_record(line, fields)) {
            throw InputError(fmt::format("{}: unterminated quote", source_name), line_no);
        }
        if (fields.size() != width) {
            throw InputError(fmt::format("{}: expected {} fields, found {}", source_name, width, fields.size()),
                             line_no);
        }
        SeriesKey key{tech_col ? std::string(detail::trim(fields[*tech_col])) : mapping.default_technology,
                      region_col ? std::string(detail::trim(fields[*region_col])) : mapping.default_region};
        TimePoint time;
        try {
            time = parse_iso8601(detail::trim(fields[ts_col]));
        } catch (const InputError& err) {
            throw InputError(fmt::format("{}: {}", source_name, err.what()), line_no);
        }
        const auto value = parse_value(fields[value_col], line_no);
        if (value && mapping.kind == ValueKind::availability && (*value < 0.0 || *value > 1.0)) {
            throw InputError(fmt::format("{}: availability factor {} for '{}' at {} is outside [0, 1]", source_name,
                                         *value, key.id(), format_iso8601(time)),
                             line_no);
        }
        rows[key].push_back({time, value, line_no});
    }
    if (rows.empty()) {
        throw InputError(fmt::format("{}: no data rows", source_name), line_no);
    }

    IngestResult result;
    for (auto& [key, key_rows] : rows) {
        result.series.emplace(key, assemble(key, key_rows, mapping, result.log));
    }
    return result;
}

IngestResult ingest_csv(const std::filesystem::path& path, const CsvMapping& mapping) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}'", path.string()));
    }
    return ingest_csv(in, mapping, path.string());
}

AvailabilitySet as_availability(const IngestResult& ingested) {
    AvailabilitySet out;
    for (const auto& [key, series] : ingested.series) {
        out.emplace(key, AvailabilitySeries(series, key.technology, key.region));
    }
    return out;
}

void write_long_csv(std::ostream& out, const std::map<SeriesKey, TimeSeries>& series) {
    out << "timestamp,technology,region,value\n";
    for (const auto& [key, s] : series) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            out << format_iso8601(s.time_at(i)) << ',' << key.technology << ',' << key.region << ','
                << fmt::format("{}", s[i]) << '\n';
        }
    }
}

void wide_to_long(std::istream& in, std::ostream& out, char separator) {
    std::string line;
    std::vector<std::string> header;
    if (!std::getline(in, line) || !detail::split_csv_record(line, header) || header.size() < 2) {
        throw InputError("wide CSV needs a header with a timestamp column and at least one series", 1);
    }
    std::vector<SeriesKey> keys;
    for (std::size_t c = 1; c < header.size(); ++c) {
        const std::string name(detail::trim(header[c]));
        const auto pos = name.find(separator);
        keys.push_back(pos == std::string::npos ? SeriesKey{name, {}}
                                                : SeriesKey{name.substr(0, pos), name.substr(pos + 1)});
    }
    out << "timestamp,technology,region,value\n";
    std::vector<std::string> fields;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        if (!detail::split_csv_record(line, fields) || fields.size() != header.size()) {
            throw InputError(fmt::format("expected {} fields, found {}", header.size(), fields.size()), line_no);
        }
        const auto ts = std::string(detail::trim(fields[0]));
        for (std::size_t c = 1; c < fields.size(); ++c) {
            out << ts << ',' << keys[c - 1].technology << ',' << keys[c - 1].region << ','
                << detail::trim(fields[c]) << '\n';
        }
    }
}

} // namespace dunkel
