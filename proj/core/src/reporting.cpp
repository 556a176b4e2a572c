#include "dunkel/reporting.hpp"

#include "csv.hpp"
#include "dunkel/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>

namespace dunkel {

namespace fs = std::filesystem;

FrequencyDurationDistribution frequency_duration_distribution(std::span<const ShortageEvent> events) {
    FrequencyDurationDistribution fdd;
    if (events.empty()) {
        return fdd;
    }
    const Method method = events.front().method;
    std::map<std::size_t, std::size_t> by_duration;
    for (const auto& e : events) {
        if (e.method != method) {
            throw ParameterError(fmt::format("frequency-duration distribution mixes methods {} and {}",
                                             to_string(method), to_string(e.method)));
        }
        ++by_duration[e.duration];
    }
    std::size_t remaining = events.size();
    for (const auto& [duration, count] : by_duration) {
        fdd.points.push_back({duration, remaining});
        remaining -= count;
    }
    return fdd;
}

std::vector<YearSummary> yearly_extremes(std::span<const ShortageEvent> events, const Calendar& calendar) {
    std::vector<YearSummary> years;
    const int first = calendar.first_year();
    for (int y = first; y <= calendar.last_year(); ++y) {
        years.push_back({y, 0, 0, 0.0});
    }
    for (const auto& e : events) {
        const int y = year_of(calendar.time_at(e.start_index));
        if (y < first || y > calendar.last_year()) {
            continue;
        }
        YearSummary& s = years[static_cast<std::size_t>(y - first)];
        s.max_duration = std::max(s.max_duration, e.duration);
        s.max_energy_deficit = std::max(s.max_energy_deficit, e.energy_deficit);
        ++s.event_count;
    }
    return years;
}

std::string format_number(double value) {
    return fmt::format("{}", value);
}

namespace {

std::string optional_field(const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string{};
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::string_view column) {
    T value{};
    const auto t = detail::trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw InputError(fmt::format("column '{}': cannot parse '{}' as a number", column, text), line);
    }
    return value;
}

std::optional<std::size_t> parse_optional_count(std::string_view text, std::size_t line, std::string_view column) {
    if (detail::trim(text).empty()) {
        return std::nullopt;
    }
    return parse_number<std::size_t>(text, line, column);
}

bool parse_bool(std::string_view text, std::size_t line) {
    const auto t = detail::trim(text);
    if (t == "true" || t == "1") {
        return true;
    }
    if (t == "false" || t == "0") {
        return false;
    }
    throw InputError(fmt::format("column 'truncated': expected true or false, got '{}'", text), line);
}

std::size_t index_for(const Calendar& calendar, std::string_view text, std::size_t line) {
    const TimePoint t = parse_iso8601(detail::trim(text));
    const auto index = calendar.index_of(t);
    if (!index) {
        throw InputError(fmt::format("timestamp {} is not on the series calendar", text), line);
    }
    return *index;
}

ShortageEvent event_from_fields(const Calendar& calendar, std::string_view method, std::string_view kind,
                                double param, double value, std::optional<std::size_t> intdur,
                                std::string_view start_time, std::string_view end_time, std::size_t duration,
                                double deficit, std::optional<std::size_t> recovery, bool truncated,
                                std::size_t line) {
    ShortageEvent e;
    try {
        e.method = parse_method(detail::trim(method));
        e.threshold = {parse_threshold_kind(detail::trim(kind)), param, value};
    } catch (const ParameterError& err) {
        throw InputError(err.what(), line);
    }
    e.intdur = intdur;
    e.start_index = index_for(calendar, start_time, line);
    e.end_index = index_for(calendar, end_time, line);
    e.duration = duration;
    e.energy_deficit = deficit;
    e.recovery = recovery;
    e.truncated = truncated;
    if (e.end_index < e.start_index) {
        throw InputError("event ends before it starts", line);
    }
    return e;
}

} // namespace

void write_events_csv(std::ostream& out, std::span<const ShortageEvent> events, const Calendar& calendar) {
    out << kEventCsvHeader << '\n';
    for (const auto& e : events) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", to_string(e.method), to_string(e.threshold.kind),
                           format_number(e.threshold.parameter), format_number(e.threshold.value),
                           optional_field(e.intdur), format_iso8601(calendar.time_at(e.start_index)),
                           format_iso8601(calendar.time_at(e.end_index)), e.duration,
                           format_number(e.energy_deficit), optional_field(e.recovery),
                           e.truncated ? "true" : "false");
    }
}

std::vector<ShortageEvent> read_events_csv(std::istream& in, const Calendar& calendar) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) {
        throw InputError("event file is empty", 1);
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (detail::trim(line) != kEventCsvHeader) {
        throw InputError("unexpected event CSV header", 1);
    }
    std::vector<ShortageEvent> events;
    std::vector<std::string> f;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        if (!detail::split_csv_record(line, f) || f.size() != 11) {
            throw InputError(fmt::format("expected 11 fields, found {}", f.size()), line_no);
        }
        events.push_back(event_from_fields(
            calendar, f[0], f[1], parse_number<double>(f[2], line_no, "threshold_param"),
            parse_number<double>(f[3], line_no, "threshold_value"), parse_optional_count(f[4], line_no, "intdur"),
            f[5], f[6], parse_number<std::size_t>(f[7], line_no, "duration_steps"),
            parse_number<double>(f[8], line_no, "energy_deficit"),
            parse_optional_count(f[9], line_no, "recovery_steps"), parse_bool(f[10], line_no), line_no));
    }
    return events;
}

void write_events_json(std::ostream& out, std::span<const ShortageEvent> events, const Calendar& calendar) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : events) {
        nlohmann::ordered_json j;
        j["method"] = to_string(e.method);
        j["threshold_kind"] = to_string(e.threshold.kind);
        j["threshold_param"] = e.threshold.parameter;
        j["threshold_value"] = e.threshold.value;
        j["intdur"] = e.intdur ? nlohmann::ordered_json(*e.intdur) : nlohmann::ordered_json(nullptr);
        j["start_time"] = format_iso8601(calendar.time_at(e.start_index));
        j["end_time"] = format_iso8601(calendar.time_at(e.end_index));
        j["duration_steps"] = e.duration;
        j["energy_deficit"] = e.energy_deficit;
        j["recovery_steps"] = e.recovery ? nlohmann::ordered_json(*e.recovery) : nlohmann::ordered_json(nullptr);
        j["truncated"] = e.truncated;
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
}

std::vector<ShortageEvent> read_events_json(std::istream& in, const Calendar& calendar) {
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (const nlohmann::json::exception& err) {
        throw InputError(fmt::format("invalid event JSON: {}", err.what()));
    }
    if (!arr.is_array()) {
        throw InputError("event JSON must be an array");
    }
    std::vector<ShortageEvent> events;
    std::size_t record = 0;
    for (const auto& j : arr) {
        ++record;
        try {
            auto opt = [&](const char* key) -> std::optional<std::size_t> {
                if (j.at(key).is_null()) {
                    return std::nullopt;
                }
                return j.at(key).get<std::size_t>();
            };
            events.push_back(event_from_fields(
                calendar, j.at("method").get<std::string>(), j.at("threshold_kind").get<std::string>(),
                j.at("threshold_param").get<double>(), j.at("threshold_value").get<double>(), opt("intdur"),
                j.at("start_time").get<std::string>(), j.at("end_time").get<std::string>(),
                j.at("duration_steps").get<std::size_t>(), j.at("energy_deficit").get<double>(),
                opt("recovery_steps"), j.at("truncated").get<bool>(), 0));
        } catch (const nlohmann::json::exception& err) {
            throw InputError(fmt::format("event record {}: {}", record, err.what()));
        }
    }
    return events;
}

void write_file_atomic(const fs::path& destination, const std::string& content) {
    fs::path tmp = destination;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(fmt::format("cannot open '{}' for writing", tmp.string()));
        }
        out << content;
        out.flush();
        if (!out) {
            throw IoError(fmt::format("write to '{}' failed", tmp.string()));
        }
    }
    std::error_code ec;
    fs::rename(tmp, destination, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError(fmt::format("cannot move output into place at '{}'", destination.string()));
    }
}

void export_events(std::span<const ShortageEvent> events, const Calendar& calendar, const fs::path& destination,
                   ExportFormat format) {
    std::ostringstream buffer;
    if (format == ExportFormat::csv) {
        write_events_csv(buffer, events, calendar);
    } else {
        write_events_json(buffer, events, calendar);
    }
    write_file_atomic(destination, buffer.str());
}

std::vector<ShortageEvent> import_events(const fs::path& source, const Calendar& calendar, ExportFormat format) {
    std::ifstream in(source, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}'", source.string()));
    }
    try {
        return format == ExportFormat::csv ? read_events_csv(in, calendar) : read_events_json(in, calendar);
    } catch (const InputError& err) {
        throw InputError(fmt::format("{}: {}", source.string(), err.what()));
    }
}

void write_distribution_csv(std::ostream& out, const FrequencyDurationDistribution& fdd) {
    out << "duration_steps,cumulative_count\n";
    for (const auto& p : fdd.points) {
        out << p.duration << ',' << p.cumulative_count << '\n';
    }
}

void write_yearly_csv(std::ostream& out, std::span<const YearSummary> years) {
    out << "year,max_duration_steps,event_count,max_energy_deficit\n";
    for (const auto& y : years) {
        out << y.year << ',' << y.max_duration << ',' << y.event_count << ',' << format_number(y.max_energy_deficit)
            << '\n';
    }
}

} // namespace dunkel
