#pragma once

#include "dunkel/droughts.hpp"
#include "dunkel/prl.hpp"
#include "dunkel/time_series.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace fixture {

inline dunkel::TimeSeries hourly(std::vector<double> values) { return dunkel::TimeSeries(std::move(values)); }

inline dunkel::AvailabilitySeries avail(std::vector<double> values) {
    return dunkel::AvailabilitySeries(hourly(std::move(values)), "wind", "DE");
}

inline dunkel::ResidualLoadSeries rl(std::vector<double> values) {
    return dunkel::ResidualLoadSeries(hourly(std::move(values)), "rl");
}

inline dunkel::ResolvedThreshold absolute(double v) {
    return {dunkel::ThresholdSpec::absolute(v), v, "test"};
}

/// Raw threshold value without the [0, 1] check, for TimeSeries overloads.
inline dunkel::ResolvedThreshold raw(double v) { return {dunkel::ThresholdSpec::absolute(0.0), v, "test"}; }

/// A fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("dunkel-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Long-format hourly CSV for one (technology, region) starting 2020-01-01.
inline std::string long_csv(const std::vector<double>& values, const std::string& tech = "wind",
                            const std::string& region = "DE") {
    std::string out = "timestamp,technology,region,value\n";
    const dunkel::TimePoint t0 = dunkel::parse_iso8601("2020-01-01T00:00:00Z");
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += dunkel::format_iso8601(t0 + std::chrono::hours(static_cast<long long>(i))) + "," + tech + "," +
               region + "," + std::to_string(values[i]) + "\n";
    }
    return out;
}

} // namespace fixture
