#include "dunkel/time_series.hpp"

#include "dunkel/error.hpp"
#include "window_sums.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace dunkel {

namespace chr = std::chrono;

std::string format_iso8601(TimePoint t) {
    const auto day = chr::floor<chr::days>(t);
    const chr::year_month_day ymd{day};
    const chr::hh_mm_ss hms{t - day};
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hms.hours().count(),
                       hms.minutes().count(), hms.seconds().count());
}

namespace {

bool read_int(std::string_view text, std::size_t pos, std::size_t width, int& out) {
    if (pos + width > text.size()) {
        return false;
    }
    const char* first = text.data() + pos;
    const char* last = first + width;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace

TimePoint parse_iso8601(std::string_view text) {
    auto fail = [&]() -> InputError { return InputError(fmt::format("invalid ISO 8601 UTC timestamp '{}'", text)); };

    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    if (!read_int(text, 0, 4, year) || text.size() < 10 || text[4] != '-' || !read_int(text, 5, 2, month) ||
        text[7] != '-' || !read_int(text, 8, 2, day)) {
        throw fail();
    }
    std::size_t pos = 10;
    if (pos < text.size()) {
        if (text[pos] != 'T' && text[pos] != ' ') {
            throw fail();
        }
        if (!read_int(text, pos + 1, 2, hour) || pos + 3 >= text.size() || text[pos + 3] != ':' ||
            !read_int(text, pos + 4, 2, minute)) {
            throw fail();
        }
        pos += 6;
        if (pos < text.size() && text[pos] == ':') {
            if (!read_int(text, pos + 1, 2, second)) {
                throw fail();
            }
            pos += 3;
        }
        const std::string_view zone = text.substr(pos);
        if (!(zone.empty() || zone == "Z" || zone == "+00:00" || zone == "+0000")) {
            throw fail();
        }
    }
    const chr::year_month_day ymd{chr::year{year}, chr::month{static_cast<unsigned>(month)},
                                  chr::day{static_cast<unsigned>(day)}};
    if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) {
        throw fail();
    }
    return chr::sys_days{ymd} + chr::hours{hour} + chr::minutes{minute} + chr::seconds{second};
}

int year_of(TimePoint t) {
    return static_cast<int>(chr::year_month_day{chr::floor<chr::days>(t)}.year());
}

std::optional<std::size_t> Calendar::index_of(TimePoint t) const {
    if (t < start) {
        return std::nullopt;
    }
    const auto offset = (t - start).count();
    if (offset % step.count() != 0) {
        return std::nullopt;
    }
    const auto index = static_cast<std::size_t>(offset / step.count());
    if (index >= length) {
        return std::nullopt;
    }
    return index;
}

TimeSeries::TimeSeries(TimePoint start, Step step, std::vector<double> values)
    : start_(start), step_(step), values_(std::move(values)) {
    if (values_.empty()) {
        throw ParameterError("time series must contain at least one value");
    }
    if (step_.count() <= 0) {
        throw ParameterError(fmt::format("time series step must be positive, got {} s", step_.count()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ParameterError(fmt::format("time series value at index {} is not finite", i));
        }
    }
}

TimeSeries::TimeSeries(std::vector<double> values) : TimeSeries(TimePoint{}, kHourly, std::move(values)) {}

TimeSeries TimeSeries::scaled(double factor) const {
    std::vector<double> out(values_);
    for (double& v : out) {
        v *= factor;
    }
    return {start_, step_, std::move(out)};
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
    if (values.size() != values_.size()) {
        throw ParameterError(
            fmt::format("replacement values have length {}, series has {}", values.size(), values_.size()));
    }
    return {start_, step_, std::move(values)};
}

TimeSeries TimeSeries::year_slice(int year) const {
    std::size_t first = values_.size();
    std::size_t last = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (year_of(time_at(i)) == year) {
            first = std::min(first, i);
            last = i;
        }
    }
    if (first == values_.size()) {
        throw LookupError(fmt::format("series has no samples in year {}", year));
    }
    return {time_at(first), step_, std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                                                        values_.begin() + static_cast<std::ptrdiff_t>(last + 1))};
}

AvailabilitySeries::AvailabilitySeries(TimeSeries series, std::string technology, std::string region)
    : series_(std::move(series)), key_{std::move(technology), std::move(region)} {
    const auto values = series_.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0.0 || values[i] > 1.0) {
            throw InputError(fmt::format("availability factor {} at index {} ({}) of series '{}' is outside [0, 1]",
                                         values[i], i, format_iso8601(series_.time_at(i)), key_.id()));
        }
    }
}

MovingAverageSeries::MovingAverageSeries(std::size_t intdur, std::size_t source_length,
                                         std::vector<double> defined_values)
    : intdur_(intdur), source_length_(source_length), values_(std::move(defined_values)) {
    if (intdur_ == 0 || intdur_ > source_length_ || values_.size() != source_length_ - intdur_ + 1) {
        throw ParameterError("moving average shape does not match its averaging interval");
    }
}

std::optional<double> MovingAverageSeries::value_at(std::size_t t) const {
    if (!defined(t)) {
        return std::nullopt;
    }
    return values_[t - first_defined()];
}

MovingAverageSeries moving_average(const TimeSeries& series, std::size_t intdur) {
    if (intdur < 1) {
        throw ParameterError("averaging interval must be at least 1 sample");
    }
    if (intdur > series.size()) {
        throw ParameterError(fmt::format("averaging interval {} exceeds series length {}", intdur, series.size()));
    }
    const auto values = series.values();
    if (intdur == 1) {
        return {1, values.size(), std::vector<double>(values.begin(), values.end())};
    }
    const detail::WindowSums sums(values);
    std::vector<double> out(values.size() - intdur + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = sums.mean(i, intdur);
    }
    return {intdur, values.size(), std::move(out)};
}

double percentile(std::span<const double> values, double p) {
    if (values.empty()) {
        throw ParameterError("percentile of an empty series is undefined");
    }
    if (!(p >= 0.0 && p <= 100.0)) {
        throw ParameterError(fmt::format("percentile {} is outside [0, 100]", p));
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double rank = p / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lower = static_cast<std::size_t>(std::floor(rank));
    const std::size_t upper = std::min(lower + 1, sorted.size() - 1);
    const double frac = rank - static_cast<double>(lower);
    if (frac == 0.0) {
        return sorted[lower];
    }
    return sorted[lower] + frac * (sorted[upper] - sorted[lower]);
}

double SeriesStats::mean_annual_full_load_hours() const {
    if (full_load_hours_by_year.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto& [year, flh] : full_load_hours_by_year) {
        total += flh;
    }
    return total / static_cast<double>(full_load_hours_by_year.size());
}

double SeriesStats::percentile(double p) const {
    // duration_curve is descending; percentile() sorts its own copy.
    return dunkel::percentile(duration_curve, p);
}

SeriesStats summary_stats(const TimeSeries& series) {
    const auto values = series.values();
    if (values.empty()) {
        throw ParameterError("summary statistics require a non-empty series");
    }
    SeriesStats stats;
    const detail::WindowSums sums(values);
    const double total = sums.sum(0, values.size());
    stats.mean = total / static_cast<double>(values.size());
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    stats.min = *lo;
    stats.max = *hi;
    // Rounding can push the mean a hair outside [min, max] for near-constant series.
    stats.mean = std::clamp(stats.mean, stats.min, stats.max);
    stats.duration_curve.assign(values.begin(), values.end());
    std::sort(stats.duration_curve.begin(), stats.duration_curve.end(), std::greater<>());
    stats.full_load_hours = total * series.step_hours();
    for (std::size_t i = 0; i < values.size(); ++i) {
        stats.full_load_hours_by_year[year_of(series.time_at(i))] += values[i] * series.step_hours();
    }
    return stats;
}

} // namespace dunkel
