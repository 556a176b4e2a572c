#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dunkel {

using TimePoint = std::chrono::sys_seconds;
using Step = std::chrono::seconds;

inline constexpr Step kHourly{3600};

/// Formats as `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_iso8601(TimePoint t);

/// Accepts `YYYY-MM-DD[T| ]HH:MM[:SS][Z|+00:00]` and plain `YYYY-MM-DD`.
/// Throws InputError on anything else, including non-UTC offsets.
TimePoint parse_iso8601(std::string_view text);

/// Calendar year (UTC) containing `t`.
int year_of(TimePoint t);

/// Index-to-time mapping of a uniformly spaced series.
struct Calendar {
    TimePoint start{};
    Step step = kHourly;
    std::size_t length = 0;

    TimePoint time_at(std::size_t index) const { return start + step * static_cast<long long>(index); }

    /// Exact index of `t`, or nullopt if `t` is off-grid or outside the series.
    std::optional<std::size_t> index_of(TimePoint t) const;

    int first_year() const { return year_of(start); }
    int last_year() const { return year_of(time_at(length == 0 ? 0 : length - 1)); }

    bool operator==(const Calendar&) const = default;
};

/// Uniformly spaced series of finite reals; index i sits at start + i * step.
class TimeSeries {
public:
    /// Throws ParameterError when empty, when step is not positive, or when a value is not finite.
    TimeSeries(TimePoint start, Step step, std::vector<double> values);

    /// Hourly series starting at the Unix epoch.
    explicit TimeSeries(std::vector<double> values);

    TimePoint start() const noexcept { return start_; }
    Step step() const noexcept { return step_; }
    double step_hours() const noexcept { return static_cast<double>(step_.count()) / 3600.0; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    TimePoint time_at(std::size_t i) const { return start_ + step_ * static_cast<long long>(i); }
    Calendar calendar() const { return {start_, step_, values_.size()}; }

    bool aligned_with(const TimeSeries& other) const noexcept {
        return start_ == other.start_ && step_ == other.step_ && size() == other.size();
    }

    /// Copy with every value multiplied by `factor` (same calendar).
    TimeSeries scaled(double factor) const;

    /// Same calendar, new values. Throws ParameterError on length mismatch.
    TimeSeries with_values(std::vector<double> values) const;

    /// Samples whose timestamps fall in calendar year `year`. Throws LookupError if none do.
    TimeSeries year_slice(int year) const;

    bool operator==(const TimeSeries&) const = default;

private:
    TimePoint start_;
    Step step_;
    std::vector<double> values_;
};

/// Identifies one series in a multi-technology, multi-region set.
struct SeriesKey {
    std::string technology;
    std::string region;

    std::string id() const { return region.empty() ? technology : technology + "/" + region; }

    auto operator<=>(const SeriesKey&) const = default;
    bool operator==(const SeriesKey&) const = default;
};

/// Availability factors in [0, 1] for one technology in one region.
class AvailabilitySeries {
public:
    /// Throws InputError naming the first index outside [0, 1].
    AvailabilitySeries(TimeSeries series, std::string technology = {}, std::string region = {});

    const TimeSeries& series() const noexcept { return series_; }
    const std::string& technology() const noexcept { return key_.technology; }
    const std::string& region() const noexcept { return key_.region; }
    const SeriesKey& key() const noexcept { return key_; }
    std::string id() const { return key_.id(); }
    std::size_t size() const noexcept { return series_.size(); }
    std::span<const double> values() const noexcept { return series_.values(); }

private:
    TimeSeries series_;
    SeriesKey key_;
};

/// Lagging moving average. value_at(t) is the mean of source[t - intdur + 1 .. t];
/// the first intdur - 1 indices are a warm-up region with no value.
class MovingAverageSeries {
public:
    MovingAverageSeries(std::size_t intdur, std::size_t source_length, std::vector<double> defined_values);

    std::size_t intdur() const noexcept { return intdur_; }
    std::size_t size() const noexcept { return source_length_; }
    std::size_t first_defined() const noexcept { return intdur_ - 1; }
    bool defined(std::size_t t) const noexcept { return t >= first_defined() && t < source_length_; }
    std::optional<double> value_at(std::size_t t) const;

    /// Values at indices first_defined() .. size() - 1.
    std::span<const double> defined_values() const noexcept { return values_; }

private:
    std::size_t intdur_;
    std::size_t source_length_;
    std::vector<double> values_;
};

/// Throws ParameterError unless 1 <= intdur <= series.size().
MovingAverageSeries moving_average(const TimeSeries& series, std::size_t intdur);

/// Linear interpolation between closest ranks; p in [0, 100].
double percentile(std::span<const double> values, double p);

struct SeriesStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    /// Values sorted in descending order.
    std::vector<double> duration_curve;
    /// sum(values) * step_hours over the whole series.
    double full_load_hours = 0.0;
    /// Same sum restricted to each calendar year.
    std::map<int, double> full_load_hours_by_year;

    /// Mean of full_load_hours_by_year over the covered calendar years.
    double mean_annual_full_load_hours() const;

    double percentile(double p) const;
};

SeriesStats summary_stats(const TimeSeries& series);

} // namespace dunkel
