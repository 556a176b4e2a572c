#include "dunkel/droughts.hpp"

#include "detection_engine.hpp"
#include "dunkel/error.hpp"

#include <fmt/format.h>

namespace dunkel {

namespace {

void require_unit_threshold(const ResolvedThreshold& thres) {
    if (thres.value < 0.0 || thres.value > 1.0) {
        throw ParameterError(fmt::format("drought threshold {} is outside [0, 1]", thres.value));
    }
}

ShortageEvent make_event(Method method, std::size_t first, std::size_t last, double deficit,
                         const ResolvedThreshold& thres) {
    ShortageEvent e;
    e.method = method;
    e.start_index = first;
    e.end_index = last;
    e.duration = last - first + 1;
    e.energy_deficit = deficit;
    e.threshold = ThresholdRecord::from(thres);
    return e;
}

double deficit_below(std::span<const double> values, std::size_t first, std::size_t last, double thres) {
    double total = 0.0;
    for (std::size_t t = first; t <= last; ++t) {
        if (values[t] < thres) {
            total += thres - values[t];
        }
    }
    return total;
}

} // namespace

std::vector<ShortageEvent> detect_windows(const TimeSeries& series, const ResolvedThreshold& thres,
                                          std::size_t window_len) {
    if (window_len < 1 || window_len > series.size()) {
        throw ParameterError(
            fmt::format("window length {} must lie in [1, {}]", window_len, series.size()));
    }
    const auto values = series.values();
    std::vector<ShortageEvent> events;
    for (const auto& run : detail::runs_below(values, thres.value)) {
        const std::size_t run_len = run.last - run.first + 1;
        for (std::size_t k = 0; k < run_len / window_len; ++k) {
            const std::size_t first = run.first + k * window_len;
            const std::size_t last = first + window_len - 1;
            events.push_back(make_event(Method::window, first, last, deficit_below(values, first, last, thres.value),
                                        thres));
        }
    }
    return events;
}

std::vector<ShortageEvent> detect_windows(const AvailabilitySeries& avail, const ResolvedThreshold& thres,
                                          std::size_t window_len) {
    require_unit_threshold(thres);
    return detect_windows(avail.series(), thres, window_len);
}

std::vector<ShortageEvent> detect_cbt(const TimeSeries& series, const ResolvedThreshold& thres) {
    const auto values = series.values();
    std::vector<ShortageEvent> events;
    for (const auto& run : detail::runs_below(values, thres.value)) {
        double deficit = 0.0;
        for (std::size_t t = run.first; t <= run.last; ++t) {
            deficit += thres.value - values[t];
        }
        auto e = make_event(Method::cbt, run.first, run.last, deficit, thres);
        e.truncated = run.last + 1 == values.size();
        events.push_back(e);
    }
    return events;
}

std::vector<ShortageEvent> detect_cbt(const AvailabilitySeries& avail, const ResolvedThreshold& thres) {
    require_unit_threshold(thres);
    return detect_cbt(avail.series(), thres);
}

std::vector<ShortageEvent> detect_fmbt(const TimeSeries& series, const ResolvedThreshold& thres, std::size_t intdur,
                                       DeficitBasis basis) {
    const MovingAverageSeries ma = moving_average(series, intdur);
    const auto averaged = ma.defined_values();
    const std::size_t offset = ma.first_defined();
    std::vector<ShortageEvent> events;
    for (const auto& run : detail::runs_below(averaged, thres.value)) {
        double deficit = 0.0;
        if (basis == DeficitBasis::moving_average) {
            for (std::size_t t = run.first; t <= run.last; ++t) {
                deficit += thres.value - averaged[t];
            }
        } else {
            deficit = deficit_below(series.values(), run.first + offset, run.last + offset, thres.value);
        }
        auto e = make_event(Method::fmbt, run.first + offset, run.last + offset, deficit, thres);
        e.intdur = intdur;
        e.truncated = e.end_index + 1 == series.size();
        events.push_back(e);
    }
    return events;
}

std::vector<ShortageEvent> detect_fmbt(const AvailabilitySeries& avail, const ResolvedThreshold& thres,
                                       std::size_t intdur, DeficitBasis basis) {
    require_unit_threshold(thres);
    return detect_fmbt(avail.series(), thres, intdur, basis);
}

std::vector<ShortageEvent> detect_vmbt(const TimeSeries& series, const ResolvedThreshold& thres,
                                       const VariableIntervalOptions& options) {
    const auto values = series.values();
    const std::size_t start = options.intdur_start.value_or(values.size());
    std::vector<ShortageEvent> events;
    for (const auto& w : detail::variable_window_scan(values, thres.value, start, options.step)) {
        const std::size_t last = w.first + w.length - 1;
        double deficit = 0.0;
        for (std::size_t t = w.first; t <= last; ++t) {
            deficit += thres.value - values[t];
        }
        auto e = make_event(Method::vmbt, w.first, last, deficit, thres);
        e.intdur = w.length;
        events.push_back(e);
    }
    return events;
}

std::vector<ShortageEvent> detect_vmbt(const AvailabilitySeries& avail, const ResolvedThreshold& thres,
                                       const VariableIntervalOptions& options) {
    require_unit_threshold(thres);
    return detect_vmbt(avail.series(), thres, options);
}

std::vector<double> spa_drought_trace(const TimeSeries& series, const ResolvedThreshold& thres) {
    const auto values = series.values();
    std::vector<double> increments(values.size());
    for (std::size_t t = 0; t < values.size(); ++t) {
        increments[t] = thres.value - values[t];
    }
    return detail::clamped_cumulative(increments);
}

std::vector<ShortageEvent> detect_spa_drought(const TimeSeries& series, const ResolvedThreshold& thres) {
    const auto trace = spa_drought_trace(series, thres);
    std::vector<ShortageEvent> events;
    for (const auto& span : detail::deficit_spans(trace)) {
        ShortageEvent e;
        e.method = Method::spa;
        e.start_index = span.first;
        e.end_index = span.last;
        e.duration = span.peak - span.first + 1;
        e.energy_deficit = span.peak_value;
        e.truncated = !span.zero.has_value();
        if (span.zero) {
            e.recovery = *span.zero - span.peak;
        }
        e.threshold = ThresholdRecord::from(thres);
        events.push_back(e);
    }
    return events;
}

std::vector<ShortageEvent> detect_spa_drought(const AvailabilitySeries& avail, const ResolvedThreshold& thres) {
    require_unit_threshold(thres);
    return detect_spa_drought(avail.series(), thres);
}

} // namespace dunkel
