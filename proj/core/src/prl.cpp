#include "dunkel/prl.hpp"

#include "detection_engine.hpp"
#include "dunkel/error.hpp"

#include <fmt/format.h>

#include <cmath>

namespace dunkel {

StorageEfficiency::StorageEfficiency(double roundtrip) : roundtrip_(roundtrip) {
    if (!(std::isfinite(roundtrip) && roundtrip > 0.0 && roundtrip <= 1.0)) {
        throw ParameterError(fmt::format("round-trip efficiency {} is outside (0, 1]", roundtrip));
    }
}

ResidualLoadSeries adjust_residual_load(const ResidualLoadSeries& rl, StorageEfficiency eff, SurplusAdjustment rule) {
    if (eff.is_lossless()) {
        return rl;
    }
    std::vector<double> out(rl.values().begin(), rl.values().end());
    for (double& v : out) {
        if (v < 0.0) {
            v = rule == SurplusAdjustment::discount ? v * eff.roundtrip() : v / eff.roundtrip();
        }
    }
    return ResidualLoadSeries(rl.series().with_values(std::move(out)), rl.name());
}

namespace {

ShortageEvent zero_line_event(Method method, std::size_t first, std::size_t last, double deficit) {
    ShortageEvent e;
    e.method = method;
    e.start_index = first;
    e.end_index = last;
    e.duration = last - first + 1;
    e.energy_deficit = deficit;
    e.threshold = ThresholdRecord::zero_line();
    return e;
}

std::vector<double> negated(std::span<const double> values) {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = -values[i];
    }
    return out;
}

} // namespace

std::vector<ShortageEvent> detect_caz(const ResidualLoadSeries& rl) {
    const auto values = rl.values();
    const auto flipped = negated(values);
    const double hours = rl.series().step_hours();
    std::vector<ShortageEvent> events;
    for (const auto& run : detail::runs_below(flipped, 0.0)) {
        double sum = 0.0;
        for (std::size_t t = run.first; t <= run.last; ++t) {
            sum += values[t];
        }
        auto e = zero_line_event(Method::caz, run.first, run.last, sum * hours);
        e.truncated = run.last + 1 == values.size();
        events.push_back(e);
    }
    return events;
}

std::vector<ShortageEvent> detect_fmaz(const ResidualLoadSeries& rl, std::size_t intdur) {
    const MovingAverageSeries ma = moving_average(rl.series(), intdur);
    const auto averaged = ma.defined_values();
    const auto flipped = negated(averaged);
    const std::size_t offset = ma.first_defined();
    const double hours = rl.series().step_hours();
    std::vector<ShortageEvent> events;
    for (const auto& run : detail::runs_below(flipped, 0.0)) {
        double sum = 0.0;
        for (std::size_t t = run.first; t <= run.last; ++t) {
            sum += averaged[t];
        }
        auto e = zero_line_event(Method::fmaz, run.first + offset, run.last + offset, sum * hours);
        e.intdur = intdur;
        e.truncated = e.end_index + 1 == rl.size();
        events.push_back(e);
    }
    return events;
}

std::vector<ShortageEvent> detect_vmaz(const ResidualLoadSeries& rl, const VariableIntervalOptions& options) {
    const auto values = rl.values();
    const auto flipped = negated(values);
    const std::size_t start = options.intdur_start.value_or(values.size());
    const double hours = rl.series().step_hours();
    std::vector<ShortageEvent> events;
    for (const auto& w : detail::variable_window_scan(flipped, 0.0, start, options.step)) {
        const std::size_t last = w.first + w.length - 1;
        double sum = 0.0;
        for (std::size_t t = w.first; t <= last; ++t) {
            sum += values[t];
        }
        auto e = zero_line_event(Method::vmaz, w.first, last, sum * hours);
        e.intdur = w.length;
        events.push_back(e);
    }
    return events;
}

std::vector<double> spa_prl_trace(const ResidualLoadSeries& rl, StorageEfficiency eff, SurplusAdjustment rule) {
    const auto adjusted = adjust_residual_load(rl, eff, rule);
    return detail::clamped_cumulative(adjusted.values());
}

std::vector<ShortageEvent> detect_spa_prl(const ResidualLoadSeries& rl, StorageEfficiency eff,
                                          SurplusAdjustment rule) {
    const auto trace = spa_prl_trace(rl, eff, rule);
    const double hours = rl.series().step_hours();
    const Method method = eff.is_lossless() ? Method::spa_prl : Method::spa_adj;
    std::vector<ShortageEvent> events;
    for (const auto& span : detail::deficit_spans(trace)) {
        ShortageEvent e;
        e.method = method;
        e.start_index = span.first;
        e.end_index = span.last;
        e.duration = span.peak - span.first + 1;
        e.energy_deficit = span.peak_value * hours;
        e.truncated = !span.zero.has_value();
        if (span.zero) {
            e.recovery = *span.zero - span.peak;
        }
        e.threshold = ThresholdRecord::zero_line();
        events.push_back(e);
    }
    return events;
}

} // namespace dunkel
