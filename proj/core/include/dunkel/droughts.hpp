#pragma once

#include "dunkel/events.hpp"
#include "dunkel/thresholds.hpp"
#include "dunkel/time_series.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dunkel {

/// Basis for the FMBT energy deficit.
enum class DeficitBasis {
    moving_average, ///< sum of (thres - MA_t) over the event
    original,       ///< sum of (thres - avail_t) over below-threshold samples of the event span
};

struct VariableIntervalOptions {
    /// Longest averaging interval tried; defaults to the series length.
    std::optional<std::size_t> intdur_start;
    /// Decrement between successive intervals.
    std::size_t step = 1;
};

// Every detector below comes in two flavours. The AvailabilitySeries overload
// additionally requires the threshold to lie in [0, 1]; the TimeSeries
// overload accepts any finite scalar series (e.g. rescaled availability).
// Events carry the threshold provenance and are sorted by start_index.

/// Fixed-length drought windows packed from the start of each below-threshold run.
std::vector<ShortageEvent> detect_windows(const AvailabilitySeries& avail, const ResolvedThreshold& thres,
                                          std::size_t window_len);
std::vector<ShortageEvent> detect_windows(const TimeSeries& series, const ResolvedThreshold& thres,
                                          std::size_t window_len);

/// Maximal runs with avail_t < thres.
std::vector<ShortageEvent> detect_cbt(const AvailabilitySeries& avail, const ResolvedThreshold& thres);
std::vector<ShortageEvent> detect_cbt(const TimeSeries& series, const ResolvedThreshold& thres);

/// Maximal runs of the lagging moving average below thres (indices refer to the averaged series).
std::vector<ShortageEvent> detect_fmbt(const AvailabilitySeries& avail, const ResolvedThreshold& thres,
                                       std::size_t intdur, DeficitBasis basis = DeficitBasis::moving_average);
std::vector<ShortageEvent> detect_fmbt(const TimeSeries& series, const ResolvedThreshold& thres, std::size_t intdur,
                                       DeficitBasis basis = DeficitBasis::moving_average);

/// Unique droughts of maximal duration from a descending sweep of averaging intervals.
std::vector<ShortageEvent> detect_vmbt(const AvailabilitySeries& avail, const ResolvedThreshold& thres,
                                       const VariableIntervalOptions& options = {});
std::vector<ShortageEvent> detect_vmbt(const TimeSeries& series, const ResolvedThreshold& thres,
                                       const VariableIntervalOptions& options = {});

/// Sequent-peak droughts from the clamped cumulative deficit of (thres - avail_t).
std::vector<ShortageEvent> detect_spa_drought(const AvailabilitySeries& avail, const ResolvedThreshold& thres);
std::vector<ShortageEvent> detect_spa_drought(const TimeSeries& series, const ResolvedThreshold& thres);

/// The cumulative deficit trace underlying detect_spa_drought.
std::vector<double> spa_drought_trace(const TimeSeries& series, const ResolvedThreshold& thres);

} // namespace dunkel
