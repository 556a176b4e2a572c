#pragma once

#include "dunkel/droughts.hpp"
#include "dunkel/events.hpp"
#include "dunkel/time_series.hpp"

#include <string>
#include <vector>

namespace dunkel {

/// Load minus VRE supply in power units; positive values are supply gaps.
class ResidualLoadSeries {
public:
    explicit ResidualLoadSeries(TimeSeries series, std::string name = {})
        : series_(std::move(series)), name_(std::move(name)) {}

    const TimeSeries& series() const noexcept { return series_; }
    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return series_.size(); }
    std::span<const double> values() const noexcept { return series_.values(); }

private:
    TimeSeries series_;
    std::string name_;
};

/// Round-trip efficiency of the storage that balances deficits with surplus.
class StorageEfficiency {
public:
    /// Throws ParameterError unless 0 < roundtrip <= 1.
    explicit StorageEfficiency(double roundtrip);

    static StorageEfficiency lossless() { return StorageEfficiency(1.0); }

    double roundtrip() const noexcept { return roundtrip_; }
    bool is_lossless() const noexcept { return roundtrip_ == 1.0; }

private:
    double roundtrip_;
};

/// How surplus (negative residual load) is converted before it offsets deficits.
enum class SurplusAdjustment {
    /// rl * eff: a unit of surplus recovers only eff units of deficit.
    discount,
    /// rl / eff.
    literal_division,
};

/// Positive values unchanged; negative values adjusted per `rule`. eff = 1 is the identity.
ResidualLoadSeries adjust_residual_load(const ResidualLoadSeries& rl, StorageEfficiency eff,
                                        SurplusAdjustment rule = SurplusAdjustment::discount);

/// Maximal runs of rl_t > 0; deficit is the energy sum(rl_t) * step_hours.
std::vector<ShortageEvent> detect_caz(const ResidualLoadSeries& rl);

/// Maximal runs of the lagging moving average above zero; deficit sums the averaged energy.
std::vector<ShortageEvent> detect_fmaz(const ResidualLoadSeries& rl, std::size_t intdur);

/// Variable-duration windows with positive mean residual load, most severe first.
std::vector<ShortageEvent> detect_vmaz(const ResidualLoadSeries& rl, const VariableIntervalOptions& options = {});

/// Sequent-peak residual-load events on the efficiency-adjusted series.
/// Tagged SPA_PRL for lossless storage and SPA_ADJ otherwise; deficits in energy units.
std::vector<ShortageEvent> detect_spa_prl(const ResidualLoadSeries& rl,
                                          StorageEfficiency eff = StorageEfficiency::lossless(),
                                          SurplusAdjustment rule = SurplusAdjustment::discount);

/// Cumulative deficit trace (power * samples, not yet scaled to energy) of detect_spa_prl.
std::vector<double> spa_prl_trace(const ResidualLoadSeries& rl, StorageEfficiency eff = StorageEfficiency::lossless(),
                                  SurplusAdjustment rule = SurplusAdjustment::discount);

} // namespace dunkel
