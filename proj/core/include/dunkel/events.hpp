#pragma once

#include "dunkel/thresholds.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace dunkel {

enum class Method { window, cbt, fmbt, vmbt, spa, caz, fmaz, vmaz, spa_prl, spa_adj };

/// Upper-case tag used in exports: WINDOW, CBT, ..., SPA_PRL, SPA_ADJ.
std::string_view to_string(Method method);

/// Accepts the upper-case tags (case-insensitive). Throws ParameterError otherwise.
Method parse_method(std::string_view name);

bool is_spa_family(Method method) noexcept;
bool uses_averaging_interval(Method method) noexcept;

/// Threshold provenance stamped on each event.
struct ThresholdRecord {
    ThresholdKind kind = ThresholdKind::zero_line;
    double parameter = 0.0;
    double value = 0.0;

    static ThresholdRecord from(const ResolvedThreshold& t) { return {t.spec.kind(), t.spec.parameter(), t.value}; }
    static ThresholdRecord zero_line() { return {}; }

    bool operator==(const ThresholdRecord&) const = default;
};

/// One identified shortage period.
///
/// For run-based methods, [start_index, end_index] is the qualifying run and
/// duration = end_index - start_index + 1. Moving-average methods index the
/// averaged series: the underlying samples begin at raw_start_index().
///
/// For the SPA family, start_index is the first step with a positive cumulative
/// deficit and end_index the last one before it returns to zero (or the last
/// sample when truncated). duration runs from start_index to the last
/// attainment of the event's maximum deficit; recovery counts the steps from
/// that maximum to the first zero.
struct ShortageEvent {
    Method method = Method::cbt;
    std::size_t start_index = 0;
    std::size_t end_index = 0;
    std::size_t duration = 0;
    double energy_deficit = 0.0;
    std::optional<std::size_t> intdur;
    std::optional<std::size_t> recovery;
    bool truncated = false;
    ThresholdRecord threshold;

    std::size_t raw_start_index() const noexcept {
        if ((method == Method::fmbt || method == Method::fmaz) && intdur) {
            return start_index + 1 - *intdur;
        }
        return start_index;
    }

    /// VMBT/VMAZ deficits hover near zero by construction and carry no sizing meaning.
    bool deficit_informational() const noexcept { return method == Method::vmbt || method == Method::vmaz; }

    bool operator==(const ShortageEvent&) const = default;
};

} // namespace dunkel
