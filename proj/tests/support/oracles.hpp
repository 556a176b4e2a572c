#pragma once

// Reference implementations used to check the library. They share no code
// with it and favour the most literal reading over speed.

#include "dunkel/events.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Window {
    std::size_t first = 0;
    std::size_t length = 0;
};

inline long double direct_mean(const std::vector<double>& x, std::size_t first, std::size_t length) {
    long double s = 0.0L;
    for (std::size_t i = first; i < first + length; ++i) {
        s += x[i];
    }
    return s / static_cast<long double>(length);
}

/// Exhaustive variable-window search: for each length from `start` down to 1
/// (decrement `step`, 1 always last), repeatedly take the free window with
/// mean < level that has the lowest mean (earliest start among means within
/// 1e-12 * max|x|), mark its samples used, until none qualifies.
inline std::vector<Window> variable_windows(const std::vector<double>& x, double level, std::size_t start,
                                            std::size_t step) {
    const std::size_t n = x.size();
    long double scale = 0.0L;
    for (double v : x) {
        scale = std::max(scale, static_cast<long double>(std::fabs(v)));
    }
    const long double tol = 1e-12L * scale;
    std::vector<bool> used(n, false);
    std::vector<Window> out;

    std::vector<std::size_t> lengths;
    for (std::size_t len = start;; len = len > step ? len - step : 1) {
        lengths.push_back(len);
        if (len == 1) {
            break;
        }
    }
    for (std::size_t len : lengths) {
        while (true) {
            std::optional<std::size_t> best;
            long double best_mean = 0.0L;
            std::vector<std::pair<std::size_t, long double>> qualifying;
            for (std::size_t s = 0; s + len <= n; ++s) {
                bool free = true;
                for (std::size_t i = s; i < s + len; ++i) {
                    free = free && !used[i];
                }
                if (!free) {
                    continue;
                }
                const long double m = direct_mean(x, s, len);
                if (m < level) {
                    qualifying.emplace_back(s, m);
                    if (!best || m < best_mean) {
                        best = s;
                        best_mean = m;
                    }
                }
            }
            if (!best) {
                break;
            }
            if (len == start && start < n) {
                throw std::invalid_argument("start interval too short");
            }
            std::size_t pick = *best;
            for (const auto& [s, m] : qualifying) {
                if (m <= best_mean + tol && s < pick) {
                    pick = s;
                }
            }
            for (std::size_t i = pick; i < pick + len; ++i) {
                used[i] = true;
            }
            out.push_back({pick, len});
        }
    }
    std::sort(out.begin(), out.end(), [](const Window& a, const Window& b) { return a.first < b.first; });
    return out;
}

/// Clamped cumulative sum, recomputed at every t from the most recent reset.
inline std::vector<double> clamped_prefix(const std::vector<double>& d) {
    std::vector<double> ed(d.size(), 0.0);
    for (std::size_t t = 0; t < d.size(); ++t) {
        // Last index before t at which the trace was zero; -1 if none.
        std::ptrdiff_t reset = -1;
        for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(t) - 1; k >= 0; --k) {
            if (ed[static_cast<std::size_t>(k)] == 0.0) {
                reset = k;
                break;
            }
        }
        double acc = 0.0;
        for (std::size_t k = static_cast<std::size_t>(reset + 1); k <= t; ++k) {
            acc = acc + d[k];
        }
        ed[t] = acc > 0.0 ? acc : 0.0;
    }
    return ed;
}

/// Lindley form: max(0, max_s sum_{k=s..t} d_k). Agrees with clamped_prefix up to rounding.
inline std::vector<double> max_suffix_sum(const std::vector<double>& d) {
    std::vector<double> ed(d.size());
    for (std::size_t t = 0; t < d.size(); ++t) {
        long double best = 0.0L, acc = 0.0L;
        for (std::size_t s = t + 1; s-- > 0;) {
            acc += d[s];
            best = std::max(best, acc);
        }
        ed[t] = static_cast<double>(best);
    }
    return ed;
}

struct SpaEvent {
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t duration = 0;
    double peak = 0.0;
    std::optional<std::size_t> recovery;
    bool truncated = false;
};

/// Events of a clamped trace: positive spans, duration to the last maximum, recovery to the next zero.
inline std::vector<SpaEvent> spa_events(const std::vector<double>& ed) {
    std::vector<SpaEvent> out;
    std::size_t t = 0;
    while (t < ed.size()) {
        if (ed[t] <= 0.0) {
            ++t;
            continue;
        }
        SpaEvent e;
        e.start = t;
        std::size_t peak_at = t;
        std::size_t u = t;
        for (; u < ed.size() && ed[u] > 0.0; ++u) {
            if (ed[u] >= ed[peak_at]) {
                peak_at = u;
            }
        }
        e.end = u - 1;
        e.duration = peak_at - t + 1;
        e.peak = ed[peak_at];
        if (u < ed.size()) {
            e.recovery = u - peak_at;
        } else {
            e.truncated = true;
        }
        out.push_back(e);
        t = u;
    }
    return out;
}

/// Storage that charges `surplus` units of grid energy stores surplus * eff.
/// Returns the deficit-equivalent offset, negative.
inline double storage_offset(double surplus, double eff) {
    const double stored_before = 0.0;
    const double stored_after = stored_before + surplus * eff;
    return -(stored_after - stored_before);
}

inline std::vector<double> uniform_series(std::mt19937_64& rng, std::size_t n, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> x(n);
    for (double& v : x) {
        v = u(rng);
    }
    return x;
}

/// Residual-load-like series: a normal body with occasional large surplus or deficit excursions.
inline std::vector<double> residual_mixture(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> body(0.0, 10.0);
    std::normal_distribution<double> tail(0.0, 40.0);
    std::bernoulli_distribution pick_tail(0.1);
    std::vector<double> x(n);
    double level = 0.0;
    for (double& v : x) {
        level = 0.8 * level + (pick_tail(rng) ? tail(rng) : body(rng));
        v = level;
    }
    return x;
}

} // namespace oracle
