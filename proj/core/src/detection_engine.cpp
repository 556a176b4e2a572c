#include "detection_engine.hpp"

#include "dunkel/error.hpp"
#include "window_sums.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace dunkel::detail {

std::vector<Run> runs_below(std::span<const double> values, double level) {
    std::vector<Run> runs;
    bool open = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < level) {
            if (!open) {
                runs.push_back({i, i});
                open = true;
            } else {
                runs.back().last = i;
            }
        } else {
            open = false;
        }
    }
    return runs;
}

double window_tie_tolerance(std::span<const double> values) {
    double scale = 0.0;
    for (double v : values) {
        scale = std::max(scale, std::abs(v));
    }
    return 1e-12 * scale;
}

namespace {

std::vector<Run> free_segments(const std::vector<char>& excluded) {
    std::vector<Run> segments;
    bool open = false;
    for (std::size_t i = 0; i < excluded.size(); ++i) {
        if (!excluded[i]) {
            if (!open) {
                segments.push_back({i, i});
                open = true;
            } else {
                segments.back().last = i;
            }
        } else {
            open = false;
        }
    }
    return segments;
}

void collect_candidates(const WindowSums& sums, const std::vector<Run>& segments, std::size_t length, double level,
                        std::vector<Window>& out) {
    out.clear();
    for (const Run& seg : segments) {
        const std::size_t seg_len = seg.last - seg.first + 1;
        if (seg_len < length) {
            continue;
        }
        for (std::size_t s = seg.first; s + length <= seg.last + 1; ++s) {
            const double m = sums.mean(s, length);
            if (m < level) {
                out.push_back({s, length, m});
            }
        }
    }
}

} // namespace

std::vector<Window> variable_window_scan(std::span<const double> values, double level, std::size_t start_length,
                                         std::size_t step) {
    const std::size_t n = values.size();
    if (start_length < 1 || start_length > n) {
        throw ParameterError(fmt::format("start interval {} must lie in [1, {}]", start_length, n));
    }
    if (step < 1) {
        throw ParameterError("interval step must be at least 1");
    }

    const WindowSums sums(values);
    const double tol = window_tie_tolerance(values);
    std::vector<char> excluded(n, 0);
    std::vector<Window> accepted;
    std::vector<Window> candidates;

    auto valid = [&](const Window& w) { return !excluded[w.first] && !excluded[w.first + w.length - 1]; };

    for (std::size_t length = start_length;;) {
        collect_candidates(sums, free_segments(excluded), length, level, candidates);

        if (length == start_length && start_length < n && !candidates.empty()) {
            const auto lowest = std::min_element(candidates.begin(), candidates.end(),
                                                 [](const Window& a, const Window& b) { return a.mean < b.mean; });
            throw ParameterError(fmt::format(
                "start interval {} is too short: window at index {} has mean {} below {}; use a longer start interval",
                start_length, lowest->first, lowest->mean, level));
        }

        std::sort(candidates.begin(), candidates.end(), [](const Window& a, const Window& b) {
            return a.mean < b.mean || (a.mean == b.mean && a.first < b.first);
        });

        // Candidates only ever lose validity within one length, because every
        // accepted window has that same length: an overlapping candidate must
        // then contain an excluded endpoint.
        std::size_t head = 0;
        while (true) {
            while (head < candidates.size() && !valid(candidates[head])) {
                ++head;
            }
            if (head == candidates.size()) {
                break;
            }
            const double bound = candidates[head].mean + tol;
            std::size_t pick = head;
            for (std::size_t j = head + 1; j < candidates.size() && candidates[j].mean <= bound; ++j) {
                if (valid(candidates[j]) && candidates[j].first < candidates[pick].first) {
                    pick = j;
                }
            }
            const Window chosen = candidates[pick];
            std::fill(excluded.begin() + static_cast<std::ptrdiff_t>(chosen.first),
                      excluded.begin() + static_cast<std::ptrdiff_t>(chosen.first + chosen.length), 1);
            accepted.push_back(chosen);
        }

        if (length == 1) {
            break;
        }
        length = length > step ? length - step : 1;
    }

    std::sort(accepted.begin(), accepted.end(), [](const Window& a, const Window& b) { return a.first < b.first; });
    return accepted;
}

std::vector<double> clamped_cumulative(std::span<const double> increments) {
    std::vector<double> trace(increments.size());
    double deficit = 0.0;
    for (std::size_t t = 0; t < increments.size(); ++t) {
        const double candidate = deficit + increments[t];
        deficit = candidate > 0.0 ? candidate : 0.0;
        trace[t] = deficit;
    }
    return trace;
}

std::vector<DeficitSpan> deficit_spans(std::span<const double> trace) {
    std::vector<DeficitSpan> spans;
    bool open = false;
    for (std::size_t t = 0; t < trace.size(); ++t) {
        if (trace[t] > 0.0) {
            if (!open) {
                spans.push_back({t, t, t, trace[t], std::nullopt});
                open = true;
            } else {
                DeficitSpan& s = spans.back();
                s.last = t;
                if (trace[t] >= s.peak_value) {
                    s.peak_value = trace[t];
                    s.peak = t;
                }
            }
        } else if (open) {
            spans.back().zero = t;
            open = false;
        }
    }
    return spans;
}

} // namespace dunkel::detail
