#include "window_sums.hpp"

namespace dunkel::detail {
namespace {

struct TwoSum {
    double sum;
    double err;
};

inline TwoSum two_sum(double a, double b) noexcept {
    const double s = a + b;
    const double bp = s - a;
    const double ap = s - bp;
    return {s, (a - ap) + (b - bp)};
}

inline TwoSum quick_two_sum(double a, double b) noexcept {
    const double s = a + b;
    return {s, b - (s - a)};
}

} // namespace

WindowSums::WindowSums(std::span<const double> values) : hi_(values.size() + 1, 0.0), lo_(values.size() + 1, 0.0) {
    double hi = 0.0;
    double lo = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto [s, e] = two_sum(hi, values[i]);
        const auto [h, l] = quick_two_sum(s, lo + e);
        hi = h;
        lo = l;
        hi_[i + 1] = hi;
        lo_[i + 1] = lo;
    }
}

double WindowSums::sum(std::size_t first, std::size_t length) const noexcept {
    const std::size_t last = first + length;
    const auto [s, e] = two_sum(hi_[last], -hi_[first]);
    return s + (e + (lo_[last] - lo_[first]));
}

} // namespace dunkel::detail
