#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dunkel::detail {

/// Prefix sums carried in double-double precision, so that any window sum
/// is recovered to within one rounding of the exact value. Identical
/// multisets of samples therefore yield identical window means.
class WindowSums {
public:
    explicit WindowSums(std::span<const double> values);

    /// Sum of values[first, first + length).
    double sum(std::size_t first, std::size_t length) const noexcept;

    double mean(std::size_t first, std::size_t length) const noexcept {
        return sum(first, length) / static_cast<double>(length);
    }

    std::size_t size() const noexcept { return hi_.size() - 1; }

private:
    std::vector<double> hi_;
    std::vector<double> lo_;
};

} // namespace dunkel::detail
