#include "dunkel/error.hpp"

#include <fmt/format.h>

namespace dunkel {

InputError::InputError(const std::string& message, std::size_t line)
    : Error(line == 0 ? message : fmt::format("line {}: {}", line, message)), line_(line) {}

} // namespace dunkel
