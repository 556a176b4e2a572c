#include "dunkel/events.hpp"

#include "dunkel/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

namespace dunkel {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 10> kMethodNames{{
    {Method::window, "WINDOW"},
    {Method::cbt, "CBT"},
    {Method::fmbt, "FMBT"},
    {Method::vmbt, "VMBT"},
    {Method::spa, "SPA"},
    {Method::caz, "CAZ"},
    {Method::fmaz, "FMAZ"},
    {Method::vmaz, "VMAZ"},
    {Method::spa_prl, "SPA_PRL"},
    {Method::spa_adj, "SPA_ADJ"},
}};

} // namespace

std::string_view to_string(Method method) {
    for (const auto& [m, name] : kMethodNames) {
        if (m == method) {
            return name;
        }
    }
    return "UNKNOWN";
}

Method parse_method(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    for (const auto& [m, n] : kMethodNames) {
        if (n == upper) {
            return m;
        }
    }
    throw ParameterError(fmt::format("unknown method '{}'", name));
}

bool is_spa_family(Method method) noexcept {
    return method == Method::spa || method == Method::spa_prl || method == Method::spa_adj;
}

bool uses_averaging_interval(Method method) noexcept {
    return method == Method::fmbt || method == Method::vmbt || method == Method::fmaz || method == Method::vmaz;
}

} // namespace dunkel
