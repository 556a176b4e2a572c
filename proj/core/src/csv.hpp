#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dunkel::detail {

/// Splits one CSV record (RFC 4180 quoting, no embedded newlines).
/// Returns false on an unterminated quote.
bool split_csv_record(std::string_view line, std::vector<std::string>& fields);

std::string_view trim(std::string_view text);

} // namespace dunkel::detail
