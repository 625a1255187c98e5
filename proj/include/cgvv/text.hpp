#pragma once

#include <string>
#include <string_view>

namespace cgvv {

bool is_ident_start(char c);
bool is_ident_char(char c);

/// Letters, digits and `_`, with inner `-` or `.` allowed between identifier
/// characters (`member-of`, `domain_of.F1`). A leading `$` marks a template
/// placeholder.
bool is_identifier(std::string_view s);

/// Bare if `is_identifier`, otherwise single-quoted with `\` escapes.
std::string quote_if_needed(std::string_view s);
std::string quote(std::string_view s);

}  // namespace cgvv
