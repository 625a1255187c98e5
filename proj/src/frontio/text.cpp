#include "cgvv/text.hpp"

namespace cgvv {

bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_identifier(std::string_view s) {
  if (!s.empty() && s.front() == '$') s.remove_prefix(1);
  if (s.empty() || !is_ident_start(s.front())) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    char c = s[i];
    if (is_ident_char(c)) continue;
    if ((c == '-' || c == '.') && i + 1 < s.size() && is_ident_char(s[i + 1])) continue;
    return false;
  }
  return true;
}

std::string quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '\'';
  return out;
}

std::string quote_if_needed(std::string_view s) {
  return is_identifier(s) ? std::string(s) : quote(s);
}

}  // namespace cgvv
