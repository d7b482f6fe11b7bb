#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace paratune::unicode {

// Returns the byte offset of the first invalid UTF-8 sequence, or nullopt when
// the whole input is well-formed (overlong forms and surrogates are invalid).
std::optional<std::size_t> find_invalid_utf8(std::string_view text);

// Decodes the code point starting at `pos` and advances `pos` past it.
// Input must be valid UTF-8.
char32_t decode_next(std::string_view text, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

// Whitespace exactly as Python's str.isspace() defines it.
bool is_space(char32_t cp);

// Python-compatible str.lower(), including the Final_Sigma context rule.
std::string to_lower(std::string_view text);

// Python-compatible str.split() with no separator.
template <typename Fn>
void for_each_whitespace_field(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t field_start = std::string_view::npos;
  while (pos < text.size()) {
    const std::size_t at = pos;
    const char32_t cp = decode_next(text, pos);
    if (is_space(cp)) {
      if (field_start != std::string_view::npos) {
        fn(text.substr(field_start, at - field_start));
        field_start = std::string_view::npos;
      }
    } else if (field_start == std::string_view::npos) {
      field_start = at;
    }
  }
  if (field_start != std::string_view::npos) fn(text.substr(field_start));
}

}  // namespace paratune::unicode
