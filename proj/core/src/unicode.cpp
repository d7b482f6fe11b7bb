#include "paratune/unicode.hpp"

#include <algorithm>
#include <iterator>
#include <vector>

namespace paratune::unicode {
namespace {

#include "unicode_data.inc"

constexpr char32_t kCapitalSigma = 0x03A3;
constexpr char32_t kSmallSigma = 0x03C3;
constexpr char32_t kFinalSigma = 0x03C2;

bool in_ranges(const CodePointRange* first, const CodePointRange* last, char32_t cp) {
  auto it = std::upper_bound(first, last, cp,
                             [](char32_t value, const CodePointRange& r) { return value < r.first; });
  if (it == first) return false;
  --it;
  return cp <= it->last;
}

bool is_case_ignorable(char32_t cp) {
  return in_ranges(std::begin(kCaseIgnorable), std::end(kCaseIgnorable), cp);
}

bool is_cased_not_ignorable(char32_t cp) {
  return in_ranges(std::begin(kCasedNotIgnorable), std::end(kCasedNotIgnorable), cp);
}

const char* lower_mapping(char32_t cp) {
  auto it = std::lower_bound(std::begin(kLowerTable), std::end(kLowerTable), cp,
                             [](const LowerEntry& e, char32_t value) { return e.code_point < value; });
  if (it == std::end(kLowerTable) || it->code_point != cp) return nullptr;
  return it->utf8;
}

// \p{cased}\p{case-ignorable}* SIGMA !(\p{case-ignorable}*\p{cased})
bool in_final_sigma_context(const std::vector<char32_t>& cps, std::size_t i) {
  std::size_t j = i;
  bool preceded_by_cased = false;
  while (j > 0) {
    --j;
    if (!is_case_ignorable(cps[j])) {
      preceded_by_cased = is_cased_not_ignorable(cps[j]);
      break;
    }
  }
  if (!preceded_by_cased) return false;
  for (std::size_t k = i + 1; k < cps.size(); ++k) {
    if (!is_case_ignorable(cps[k])) return !is_cased_not_ignorable(cps[k]);
  }
  return true;
}

}  // namespace

std::optional<std::size_t> find_invalid_utf8(std::string_view text) {
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = s[i];
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2, cp = c & 0x1F, min = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3, cp = c & 0x0F, min = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4, cp = c & 0x07, min = 0x10000;
    } else {
      return i;
    }
    if (i + len > n) return i;
    for (std::size_t k = 1; k < len; ++k) {
      if ((s[i + k] & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (s[i + k] & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp < 0xE000)) return i;
    i += len;
  }
  return std::nullopt;
}

char32_t decode_next(std::string_view text, std::size_t& pos) {
  const auto c = static_cast<unsigned char>(text[pos]);
  if (c < 0x80) {
    ++pos;
    return c;
  }
  std::size_t len = (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : 4;
  char32_t cp = c & (len == 2 ? 0x1F : len == 3 ? 0x0F : 0x07);
  for (std::size_t k = 1; k < len && pos + k < text.size(); ++k) {
    cp = (cp << 6) | (static_cast<unsigned char>(text[pos + k]) & 0x3F);
  }
  pos += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
    case 0x1C: case 0x1D: case 0x1E: case 0x1F: case 0x20:
    case 0x85: case 0xA0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

std::string to_lower(std::string_view text) {
  bool ascii = true;
  for (char c : text) {
    if (static_cast<unsigned char>(c) >= 0x80) {
      ascii = false;
      break;
    }
  }
  std::string out;
  out.reserve(text.size());
  if (ascii) {
    for (char c : text) out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    return out;
  }

  std::vector<char32_t> cps;
  cps.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) cps.push_back(decode_next(text, pos));

  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (cp == kCapitalSigma) {
      append_utf8(out, in_final_sigma_context(cps, i) ? kFinalSigma : kSmallSigma);
    } else if (const char* mapped = lower_mapping(cp)) {
      out.append(mapped);
    } else {
      append_utf8(out, cp);
    }
  }
  return out;
}

}  // namespace paratune::unicode
