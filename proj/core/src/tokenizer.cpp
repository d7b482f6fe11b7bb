#include "paratune/tokenizer.hpp"

#include <string>

#include "paratune/error.hpp"
#include "paratune/unicode.hpp"

namespace paratune {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// [\{-\~\[-\` -\&\(-\+\:-\@\/]
bool is_split_symbol(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= '{' && u <= '~') || (u >= '[' && u <= '`') || (u >= ' ' && u <= '&') ||
         (u >= '(' && u <= '+') || (u >= ':' && u <= '@') || u == '/';
}

bool is_period_or_comma(char c) { return c == '.' || c == ','; }

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = s.find(from, pos);
    if (hit == std::string::npos) break;
    out.append(s, pos, hit - pos);
    out.append(to);
    pos = hit + from.size();
  }
  out.append(s, pos, std::string::npos);
  s = std::move(out);
}

// The regex passes below are single-pass, left-to-right, non-overlapping
// substitutions, mirroring re.sub. Working on bytes instead of code points is
// equivalent because every pattern byte is ASCII and [^0-9] only has to reject
// ASCII digits.
std::string split_symbols(const std::string& s) {
  std::string out;
  out.reserve(s.size() * 2);
  for (char c : s) {
    if (is_split_symbol(c)) {
      out.push_back(' ');
      out.push_back(c);
      out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

// ([^0-9])([\.,]) -> "\1 \2 "
std::string split_after_non_digit(const std::string& s) {
  std::string out;
  out.reserve(s.size() + s.size() / 4);
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && !is_digit(s[i]) && is_period_or_comma(s[i + 1])) {
      out.push_back(s[i]);
      out.push_back(' ');
      out.push_back(s[i + 1]);
      out.push_back(' ');
      i += 2;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

// ([\.,])([^0-9]) -> " \1 \2"
std::string split_before_non_digit(const std::string& s) {
  std::string out;
  out.reserve(s.size() + s.size() / 4);
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && is_period_or_comma(s[i]) && !is_digit(s[i + 1])) {
      out.push_back(' ');
      out.push_back(s[i]);
      out.push_back(' ');
      out.push_back(s[i + 1]);
      i += 2;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

// ([0-9])(-) -> "\1 \2 "
std::string split_dash_after_digit(const std::string& s) {
  std::string out;
  out.reserve(s.size() + s.size() / 8);
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && is_digit(s[i]) && s[i + 1] == '-') {
      out.push_back(s[i]);
      out.push_back(' ');
      out.push_back('-');
      out.push_back(' ');
      i += 2;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

// \s+ -> " ", then strip().
std::string squeeze_whitespace(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t at = pos;
    const char32_t cp = unicode::decode_next(s, pos);
    if (unicode::is_space(cp)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.append(s, at, pos - at);
  }
  return out;
}

}  // namespace

std::string tokenize_13a_line(std::string_view text) {
  std::string line(text);
  replace_all(line, "<skipped>", "");
  replace_all(line, "-\n", "");
  replace_all(line, "\n", " ");
  replace_all(line, "&quot;", "\"");
  replace_all(line, "&amp;", "&");
  replace_all(line, "&lt;", "<");
  replace_all(line, "&gt;", ">");

  std::string padded;
  padded.reserve(line.size() + 2);
  padded.push_back(' ');
  padded.append(line);
  padded.push_back(' ');

  std::string s = split_symbols(padded);
  s = split_after_non_digit(s);
  s = split_before_non_digit(s);
  s = split_dash_after_digit(s);
  return squeeze_whitespace(s);
}

TokenSequence tokenize(std::string_view text, const TokenizerConfig& cfg) {
  std::string lowered;
  if (cfg.lowercase) {
    lowered = unicode::to_lower(text);
    text = lowered;
  }
  TokenSequence tokens;
  if (cfg.scheme == TokenScheme::k13a) {
    const std::string line = tokenize_13a_line(text);
    std::size_t start = 0;
    while (start < line.size()) {
      std::size_t end = line.find(' ', start);
      if (end == std::string::npos) end = line.size();
      tokens.emplace_back(line, start, end - start);
      start = end + 1;
    }
  } else {
    unicode::for_each_whitespace_field(text, [&](std::string_view field) { tokens.emplace_back(field); });
  }
  return tokens;
}

std::string join_tokens(const TokenSequence& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string_view scheme_name(TokenScheme scheme) {
  return scheme == TokenScheme::k13a ? "13a" : "none";
}

TokenScheme parse_scheme(std::string_view name) {
  if (name == "13a") return TokenScheme::k13a;
  if (name == "none") return TokenScheme::kNone;
  throw ConfigError("unknown tokenizer scheme '" + std::string(name) + "' (expected 13a or none)");
}

}  // namespace paratune
