#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace paratune {

enum class TokenScheme { k13a, kNone };

struct TokenizerConfig {
  TokenScheme scheme = TokenScheme::k13a;
  bool lowercase = false;  // false: case.mixed

  bool operator==(const TokenizerConfig&) const = default;
};

// Tokens are whitespace-free UTF-8 strings.
using TokenSequence = std::vector<std::string>;

// Matches the mteval-v13a tokenization of sacreBLEU 1.4.12 byte for byte:
// lowercasing (Python str.lower semantics) is applied to the raw line first,
// then entity unescaping, punctuation splitting and Unicode-whitespace
// splitting. No Unicode normalization is performed.
TokenSequence tokenize(std::string_view text, const TokenizerConfig& cfg = {});

// The 13a rewrite without the final split: tokens separated by single spaces.
std::string tokenize_13a_line(std::string_view text);

std::string join_tokens(const TokenSequence& tokens);

std::string_view scheme_name(TokenScheme scheme);  // "13a" / "none"
TokenScheme parse_scheme(std::string_view name);   // throws ConfigError

}  // namespace paratune
