#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qanet {

/**
 * Split UTF-8 text into lowercase word tokens.
 *
 * Letters and digits (ASCII and non-ASCII) form tokens. Apostrophes and '*'
 * are kept inside tokens so contractions ("you're") and censored forms
 * ("f**k") survive; leading and trailing apostrophes/asterisks are trimmed.
 * Everything else separates tokens: ASCII punctuation and whitespace, the
 * Unicode punctuation and symbol blocks, emoji and invalid byte sequences.
 * U+2018/U+2019 are read as apostrophes. Case folding covers ASCII,
 * Latin-1, Latin Extended-A, Greek and Cyrillic.
 */
std::vector<std::string> tokenize(std::string_view text);

/// Lowercase a single word with the same case folding as `tokenize`.
std::string to_lower(std::string_view word);

} // namespace qanet
