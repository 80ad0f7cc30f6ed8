#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace corpusforge {

// Lowercase word tokens. No token is empty or contains whitespace.
struct NormalizedText {
  std::vector<std::string> tokens;

  std::string joined() const;
  bool empty() const noexcept { return tokens.empty(); }

  friend bool operator==(const NormalizedText&, const NormalizedText&) = default;
};

// NFC, lowercase, punctuation removed. Apostrophes (' and U+2019) and hyphens
// survive only between two word characters, so "l'avocat" and "peut-être"
// stay single tokens. Typographic variants fold to ASCII ' and -. Digits are
// kept verbatim; number words and digits are not equated.
NormalizedText normalize(std::string_view raw);

// Number of Unicode code points in the space-joined normalized text.
std::size_t normalized_length(std::string_view raw);

std::size_t utf8_length(std::string_view s) noexcept;

// ASCII whitespace trim.
std::string_view trim(std::string_view s) noexcept;

}  // namespace corpusforge
