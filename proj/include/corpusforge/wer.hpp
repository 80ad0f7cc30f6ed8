#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "corpusforge/textnorm.hpp"

namespace corpusforge {

struct WerBreakdown {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_len = 0;
  double wer = 0.0;

  std::size_t edits() const noexcept { return substitutions + deletions + insertions; }

  friend bool operator==(const WerBreakdown&, const WerBreakdown&) = default;
};

// Minimal unit-cost word alignment. When several alignments share the minimal
// cost, the backtrace prefers the diagonal (match or substitution), then a
// deletion, then an insertion.
//
// wer = (S + D + I) / max(ref_len, 1), so an empty reference against a
// non-empty hypothesis reports wer == I.
WerBreakdown wer(std::span<const std::string> ref, std::span<const std::string> hyp);
WerBreakdown wer(const NormalizedText& ref, const NormalizedText& hyp);

// Normalizes both sides first.
WerBreakdown wer_text(std::string_view ref, std::string_view hyp);

}  // namespace corpusforge
