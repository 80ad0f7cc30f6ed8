#include "corpusforge/wer.hpp"

#include <algorithm>
#include <vector>

namespace corpusforge {

WerBreakdown wer(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t m = ref.size();
  const std::size_t n = hyp.size();
  const std::size_t cols = n + 1;

  // cost[i][j]: edits aligning ref[0..i) with hyp[0..j).
  std::vector<std::size_t> cost((m + 1) * cols);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return cost[i * cols + j]; };
  for (std::size_t i = 0; i <= m; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= n; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  WerBreakdown b;
  b.ref_len = m;
  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        if (!same) ++b.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++b.deletions;
      --i;
    } else {
      ++b.insertions;
      --j;
    }
  }
  b.wer = static_cast<double>(b.edits()) / static_cast<double>(std::max<std::size_t>(m, 1));
  return b;
}

WerBreakdown wer(const NormalizedText& ref, const NormalizedText& hyp) {
  return wer(std::span<const std::string>(ref.tokens), std::span<const std::string>(hyp.tokens));
}

WerBreakdown wer_text(std::string_view ref, std::string_view hyp) {
  return wer(normalize(ref), normalize(hyp));
}

}  // namespace corpusforge
