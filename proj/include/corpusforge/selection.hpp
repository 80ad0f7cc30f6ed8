#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "corpusforge/manifest.hpp"

namespace corpusforge {

struct DurationRange {
  double min_s = 0.0;
  double max_s = 0.0;

  bool contains(double d) const noexcept { return d >= min_s && d <= max_s; }
};

struct FinetuneSelectionConfig {
  double target_hours = 12.0;
  DurationRange duration{5.0, 15.0};
  double rate_trim_fraction = 0.10;
  double duration_bin_width_s = 1.0;
  std::uint64_t seed = 0;
};

void validate(const FinetuneSelectionConfig& cfg);

struct VoiceSelectionConfig {
  DurationRange duration{8.0, 12.0};
  double pct_lo = 10.0;
  double pct_hi = 90.0;
  std::uint64_t seed = 0;
};

void validate(const VoiceSelectionConfig& cfg);

struct SelectionResult {
  Manifest selected;
  bool exhausted = false;  // pool ran out before the hour target
};

// Seeded speaker round-robin over `entries`: speakers are visited in a
// seeded permutation, each speaker's utterances in their own seeded
// permutation, one utterance per speaker per pass. Returns the complete
// consumption order as indices into `entries`. Any hour-target selection is
// a prefix of this order, which is what makes smaller selections nested in
// larger ones.
std::vector<std::size_t> round_robin_order(std::span<const Utterance> entries, std::uint64_t seed);

// Greedy prefix of the round-robin order: includes the utterance that first
// brings the total to target_hours.
SelectionResult take_round_robin(std::span<const Utterance> entries, double target_hours,
                                 std::uint64_t seed);

// Duration filter, per-duration-bin text-length trimming, then speaker
// round-robin until the hour target.
SelectionResult select_finetune_subset(const Manifest& m, const FinetuneSelectionConfig& cfg);

// The utterances that survive the duration filter and bin trimming, in input order.
std::vector<Utterance> finetune_candidates(const Manifest& m, const FinetuneSelectionConfig& cfg);

// Nearest-rank percentile of an ascending-sorted sample (pct in [0, 100]).
std::size_t nearest_rank_value(std::span<const std::size_t> sorted, double pct);

// Score used to pick the "closest to acceptable" utterance when a speaker has
// no candidate. Zero for utterances that satisfy both constraints.
//   max(0, (min-d)/min, (d-max)/max) + max(0, (lo-p)/100, (p-hi)/100)
// p is the percentile rank 100 * #{x <= len} / N of the text length, and the
// second term is zero whenever len lies within the nearest-rank window.
struct TextLengthDistribution {
  std::vector<std::size_t> sorted;

  explicit TextLengthDistribution(std::vector<std::size_t> lengths);
  double percentile_rank(std::size_t len) const;
  std::size_t value_at(double pct) const { return nearest_rank_value(sorted, pct); }
};

double violation_score(double duration_s, std::size_t text_len, const TextLengthDistribution& dist,
                       const VoiceSelectionConfig& cfg);

VoiceCatalog select_reference_voices(const Manifest& m, const VoiceSelectionConfig& cfg);

}  // namespace corpusforge
