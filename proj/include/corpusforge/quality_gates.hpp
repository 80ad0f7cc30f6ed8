#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "corpusforge/backends.hpp"
#include "corpusforge/manifest.hpp"

namespace corpusforge {

struct PairingPlan;

struct DurationFilterConfig {
  double lower = 0.5;
  double upper = 1.5;
};

void validate(const DurationFilterConfig& cfg);

// Ratio bands tuned on earlier generation runs. Names:
//   "loose" (0.5, 1.5), "medium" (0.7, 1.5), "strict" (0.8, 1.2).
// The three bands are nested: strict inside medium inside loose.
DurationFilterConfig duration_preset(std::string_view name);
std::span<const std::string_view> duration_preset_names() noexcept;

struct DurationDecision {
  bool accepted = false;
  double ratio = 0.0;
};

// accepted iff lower <= synth/ref <= upper. Non-positive durations throw.
DurationDecision duration_ratio_gate(double synth_duration_s, double ref_duration_s,
                                     const DurationFilterConfig& cfg);

struct DurationSample {
  double synth_s = 0.0;
  double ref_s = 0.0;
};

// Batch form of the gate: returns the indices of accepted samples in
// ascending order. The serial variant is the reference for the OpenMP one.
std::vector<std::size_t> duration_filter_serial(std::span<const DurationSample> samples,
                                                const DurationFilterConfig& cfg);
std::vector<std::size_t> duration_filter(std::span<const DurationSample> samples,
                                         const DurationFilterConfig& cfg, int workers = 0);

struct GvConfig {
  double wer_threshold = 0.20;
  int max_attempts = 10;
  double temperature = 0.65;
  std::uint64_t seed = 0;
};

void validate(const GvConfig& cfg);

// Id of the synthetic utterance made from `text_id` spoken by `speaker_id`.
std::string synthetic_utterance_id(std::string_view text_id, std::string_view speaker_id);

// Generator-verifier loop for one text/voice pair. Attempts run until one
// transcribes within the threshold or the attempt budget is spent; on
// exhaustion the lowest-WER attempt (earliest on ties) is kept and the record
// is rejected. Backend failures produce a status=error record; they do not
// consume attempts.
GenerationRecord generate_verified(const Utterance& text, const Utterance& voice,
                                   const GvConfig& cfg, TtsBackend& tts, AsrBackend& verifier);

struct GvSummary {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t errored = 0;

  std::size_t total() const noexcept { return accepted + rejected + errored; }
};

struct GvResult {
  Manifest output;                         // sorted by utterance id
  std::vector<GenerationRecord> records;   // sorted by utterance id
  GvSummary summary;
};

struct GvPipelineOptions {
  int workers = 1;
  bool keep_rejected = false;
};

// Runs every pairing through generate_verified under a bounded worker pool.
// Output is independent of scheduling.
GvResult run_gv_pipeline(const Manifest& texts, const VoiceCatalog& catalog, const PairingPlan& plan,
                         const GvConfig& cfg, TtsBackend& tts, AsrBackend& verifier,
                         const GvPipelineOptions& opts = {});

// Synthetic utterance for a finished record, or nullopt when the record has
// no usable attempt.
std::optional<Utterance> synthetic_utterance(const GenerationRecord& rec, const Utterance& text,
                                             const Utterance& voice);

}  // namespace corpusforge
