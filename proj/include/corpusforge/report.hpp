#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpusforge/manifest.hpp"

namespace corpusforge {

struct EvalPair {
  std::string utterance_id;
  std::string ref_text;
  std::string hyp_text;
};

// Pooled edit counts. wer() = edits / max(ref_words, 1).
struct WerCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t ref_words = 0;
  std::size_t utterances = 0;

  std::size_t edits() const noexcept { return substitutions + deletions + insertions; }
  double wer() const noexcept;
  WerCounts& operator+=(const WerCounts& o) noexcept;
  friend bool operator==(const WerCounts&, const WerCounts&) = default;
};

struct WerTable {
  std::map<std::pair<Split, Gender>, WerCounts> cells;
  std::map<Split, WerCounts> overall;  // pooled over the split's gender cells

  friend bool operator==(const WerTable&, const WerTable&) = default;
};

// Two-column hypothesis file: "<utterance id><whitespace><text>" per line.
std::map<std::string, std::string> parse_hypotheses(std::string_view contents, const std::string& source);
std::map<std::string, std::string> read_hypotheses(const std::filesystem::path& path);

// Pairs every hypothesis with its reference text. Unknown ids throw.
std::vector<EvalPair> make_eval_pairs(const std::map<std::string, std::string>& hyps, const Manifest& m);

// Per-pair WER runs under OpenMP; reduction is serial in pair order, so the
// result equals evaluate_serial exactly.
WerTable evaluate(std::span<const EvalPair> pairs, const Manifest& m, int workers = 0);
WerTable evaluate_serial(std::span<const EvalPair> pairs, const Manifest& m);

// %WER with one decimal, columns dev_F dev_M test_F test_M dev test.
std::string render_wer_table(const WerTable& t, std::string_view row_label);
nlohmann::ordered_json to_json(const WerTable& t);

struct SplitSummary {
  double hours = 0.0;
  std::size_t utterances = 0;
  std::size_t words = 0;
  std::size_t speakers = 0;
  double female_speaker_pct = 0.0;
  double female_duration_pct = 0.0;
  std::optional<double> utmos_mean;
};

struct CorpusSummary {
  std::string name;
  std::map<Split, SplitSummary> splits;  // always has dev, test, train
};

CorpusSummary corpus_summary(const Manifest& m);
std::string render_summary(const CorpusSummary& s);
nlohmann::ordered_json to_json(const CorpusSummary& s);

struct WerDistribution {
  std::size_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

struct GvStats {
  std::size_t total = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t errored = 0;
  double acceptance_rate = 0.0;             // accepted / total
  std::vector<std::size_t> attempts_histogram;  // [k-1] = records with k attempts
  WerDistribution accepted_wer;             // WER of the accepted attempt
  WerDistribution rejected_wer;             // WER of the best attempt
};

// Histogram covers 1..max(max_attempts, longest record). Error records count
// toward total but not toward the histogram.
GvStats gv_report(std::span<const GenerationRecord> records, int max_attempts = 10);
std::string render_gv_report(const GvStats& s);
nlohmann::ordered_json to_json(const GvStats& s);

}  // namespace corpusforge
