#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corpusforge {

enum class Gender { F, M };
enum class Split { train, dev, test };
enum class Origin { real, synthetic, generated_text };

std::string_view to_string(Gender g) noexcept;
std::string_view to_string(Split s) noexcept;
std::string_view to_string(Origin o) noexcept;
Gender parse_gender(std::string_view s);
Split parse_split(std::string_view s);
Origin parse_origin(std::string_view s);

inline constexpr Split kAllSplits[] = {Split::train, Split::dev, Split::test};
inline constexpr Gender kAllGenders[] = {Gender::F, Gender::M};

// One transcribed audio segment.
struct Utterance {
  std::string id;
  std::string speaker_id;
  Gender gender = Gender::F;
  Split split = Split::train;
  std::string text;
  std::string audio_ref;
  double duration_s = 0.0;
  Origin origin = Origin::real;
  std::optional<double> utmos;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

// Throws InvariantError naming the field and utterance id.
void validate(const Utterance& u);

struct Manifest {
  std::string name;
  std::vector<Utterance> entries;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

// Checks every entry, id uniqueness and split-speaker disjointness.
void validate(const Manifest& m);

double total_hours(const Manifest& m) noexcept;
double total_seconds(std::span<const Utterance> entries) noexcept;

// JSONL, one utterance per line. Key order is fixed:
//   id, speaker_id, gender, split, text, audio_ref, duration_s, origin, utmos
// `utmos` is omitted when absent. UTF-8, LF, no trailing whitespace.
std::string to_jsonl_line(const Utterance& u);
Utterance utterance_from_json_text(std::string_view line, const std::string& source,
                                   std::size_t line_no);

Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const Manifest& m, const std::filesystem::path& path);
Manifest parse_manifest(std::string_view contents, std::string name);
std::string serialize_manifest(const Manifest& m);

// Speaker -> reference utterance used for cloning.
struct VoiceEntry {
  Utterance utterance;
  bool fallback = false;

  friend bool operator==(const VoiceEntry&, const VoiceEntry&) = default;
};

struct VoiceCatalog {
  std::map<std::string, VoiceEntry> voices;  // keyed by speaker_id

  friend bool operator==(const VoiceCatalog&, const VoiceCatalog&) = default;
};

// Lines: {"speaker_id":..,"fallback":..,"utterance":{...}} sorted by speaker id.
VoiceCatalog read_catalog(const std::filesystem::path& path);
void write_catalog(const VoiceCatalog& c, const std::filesystem::path& path);
std::string serialize_catalog(const VoiceCatalog& c);
VoiceCatalog parse_catalog(std::string_view contents, const std::string& source);

enum class GenerationStatus { accepted, rejected, error };
std::string_view to_string(GenerationStatus s) noexcept;

struct Attempt {
  int attempt_index = 1;
  std::string transcript;
  double wer = 0.0;
  std::string audio_ref;
  double duration_s = 0.0;

  friend bool operator==(const Attempt&, const Attempt&) = default;
};

// Trace of one generator-verifier loop.
struct GenerationRecord {
  std::string utterance_id;
  std::string text_id;
  std::string voice_speaker_id;
  std::vector<Attempt> attempts;
  GenerationStatus status = GenerationStatus::rejected;
  int chosen_attempt = 0;  // attempt_index of the kept attempt, 0 when none
  std::string error;       // transport/schema message for error records

  bool accepted() const noexcept { return status == GenerationStatus::accepted; }
  const Attempt* chosen() const noexcept;

  friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

// Checks the attempt-count bound and, for accepted records, the threshold.
void validate(const GenerationRecord& r, int max_attempts, double wer_threshold);

std::string to_jsonl_line(const GenerationRecord& r);
std::vector<GenerationRecord> read_records(const std::filesystem::path& path);
void write_records(std::span<const GenerationRecord> records, const std::filesystem::path& path);
std::string serialize_records(std::span<const GenerationRecord> records);
std::vector<GenerationRecord> parse_records(std::string_view contents, const std::string& source);

// Whole-file helpers shared by the readers.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace corpusforge
