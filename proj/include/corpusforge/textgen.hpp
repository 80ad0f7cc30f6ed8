#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "corpusforge/backends.hpp"
#include "corpusforge/manifest.hpp"

namespace corpusforge {

struct PromptSchedule {
  std::string base_prompt;
  std::array<std::string, 5> sub_prompts;
  int batch_size = 4;          // generations (LLM calls) per schedule step
  std::size_t target_utterances = 50000;
};

void validate(const PromptSchedule& s);

// Loads the six prompt files from `dir`: the base prompt and the five
// sub-prompts, taken in file-name order (00_*.txt .. 05_*.txt).
PromptSchedule load_schedule(const std::filesystem::path& dir);

// Step 0 sends the base prompt alone; step b >= 1 sends the base prompt as
// the system message plus sub-prompt (b - 1) mod 5 as a user message.
// Sub-prompts replace each other; they never accumulate.
LlmRequest schedule_messages(std::size_t batch_index, const PromptSchedule& sched);

// Schedule step for the g-th LLM call.
inline std::size_t schedule_step(std::size_t generation, const PromptSchedule& sched) {
  return generation / static_cast<std::size_t>(sched.batch_size);
}

struct DialogueTurn {
  std::string speaker_label;
  std::string text;

  friend bool operator==(const DialogueTurn&, const DialogueTurn&) = default;
};

struct ParsedDialogue {
  std::vector<DialogueTurn> turns;
  std::vector<std::string> diagnostics;
};

// Splits "Label : «text»" lines into turns. Surrounding quotation marks
// (« », “ ”, ") and markdown emphasis around labels are removed. Unlabeled
// lines continue the previous turn. Turns that normalize to nothing are
// dropped with a diagnostic.
ParsedDialogue parse_dialogue(std::string_view raw);

struct TextgenOptions {
  std::uint64_t seed = 0;
  int speakers_per_gender = 50;
  double chars_per_second = 15.0;  // duration estimate for hour-based recipes
  std::optional<std::filesystem::path> checkpoint;
};

// Requests generations until target_utterances turns exist. Each dialogue's
// labels map to synthetic speakers, alternating gender within the dialogue
// and cycling through a per-gender pool. With a checkpoint file, each
// completed generation is appended to it and a later call resumes after the
// last complete entry.
Manifest run_textgen(const PromptSchedule& sched, LlmBackend& llm, const TextgenOptions& opts);

}  // namespace corpusforge
