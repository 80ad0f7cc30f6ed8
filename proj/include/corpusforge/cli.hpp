#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "corpusforge/composer.hpp"
#include "corpusforge/quality_gates.hpp"
#include "corpusforge/selection.hpp"

#ifndef CORPUSFORGE_DEFAULT_PROMPTS
#define CORPUSFORGE_DEFAULT_PROMPTS "prompts"
#endif

namespace corpusforge {

// Settings shared by every subcommand. Loaded from a JSON config file; any
// command-line flag overrides the file.
struct PipelineConfig {
  std::uint64_t seed = 0;
  int workers = 1;

  std::string tts_backend;
  std::string asr_backend;
  std::string llm_backend;
  int max_in_flight = 4;
  int retries = 3;

  GvConfig gv;
  DurationFilterConfig duration_filter{0.5, 1.5};
  FinetuneSelectionConfig finetune;
  VoiceSelectionConfig voices;

  std::filesystem::path prompts_dir = CORPUSFORGE_DEFAULT_PROMPTS;
  int batch_size = 4;
  std::size_t target_utterances = 50000;
};

// Validates numeric fields against their type invariants and checks that
// referenced paths exist. Relative paths resolve against the config file.
PipelineConfig load_config(const std::filesystem::path& path);

// Stage seed: the global seed fanned out by stage name.
std::uint64_t stage_seed(std::uint64_t global_seed, std::string_view stage);

// Exit codes: 0 success, 1 domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace corpusforge
