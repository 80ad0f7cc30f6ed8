#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corpusforge/manifest.hpp"

namespace corpusforge {

struct Pairing {
  std::string text_id;
  std::string voice_speaker_id;
  double planned_duration_s = 0.0;  // the source text's reference duration

  friend bool operator==(const Pairing&, const Pairing&) = default;
};

struct PairingPlan {
  std::uint64_t seed = 0;
  std::vector<Pairing> pairs;

  double planned_hours() const noexcept;
  friend bool operator==(const PairingPlan&, const PairingPlan&) = default;
};

// No duplicate (text, speaker) pair; every pair gender- and split-matched and
// resolvable in `texts` / `catalog`. Throws InvariantError.
void validate(const PairingPlan& plan, const Manifest& texts, const VoiceCatalog& catalog);

// First line is a header {"format":"corpusforge.pairing_plan/1","seed":N};
// every following line is {"text_id":..,"voice_speaker_id":..,"planned_duration_s":..}.
std::string serialize_plan(const PairingPlan& plan);
PairingPlan parse_plan(std::string_view contents, const std::string& source);
PairingPlan read_plan(const std::filesystem::path& path);
void write_plan(const PairingPlan& plan, const std::filesystem::path& path);

// Draws texts uniformly with replacement and, for each, a voice uniformly
// among catalog speakers of the same gender and split. Repeated pairs are
// redrawn. Stops once the planned reference duration reaches target_hours
// (the crossing pair is kept).
PairingPlan plan_pairings(const Manifest& texts, const VoiceCatalog& catalog, double target_hours,
                          std::uint64_t seed);

struct Recipe {
  std::string name;
  double synth_hours = 0.0;
  double real_hours = 0.0;
  std::string synth_source;
  std::string real_source;
  std::optional<Split> split;  // restrict both sources to one split
  std::uint64_t seed = 0;
};

void validate(const Recipe& r);
Recipe parse_recipe(std::string_view json_text, const std::string& source);
Recipe read_recipe(const std::filesystem::path& path);
std::string serialize_recipe(const Recipe& r);

// Hybrid mixes used for the 360 h and larger training sets:
// mix-350-10, mix-330-30, mix-300-60, mix-710-10, mix-710-60 (synthetic/real hours).
Recipe recipe_preset(std::string_view name);
std::span<const std::string_view> recipe_preset_names() noexcept;

struct ComposeResult {
  Manifest manifest;      // synthetic part first, then real, each in selection order
  double synth_hours = 0.0;
  double real_hours = 0.0;
};

// Speaker round-robin over each source independently. Smaller hour targets
// under the same seed yield prefixes, hence nested corpora.
ComposeResult compose_hybrid(const Recipe& recipe, const Manifest& synth, const Manifest& real);

// smaller's id set is a strict subset of larger's.
bool verify_nesting(const Manifest& smaller, const Manifest& larger);

}  // namespace corpusforge
