#pragma once

// Full mock-backend run of the command-line pipeline into one directory.

#include <sstream>
#include <string>
#include <vector>

#include "corpusforge/backends.hpp"
#include "corpusforge/cli.hpp"
#include "corpusforge/manifest.hpp"
#include "demo_corpus.hpp"

namespace demo_run {

struct Step {
  std::vector<std::string> args;
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Output files written by run(), relative to the run directory.
inline const std::vector<std::string> kArtifacts = {
    "finetune.jsonl", "voices.jsonl",  "plan.jsonl",  "synth.jsonl",      "records.jsonl",
    "synth_filtered.jsonl", "mix.jsonl", "gen.jsonl", "wer.json",         "summary.json",
    "gv.json"};

inline std::vector<Step> run(const std::string& dir, std::uint64_t seed) {
  using namespace corpusforge;
  demo::CorpusShape texts{"bast", 8, 3, 3, 12, 2.0, 14.0, 100};
  demo::CorpusShape voices{"charb", 12, 4, 4, 10, 2.0, 16.0, 200};
  const auto bast = demo::make_corpus(texts);
  write_manifest(bast, dir + "/bast.jsonl");
  write_manifest(demo::make_corpus(voices), dir + "/charb.jsonl");

  // Hypotheses from a noisy recognizer over the held-out splits.
  MockAsr asr({MockAsrMode::corrupt, 0.15, 0.05, 0.05, 0.5, seed});
  std::string hyps;
  for (const auto& u : bast.entries) {
    if (u.split == Split::train) continue;
    auto heard = asr.transcribe({u.id, AudioPayload::from_locator(make_mock_audio_locator(u.id, u.text))});
    hyps += u.id + " " + heard.transcript + "\n";
  }
  write_file(dir + "/hyps.txt", hyps);

  const std::string s = std::to_string(seed);
  const std::string d = dir + "/";
  std::vector<std::vector<std::string>> cmds = {
      {"--seed", s, "select-finetune", "--manifest", d + "charb.jsonl", "--out", d + "finetune.jsonl", "--hours", "0.5"},
      {"--seed", s, "pick-voices", "--manifest", d + "charb.jsonl", "--out", d + "voices.jsonl"},
      {"--seed", s, "plan-pairings", "--texts", d + "bast.jsonl", "--voices", d + "voices.jsonl", "--hours", "0.4",
       "--out", d + "plan.jsonl"},
      {"--seed", s, "--workers", "2", "synthesize", "--texts", d + "bast.jsonl", "--voices", d + "voices.jsonl",
       "--pairing", d + "plan.jsonl", "--tts", "mock:jitter=0.3,fail=0.05", "--asr", "mock:flaky,p=0.6", "--out",
       d + "synth.jsonl", "--records", d + "records.jsonl"},
      {"--seed", s, "filter-duration", "--synth", d + "synth.jsonl", "--texts", d + "bast.jsonl", "--records",
       d + "records.jsonl", "--preset", "medium", "--out", d + "synth_filtered.jsonl"},
      {"--seed", s, "compose", "--synth", d + "synth_filtered.jsonl", "--real", d + "bast.jsonl", "--synth-hours",
       "0.1", "--real-hours", "0.1", "--out", d + "mix.jsonl"},
      {"--seed", s, "gen-text", "--llm", "mock", "--target", "40", "--out", d + "gen.jsonl"},
      {"evaluate", "--manifest", d + "bast.jsonl", "--hyps", d + "hyps.txt", "--out", d + "wer.json"},
      {"summary", "--manifest", d + "mix.jsonl", "--out", d + "summary.json"},
      {"gv-report", "--records", d + "records.jsonl", "--out", d + "gv.json"},
  };
  std::vector<Step> steps;
  for (auto& c : cmds) {
    std::ostringstream out, err;
    Step st;
    st.args = c;
    st.exit_code = run_cli(c, out, err);
    st.out = out.str();
    st.err = err.str();
    steps.push_back(std::move(st));
  }
  return steps;
}

}  // namespace demo_run
