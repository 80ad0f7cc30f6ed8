#include "corpusforge/quality_gates.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <unordered_map>

#include <omp.h>

#include "corpusforge/composer.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/rng.hpp"
#include "corpusforge/textnorm.hpp"
#include "corpusforge/wer.hpp"

namespace corpusforge {

void validate(const DurationFilterConfig& cfg) {
  if (!(cfg.lower > 0.0 && cfg.lower < cfg.upper)) {
    throw InvalidArgument("duration filter: need 0 < lower < upper");
  }
}

namespace {
constexpr std::string_view kPresetNames[] = {"loose", "medium", "strict"};
}

std::span<const std::string_view> duration_preset_names() noexcept { return kPresetNames; }

DurationFilterConfig duration_preset(std::string_view name) {
  if (name == "loose") return {0.5, 1.5};
  if (name == "medium") return {0.7, 1.5};
  if (name == "strict") return {0.8, 1.2};
  throw InvalidArgument("unknown duration preset '" + std::string(name) +
                        "' (expected loose, medium or strict)");
}

DurationDecision duration_ratio_gate(double synth_duration_s, double ref_duration_s,
                                     const DurationFilterConfig& cfg) {
  if (!(synth_duration_s > 0.0) || !(ref_duration_s > 0.0)) {
    throw InvalidArgument("duration gate: durations must be > 0");
  }
  const double ratio = synth_duration_s / ref_duration_s;
  return {ratio >= cfg.lower && ratio <= cfg.upper, ratio};
}

std::vector<std::size_t> duration_filter_serial(std::span<const DurationSample> samples,
                                                const DurationFilterConfig& cfg) {
  validate(cfg);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (duration_ratio_gate(samples[i].synth_s, samples[i].ref_s, cfg).accepted) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> duration_filter(std::span<const DurationSample> samples,
                                         const DurationFilterConfig& cfg, int workers) {
  validate(cfg);
  for (const auto& s : samples) {
    if (!(s.synth_s > 0.0) || !(s.ref_s > 0.0)) {
      throw InvalidArgument("duration gate: durations must be > 0");
    }
  }
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  std::vector<char> keep(samples.size(), 0);
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double ratio = samples[i].synth_s / samples[i].ref_s;
    keep[i] = ratio >= cfg.lower && ratio <= cfg.upper;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) out.push_back(i);
  }
  return out;
}

void validate(const GvConfig& cfg) {
  if (!(cfg.wer_threshold >= 0.0)) throw InvalidArgument("G-V: WER threshold must be >= 0");
  if (cfg.max_attempts < 1) throw InvalidArgument("G-V: max attempts must be >= 1");
  if (!(cfg.temperature > 0.0)) throw InvalidArgument("G-V: temperature must be > 0");
}

std::string synthetic_utterance_id(std::string_view text_id, std::string_view speaker_id) {
  std::string id(text_id);
  id += '@';
  id += speaker_id;
  return id;
}

GenerationRecord generate_verified(const Utterance& text, const Utterance& voice,
                                   const GvConfig& cfg, TtsBackend& tts, AsrBackend& verifier) {
  validate(cfg);
  GenerationRecord rec;
  rec.utterance_id = synthetic_utterance_id(text.id, voice.speaker_id);
  rec.text_id = text.id;
  rec.voice_speaker_id = voice.speaker_id;
  const auto reference = normalize(text.text);

  for (int attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
    const std::string request_id = rec.utterance_id + "/a" + std::to_string(attempt);
    Attempt a;
    a.attempt_index = attempt;
    try {
      TtsRequest treq;
      treq.request_id = request_id;
      treq.text = text.text;
      treq.reference_audio = AudioPayload::from_locator(voice.audio_ref);
      treq.temperature = cfg.temperature;
      treq.seed = derive_seed(cfg.seed, request_id);
      auto synth = tts.synthesize(treq);

      AsrRequest areq;
      areq.request_id = request_id;
      areq.audio = synth.audio;
      auto heard = verifier.transcribe(areq);

      a.transcript = std::move(heard.transcript);
      a.audio_ref = synth.audio.is_inline ? std::string() : synth.audio.locator;
      a.duration_s = synth.duration_s;
      a.wer = wer(reference, normalize(a.transcript)).wer;
    } catch (const Error& e) {
      rec.status = GenerationStatus::error;
      rec.chosen_attempt = 0;
      rec.error = e.what();
      return rec;
    }
    rec.attempts.push_back(std::move(a));
    if (rec.attempts.back().wer <= cfg.wer_threshold) {
      rec.status = GenerationStatus::accepted;
      rec.chosen_attempt = attempt;
      return rec;
    }
  }

  rec.status = GenerationStatus::rejected;
  const auto best = std::min_element(rec.attempts.begin(), rec.attempts.end(),
                                     [](const Attempt& x, const Attempt& y) { return x.wer < y.wer; });
  rec.chosen_attempt = best->attempt_index;
  return rec;
}

std::optional<Utterance> synthetic_utterance(const GenerationRecord& rec, const Utterance& text,
                                             const Utterance& voice) {
  const auto* chosen = rec.chosen();
  if (!chosen || !(chosen->duration_s > 0.0)) return std::nullopt;
  Utterance u;
  u.id = rec.utterance_id;
  u.speaker_id = voice.speaker_id;
  u.gender = voice.gender;
  u.split = text.split;
  u.text = text.text;
  u.audio_ref = chosen->audio_ref;
  u.duration_s = chosen->duration_s;
  u.origin = Origin::synthetic;
  return u;
}

GvResult run_gv_pipeline(const Manifest& texts, const VoiceCatalog& catalog, const PairingPlan& plan,
                         const GvConfig& cfg, TtsBackend& tts, AsrBackend& verifier,
                         const GvPipelineOptions& opts) {
  validate(cfg);
  if (opts.workers < 1) throw InvalidArgument("G-V: workers must be >= 1");
  validate(plan, texts, catalog);

  std::unordered_map<std::string_view, const Utterance*> by_id;
  for (const auto& u : texts.entries) by_id.emplace(u.id, &u);

  struct Job {
    const Utterance* text;
    const Utterance* voice;
  };
  std::vector<Job> jobs;
  jobs.reserve(plan.pairs.size());
  for (const auto& p : plan.pairs) {
    jobs.push_back({by_id.at(p.text_id), &catalog.voices.at(p.voice_speaker_id).utterance});
  }

  std::vector<GenerationRecord> records(jobs.size());
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(opts.workers)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      records[i] = generate_verified(*jobs[i].text, *jobs[i].voice, cfg, tts, verifier);
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::size_t> order(jobs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].utterance_id < records[b].utterance_id;
  });

  GvResult result;
  result.output.name = texts.name + ".synth";
  result.records.reserve(records.size());
  for (auto i : order) {
    auto& rec = records[i];
    switch (rec.status) {
      case GenerationStatus::accepted: ++result.summary.accepted; break;
      case GenerationStatus::rejected: ++result.summary.rejected; break;
      case GenerationStatus::error: ++result.summary.errored; break;
    }
    const bool emit = rec.accepted() || (opts.keep_rejected && rec.status == GenerationStatus::rejected);
    if (emit) {
      if (auto u = synthetic_utterance(rec, *jobs[i].text, *jobs[i].voice)) {
        result.output.entries.push_back(std::move(*u));
      }
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace corpusforge
