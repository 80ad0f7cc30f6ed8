#include <doctest.h>

#include <set>

#include "corpusforge/backends.hpp"
#include "corpusforge/composer.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/quality_gates.hpp"
#include "demo_corpus.hpp"
#include "fixtures.hpp"

using namespace corpusforge;
using fixtures::utt;

TEST_CASE("duration gate bounds are inclusive") {
  DurationFilterConfig cfg{0.8, 1.2};
  CHECK(duration_ratio_gate(10.0, 10.0, cfg).accepted);
  CHECK(duration_ratio_gate(12.0, 10.0, cfg).accepted);
  CHECK(duration_ratio_gate(8.0, 10.0, cfg).accepted);
  auto d = duration_ratio_gate(13.0, 10.0, cfg);
  CHECK_FALSE(d.accepted);
  CHECK(d.ratio == doctest::Approx(1.3));
  CHECK_THROWS_AS(duration_ratio_gate(0.0, 10.0, cfg), InvalidArgument);
  CHECK_THROWS_AS(duration_ratio_gate(1.0, -1.0, cfg), InvalidArgument);
}

TEST_CASE("duration presets") {
  CHECK(duration_preset("loose").lower == 0.5);
  CHECK(duration_preset("loose").upper == 1.5);
  CHECK(duration_preset("medium").lower == 0.7);
  CHECK(duration_preset("medium").upper == 1.5);
  CHECK(duration_preset("strict").lower == 0.8);
  CHECK(duration_preset("strict").upper == 1.2);
  CHECK(duration_preset_names().size() == 3);
  CHECK_THROWS_AS(duration_preset("tight"), InvalidArgument);
  CHECK_THROWS_AS(validate(DurationFilterConfig{1.5, 0.5}), InvalidArgument);
}

TEST_CASE("parallel duration filter equals the serial one") {
  Rng r(8);
  std::vector<DurationSample> s(5000);
  for (auto& x : s) x = {0.1 + 20.0 * r.uniform(), 0.1 + 20.0 * r.uniform()};
  const DurationFilterConfig cfg{0.7, 1.5};
  const auto serial = duration_filter_serial(s, cfg);
  for (int w : {1, 2, 4}) CHECK(duration_filter(s, cfg, w) == serial);
}

TEST_CASE("gv config defaults and validation") {
  GvConfig cfg;
  CHECK(cfg.wer_threshold == 0.20);
  CHECK(cfg.max_attempts == 10);
  CHECK(cfg.temperature == 0.65);
  cfg.max_attempts = 0;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
  cfg = {};
  cfg.wer_threshold = -0.1;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
}

TEST_CASE("echo verifier accepts on the first attempt") {
  MockTts tts;
  MockAsr asr;
  auto text = utt("t1", "bast-1", Gender::F, Split::train, 4.0, "Président : bonjour madame.");
  auto voice = utt("v1", "charb-1", Gender::F, Split::train, 10.0);
  auto rec = generate_verified(text, voice, {}, tts, asr);
  CHECK(rec.status == GenerationStatus::accepted);
  REQUIRE(rec.attempts.size() == 1);
  CHECK(rec.chosen_attempt == 1);
  CHECK(rec.attempts[0].wer == 0.0);
  CHECK(rec.utterance_id == synthetic_utterance_id("t1", "charb-1"));
  auto u = synthetic_utterance(rec, text, voice);
  REQUIRE(u);
  CHECK(u->origin == Origin::synthetic);
  CHECK(u->speaker_id == "charb-1");
  CHECK(u->gender == Gender::F);
  CHECK(u->text == text.text);
}

TEST_CASE("always failing verifier stops at the attempt cap") {
  MockTts tts;
  MockAsr asr({MockAsrMode::silence});
  auto text = utt("t1", "b", Gender::M, Split::dev, 4.0, "un deux trois");
  auto voice = utt("v1", "c", Gender::M, Split::dev, 10.0);
  GvConfig cfg;
  for (int cap : {1, 3, 10}) {
    cfg.max_attempts = cap;
    auto rec = generate_verified(text, voice, cfg, tts, asr);
    CHECK(rec.status == GenerationStatus::rejected);
    CHECK(rec.attempts.size() == static_cast<std::size_t>(cap));
    CHECK(rec.chosen_attempt == 1);  // all tie at WER 1, earliest kept
  }
}

TEST_CASE("backend failure yields an error record") {
  MockTts tts;
  MockAsr asr({MockAsrMode::fail});
  auto rec = generate_verified(utt("t", "b", Gender::F, Split::train, 2.0, "oui"),
                               utt("v", "c", Gender::F, Split::train, 9.0), {}, tts, asr);
  CHECK(rec.status == GenerationStatus::error);
  CHECK(rec.attempts.empty());
  CHECK_FALSE(rec.error.empty());
  CHECK(rec.chosen() == nullptr);
}

namespace {

struct Fixture {
  Manifest texts;
  VoiceCatalog catalog;
  PairingPlan plan;
};

Fixture small_fixture(double hours = 0.3) {
  Fixture f;
  demo::CorpusShape ts{"bast", 6, 2, 2, 15, 2.0, 12.0, 3};
  f.texts = demo::make_corpus(ts);
  demo::CorpusShape vs{"charb", 8, 2, 2, 3, 8.0, 12.0, 4};
  auto voices = demo::make_corpus(vs);
  for (const auto& u : voices.entries) f.catalog.voices.try_emplace(u.speaker_id, VoiceEntry{u, false});
  f.plan = plan_pairings(f.texts, f.catalog, hours, 17);
  return f;
}

}  // namespace

TEST_CASE("empty plan gives empty outputs") {
  auto f = small_fixture();
  f.plan.pairs.clear();
  MockTts tts;
  MockAsr asr;
  auto r = run_gv_pipeline(f.texts, f.catalog, f.plan, {}, tts, asr);
  CHECK(r.output.entries.empty());
  CHECK(r.records.empty());
}

TEST_CASE("all-accepting backends keep every pairing") {
  auto f = small_fixture();
  MockTts tts;
  MockAsr asr;
  auto r = run_gv_pipeline(f.texts, f.catalog, f.plan, {}, tts, asr);
  CHECK(r.output.entries.size() == f.plan.pairs.size());
  for (const auto& rec : r.records) {
    CHECK(rec.accepted());
    CHECK(rec.attempts.size() == 1);
  }
  CHECK_NOTHROW(validate(r.output));
}

TEST_CASE("hard-failing texts are accounted for") {
  auto f = small_fixture(0.6);
  MockTts tts({15.0, 0.0, 0.10, 5});
  MockAsr asr({MockAsrMode::flaky, 0, 0, 0, 0.5, 6});
  GvConfig cfg;
  cfg.wer_threshold = 0.0;
  cfg.max_attempts = 2;
  auto r = run_gv_pipeline(f.texts, f.catalog, f.plan, cfg, tts, asr);
  CHECK(r.summary.total() == f.plan.pairs.size());
  CHECK(r.records.size() == f.plan.pairs.size());
  CHECK(r.summary.errored > 0);
  CHECK(r.summary.rejected > 0);
  CHECK(r.summary.accepted + r.summary.rejected + r.summary.errored == f.plan.pairs.size());
  CHECK(r.output.entries.size() == r.summary.accepted);
  std::set<std::string> ids;
  for (const auto& rec : r.records) {
    ids.insert(rec.utterance_id);
    if (rec.status != GenerationStatus::error) validate(rec, cfg.max_attempts, cfg.wer_threshold);
  }
  CHECK(ids.size() == r.records.size());

  GvPipelineOptions keep;
  keep.keep_rejected = true;
  auto k = run_gv_pipeline(f.texts, f.catalog, f.plan, cfg, tts, asr, keep);
  CHECK(k.output.entries.size() == k.summary.accepted + k.summary.rejected);
}

TEST_CASE("pipeline output does not depend on worker count") {
  auto f = small_fixture(0.5);
  MockTts tts({15.0, 0.2, 0.05, 1});
  MockAsr asr({MockAsrMode::corrupt, 0.1, 0.05, 0.05, 0.5, 2});
  GvConfig cfg;
  cfg.seed = 99;
  auto one = run_gv_pipeline(f.texts, f.catalog, f.plan, cfg, tts, asr, {1, false});
  auto four = run_gv_pipeline(f.texts, f.catalog, f.plan, cfg, tts, asr, {4, false});
  CHECK(serialize_manifest(one.output) == serialize_manifest(four.output));
  CHECK(serialize_records(one.records) == serialize_records(four.records));
}

TEST_CASE("pipeline rejects a plan that does not resolve") {
  auto f = small_fixture();
  f.plan.pairs.push_back({"missing", f.catalog.voices.begin()->first, 1.0});
  MockTts tts;
  MockAsr asr;
  CHECK_THROWS_AS(run_gv_pipeline(f.texts, f.catalog, f.plan, {}, tts, asr), InvariantError);
}
