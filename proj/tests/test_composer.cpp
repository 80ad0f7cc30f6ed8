#include <doctest.h>

#include <set>

#include "corpusforge/composer.hpp"
#include "corpusforge/error.hpp"
#include "demo_corpus.hpp"
#include "fixtures.hpp"

using namespace corpusforge;
using fixtures::utt;

static VoiceCatalog catalog_of(const Manifest& m) {
  VoiceCatalog c;
  for (const auto& u : m.entries) c.voices.try_emplace(u.speaker_id, VoiceEntry{u, false});
  return c;
}

TEST_CASE("one voice per cell at full text hours keeps every pair unique") {
  demo::CorpusShape ts{"bast", 4, 2, 2, 20, 2.0, 12.0, 1};
  auto texts = demo::make_corpus(ts);
  Manifest voices{"charb", {}};
  for (Split s : kAllSplits)
    for (Gender g : kAllGenders) {
      const std::string spk = std::string("v-") + std::string(to_string(s)) + "-" + std::string(to_string(g));
      voices.entries.push_back(utt(spk + "-u", spk, g, s, 10.0));
    }
  auto cat = catalog_of(voices);
  auto plan = plan_pairings(texts, cat, total_hours(texts), 3);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& p : plan.pairs) CHECK(seen.insert({p.text_id, p.voice_speaker_id}).second);
  CHECK_NOTHROW(validate(plan, texts, cat));
  CHECK(plan.planned_hours() >= total_hours(texts) - 1e-9);
}

TEST_CASE("single text and single speaker exhaust the pairs") {
  Manifest texts{"t", {utt("t1", "b1", Gender::F, Split::train, 5.0)}};
  Manifest voices{"v", {utt("v1", "c1", Gender::F, Split::train, 10.0)}};
  CHECK_THROWS_AS(plan_pairings(texts, catalog_of(voices), 1.0, 1), Error);
  auto ok = plan_pairings(texts, catalog_of(voices), 5.0 / 3600.0, 1);
  CHECK(ok.pairs.size() == 1);
}

TEST_CASE("missing voice cell is named") {
  Manifest texts{"t", {utt("t1", "b1", Gender::M, Split::dev, 5.0)}};
  Manifest voices{"v", {utt("v1", "c1", Gender::F, Split::dev, 10.0)}};
  try {
    plan_pairings(texts, catalog_of(voices), 0.001, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("M") != std::string::npos);
    CHECK(msg.find("dev") != std::string::npos);
  }
}

TEST_CASE("plan round trip") {
  demo::CorpusShape ts{"bast", 4, 2, 2, 10, 2.0, 12.0, 1};
  demo::CorpusShape vs{"charb", 6, 2, 2, 2, 8.0, 12.0, 2};
  auto texts = demo::make_corpus(ts);
  auto plan = plan_pairings(texts, catalog_of(demo::make_corpus(vs)), 0.2, 7);
  CHECK(parse_plan(serialize_plan(plan), "p") == plan);
  CHECK(plan.seed == 7);
  CHECK_THROWS_AS(parse_plan("{\"text_id\":\"a\"}\n", "p"), Error);
}

TEST_CASE("recipe presets") {
  CHECK(recipe_preset_names().size() == 5);
  auto r = recipe_preset("mix-330-30");
  CHECK(r.synth_hours == 330.0);
  CHECK(r.real_hours == 30.0);
  CHECK(recipe_preset("mix-710-60").synth_hours == 710.0);
  CHECK_THROWS_AS(recipe_preset("mix-1-1"), InvalidArgument);
}

TEST_CASE("recipe parsing") {
  auto r = parse_recipe(R"({"name":"x","synth_hours":1.5,"real_hours":0.5,"synth_source":"s.jsonl","real_source":"r.jsonl","split":"train","seed":3})", "r");
  CHECK(r.name == "x");
  CHECK(r.split == Split::train);
  CHECK(parse_recipe(serialize_recipe(r), "r").synth_hours == 1.5);
  CHECK_THROWS_AS(parse_recipe(R"({"name":"x","synth_hours":1,"real_hours":0,"bogus":1})", "r"), Error);
  CHECK_THROWS_AS(parse_recipe(R"({"name":"x","synth_hours":-1,"real_hours":2})", "r"), Error);
}

TEST_CASE("zero synthetic hours gives a pure real subset") {
  demo::CorpusShape rs{"real", 10, 2, 2, 20, 2.0, 12.0, 4};
  auto real = demo::make_corpus(rs);
  Recipe r;
  r.name = "pure";
  r.real_hours = 0.3;
  r.seed = 5;
  auto out = compose_hybrid(r, Manifest{}, real);
  CHECK(out.synth_hours == 0.0);
  CHECK(out.real_hours >= 0.3);
  std::set<std::string> ids;
  for (const auto& u : real.entries) ids.insert(u.id);
  for (const auto& u : out.manifest.entries) CHECK(ids.count(u.id) == 1);
}

TEST_CASE("insufficient material reports the shortfall") {
  demo::CorpusShape rs{"real", 2, 0, 0, 5, 2.0, 4.0, 4};
  auto real = demo::make_corpus(rs);
  Recipe r;
  r.name = "big";
  r.real_hours = 10.0;
  try {
    compose_hybrid(r, Manifest{}, real);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("short") != std::string::npos);
  }
}

TEST_CASE("split restriction") {
  demo::CorpusShape rs{"real", 4, 4, 4, 10, 2.0, 12.0, 4};
  auto real = demo::make_corpus(rs);
  Recipe r;
  r.name = "dev-only";
  r.real_hours = 0.05;
  r.split = Split::dev;
  for (const auto& u : compose_hybrid(r, Manifest{}, real).manifest.entries) CHECK(u.split == Split::dev);
}

TEST_CASE("nesting") {
  demo::CorpusShape rs{"real", 20, 0, 0, 40, 2.0, 12.0, 6};
  auto real = demo::make_corpus(rs);
  Recipe r;
  r.name = "n";
  r.seed = 8;
  r.real_hours = 0.5;
  auto small = compose_hybrid(r, Manifest{}, real).manifest;
  r.real_hours = 1.5;
  auto large = compose_hybrid(r, Manifest{}, real).manifest;
  CHECK(verify_nesting(small, large));
  CHECK_FALSE(verify_nesting(large, small));
  CHECK_FALSE(verify_nesting(small, small));
  Manifest a{"a", {utt("x", "s", Gender::F, Split::train, 1.0)}};
  Manifest b{"b", {utt("y", "s", Gender::F, Split::train, 1.0)}};
  CHECK_FALSE(verify_nesting(a, b));
}
