#include <doctest.h>

#include <fstream>

#include "corpusforge/backends.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/textgen.hpp"
#include "corpusforge/textnorm.hpp"
#include "fixtures.hpp"

using namespace corpusforge;

static PromptSchedule toy_schedule() {
  PromptSchedule s;
  s.base_prompt = "BASE";
  s.sub_prompts = {"S1", "S2", "S3", "S4", "S5"};
  return s;
}

TEST_CASE("schedule steps") {
  auto s = toy_schedule();
  auto b0 = schedule_messages(0, s);
  REQUIRE(b0.messages.size() == 1);
  CHECK(b0.messages[0] == ChatMessage{Role::system, "BASE"});
  auto b1 = schedule_messages(1, s);
  REQUIRE(b1.messages.size() == 2);
  CHECK(b1.messages[1] == ChatMessage{Role::user, "S1"});
  CHECK(schedule_messages(6, s).messages == b1.messages);
  CHECK(schedule_messages(5, s).messages[1].content == "S5");
  CHECK(schedule_step(0, s) == 0);
  CHECK(schedule_step(3, s) == 0);
  CHECK(schedule_step(4, s) == 1);
}

TEST_CASE("shipped prompts load in file order") {
  auto s = load_schedule(CORPUSFORGE_DEFAULT_PROMPTS);
  CHECK(s.base_prompt.rfind("Contexte :", 0) == 0);
  CHECK(s.sub_prompts[3].find(std::string(kShortAnswersMarker)) != std::string::npos);
  for (const auto& p : s.sub_prompts) CHECK(p.rfind("Instructions :", 0) == 0);
}

TEST_CASE("load_schedule wants exactly six prompt files") {
  fixtures::TempDir dir("prompts");
  for (int i = 0; i < 5; ++i) write_file(dir.path() / ("0" + std::to_string(i) + ".txt"), "x\n");
  CHECK_THROWS_AS(load_schedule(dir.path()), Error);
  write_file(dir.path() / "05.txt", "y\n");
  auto s = load_schedule(dir.path());
  CHECK(s.base_prompt == "x\n");
  CHECK(s.sub_prompts[4] == "y\n");
}

TEST_CASE("dialogue parsing") {
  auto p = parse_dialogue("Président : «Oui.»");
  REQUIRE(p.turns.size() == 1);
  CHECK(p.turns[0] == DialogueTurn{"Président", "Oui."});
  CHECK(parse_dialogue("").turns.empty());

  auto q = parse_dialogue(
      "**Président** : « Bonjour, Madame. »\n"
      "Madame Tremblay : “Bonjour.”\n"
      "\n"
      "Président : Vous avez été nommée\n"
      "en deux mille douze ?\n");
  REQUIRE(q.turns.size() == 3);
  CHECK(q.turns[0] == DialogueTurn{"Président", "Bonjour, Madame."});
  CHECK(q.turns[1] == DialogueTurn{"Madame Tremblay", "Bonjour."});
  CHECK(q.turns[2] == DialogueTurn{"Président", "Vous avez été nommée en deux mille douze ?"});
}

TEST_CASE("dialogue parsing drops empty turns and keeps colons in text") {
  auto p = parse_dialogue("Témoin : «...»\nAvocat : Il a dit : non.\n");
  REQUIRE(p.turns.size() == 1);
  CHECK(p.turns[0].text == "Il a dit : non.");
  CHECK(p.diagnostics.size() == 1);
}

TEST_CASE("generation count follows the target") {
  auto s = toy_schedule();
  s.target_utterances = 8;
  s.batch_size = 4;
  MockLlm llm({4, 1});
  auto m = run_textgen(s, llm, {});
  CHECK(m.entries.size() == 8);
  CHECK(llm.calls() == 2);
  CHECK_NOTHROW(validate(m));
  for (const auto& u : m.entries) {
    CHECK(u.origin == Origin::generated_text);
    CHECK(u.split == Split::train);
    CHECK(u.duration_s == doctest::Approx(static_cast<double>(normalized_length(u.text)) / 15.0));
  }
}

TEST_CASE("speakers alternate gender within a dialogue") {
  auto s = toy_schedule();
  s.target_utterances = 4;
  MockLlm llm({4, 2});
  auto m = run_textgen(s, llm, {});
  REQUIRE(m.entries.size() == 4);
  CHECK(m.entries[0].gender != m.entries[1].gender);
  CHECK(m.entries[0].speaker_id != m.entries[1].speaker_id);
}

TEST_CASE("short answer step yields short turns") {
  auto s = load_schedule(CORPUSFORGE_DEFAULT_PROMPTS);
  auto req = schedule_messages(4, s);
  MockLlm llm({5, 3});
  req.request_id = "x";
  auto p = parse_dialogue(llm.generate_text(req).content);
  REQUIRE(!p.turns.empty());
  for (const auto& t : p.turns) CHECK(normalize(t.text).tokens.size() <= 5);
}

namespace {

// Passes calls through until `budget` is spent, then fails like a killed process.
class DyingLlm final : public LlmBackend {
 public:
  DyingLlm(LlmBackend& inner, int budget) : inner_(inner), budget_(budget) {}
  LlmResponse generate_text(const LlmRequest& req) override {
    if (budget_-- <= 0) throw TransportError("killed");
    return inner_.generate_text(req);
  }

 private:
  LlmBackend& inner_;
  int budget_;
};

}  // namespace

TEST_CASE("checkpoint resume matches an uninterrupted run") {
  auto s = toy_schedule();
  s.target_utterances = 60;
  s.batch_size = 2;
  MockLlm full_llm({4, 7});
  TextgenOptions opts;
  opts.seed = 5;
  const auto full = run_textgen(s, full_llm, opts);

  fixtures::TempDir dir("ckpt");
  opts.checkpoint = dir.path() / "gen.ckpt";
  MockLlm first({4, 7});
  DyingLlm dying(first, 6);  // dies during batch 3
  CHECK_THROWS_AS(run_textgen(s, dying, opts), TransportError);
  {
    std::ofstream torn(*opts.checkpoint, std::ios::app | std::ios::binary);
    torn << R"({"generation":6,"content":"Présid)";
  }
  MockLlm second({4, 7});
  const auto resumed = run_textgen(s, second, opts);
  CHECK(serialize_manifest(resumed) == serialize_manifest(full));
  CHECK(second.calls() == full_llm.calls() - 6);
}

TEST_CASE("barren generations give up") {
  class Mute final : public LlmBackend {
   public:
    LlmResponse generate_text(const LlmRequest&) override { return {"..."}; }
  } mute;
  auto s = toy_schedule();
  s.target_utterances = 3;
  CHECK_THROWS_AS(run_textgen(s, mute, {}), Error);
}

TEST_CASE("template mock dialogue parses into two speakers") {
  auto llm = make_llm_backend("mock:template,turns=4");
  LlmRequest req{"a", {{Role::system, "x"}}, 1};
  const auto first = llm->generate_text(req).content;
  req.seed = 2;
  CHECK(llm->generate_text(req).content == first);
  auto p = parse_dialogue(first);
  REQUIRE(p.turns.size() == 4);
  CHECK(p.turns[0].speaker_label == "Président");
  CHECK(p.turns[1].speaker_label == "Madame Gagnon");
  CHECK(p.turns[1].text == "Oui. Le comité comptait trois membres, nommés en deux mille douze.");
}

TEST_CASE("parsing keeps all content of labeled lines") {
  MockLlm llm({8, 9});
  for (int i = 0; i < 50; ++i) {
    LlmRequest req{"g" + std::to_string(i), {{Role::system, "x"}}, static_cast<std::uint64_t>(i)};
    const auto raw = llm.generate_text(req).content;
    std::string expected, got;
    std::size_t pos = 0;
    while (pos < raw.size()) {
      auto end = raw.find('\n', pos);
      if (end == std::string::npos) end = raw.size();
      const auto line = raw.substr(pos, end - pos);
      pos = end + 1;
      const auto colon = line.find(':');
      if (colon != std::string::npos) expected += " " + line.substr(colon + 1);
    }
    for (const auto& t : parse_dialogue(raw).turns) got += " " + t.text;
    CHECK(normalize(got) == normalize(expected));
  }
}
