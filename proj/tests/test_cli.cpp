#include <doctest.h>

#include <sstream>

#include <stdlib.h>

#include "corpusforge/cli.hpp"
#include "corpusforge/error.hpp"
#include "demo_run.hpp"
#include "fixtures.hpp"

using namespace corpusforge;

static int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int rc = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

TEST_CASE("help lists the subcommands") {
  std::string out;
  CHECK(cli({"--help"}, &out) == 0);
  for (const char* sub : {"select-finetune", "pick-voices", "plan-pairings", "synthesize", "filter-duration", "compose",
                          "verify-nesting", "gen-text", "evaluate", "summary", "gv-report"})
    CHECK(out.find(sub) != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  fixtures::TempDir dir("cli-usage");
  write_file(dir / "m.jsonl", "");
  std::string err;
  CHECK(cli({"summary", "--manifest", dir / "m.jsonl", "--no-such-flag"}, nullptr, &err) == 2);
  CHECK(err.find("--no-such-flag") != std::string::npos);
  CHECK(cli({"--no-such-flag"}) == 2);
  CHECK(cli({}) == 2);
  CHECK(cli({"summary"}) == 2);
  CHECK(cli({"summary", "--manifest", "/nonexistent/file.jsonl"}) == 2);
}

TEST_CASE("domain errors exit 1") {
  fixtures::TempDir dir("cli-err");
  write_file(dir / "bad.jsonl", "{oops\n");
  std::string err;
  CHECK(cli({"summary", "--manifest", dir / "bad.jsonl"}, nullptr, &err) == 1);
  CHECK(err.find("bad.jsonl") != std::string::npos);
}

TEST_CASE("synthesize without a backend is an error") {
  fixtures::TempDir dir("cli-nobackend");
  write_file(dir / "m.jsonl", "");
  write_file(dir / "p.jsonl", "{\"format\":\"corpusforge.pairing_plan/1\",\"seed\":0}\n");
  write_file(dir / "v.jsonl", "");
  ::unsetenv("CORPUSFORGE_TTS_URL");
  ::unsetenv("CORPUSFORGE_ASR_URL");
  std::string err;
  CHECK(cli({"synthesize", "--texts", dir / "m.jsonl", "--voices", dir / "v.jsonl", "--pairing", dir / "p.jsonl",
             "--out", dir / "o.jsonl", "--records", dir / "r.jsonl"},
            nullptr, &err) == 1);
  CHECK(err.find("backend") != std::string::npos);
}

TEST_CASE("config file validation") {
  fixtures::TempDir dir("cli-config");
  write_file(dir / "ok.json", R"({"seed":4,"gv":{"threshold":0.1},"duration_filter":{"preset":"strict"}})");
  auto c = load_config(dir / "ok.json");
  CHECK(c.seed == 4);
  CHECK(c.gv.wer_threshold == 0.1);
  CHECK(c.duration_filter.lower == 0.8);
  write_file(dir / "typo.json", R"({"gv":{"treshold":0.1}})");
  CHECK_THROWS_AS(load_config(dir / "typo.json"), Error);
  write_file(dir / "neg.json", R"({"gv":{"max_attempts":0}})");
  CHECK_THROWS_AS(load_config(dir / "neg.json"), Error);
  write_file(dir / "prompts.json", R"({"textgen":{"prompts":"missing-dir"}})");
  CHECK_THROWS_AS(load_config(dir / "prompts.json"), Error);
}

TEST_CASE("stage seeds differ by stage") {
  CHECK(stage_seed(1, "compose") != stage_seed(1, "synthesize"));
  CHECK(stage_seed(1, "compose") == stage_seed(1, "compose"));
}

TEST_CASE("mock end-to-end demo emits every artifact") {
  fixtures::TempDir dir("cli-e2e");
  const auto steps = demo_run::run(dir.path().string(), 3);
  for (const auto& st : steps) {
    INFO(st.args[st.args.size() > 2 ? 2 : 0] << ": " << st.err);
    CHECK(st.exit_code == 0);
  }
  for (const auto& a : demo_run::kArtifacts) {
    INFO(a);
    CHECK(std::filesystem::exists(dir.path() / a));
  }
  CHECK(read_manifest(dir / "synth_filtered.jsonl").entries.size() <= read_manifest(dir / "synth.jsonl").entries.size());
  CHECK(read_manifest(dir / "gen.jsonl").entries.size() == 40);
  CHECK(cli({"verify-nesting", dir / "finetune.jsonl", dir / "charb.jsonl"}) == 0);
  CHECK(cli({"verify-nesting", dir / "charb.jsonl", dir / "charb.jsonl"}) == 1);
  // Per-subcommand seed placement is accepted as well.
  CHECK(cli({"pick-voices", "--manifest", dir / "charb.jsonl", "--out", dir / "v2.jsonl", "--seed", "3"}) == 0);
  CHECK(read_file(dir / "v2.jsonl") == read_file(dir / "voices.jsonl"));
}
